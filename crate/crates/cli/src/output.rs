//! Decimal rendering of multiprecision values.

use rug::float::Round;
use rug::Float;

/// Positional decimal with `digits` significant digits, rounded to nearest.
pub fn decimal(x: &Float, digits: u32) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let (negative, mantissa, exp) = x.to_sign_string_exp_round(10, Some(digits as usize), Round::Nearest);
    let exp = exp.unwrap_or(0);
    let len = mantissa.len() as i32;
    let body = if exp <= 0 {
        format!("0.{}{}", "0".repeat((-exp) as usize), mantissa)
    } else if exp >= len {
        format!("{}{}", mantissa, "0".repeat((exp - len) as usize))
    } else {
        let (int, frac) = mantissa.split_at(exp as usize);
        format!("{int}.{frac}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Scientific notation with three significant digits, rounded away from zero
/// so the printed bound never understates the true one.
pub fn bound(x: &Float) -> String {
    if x.is_zero() {
        return "0e0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let (negative, mantissa, exp) = x.to_sign_string_exp_round(10, Some(3), Round::Up);
    let exp = exp.unwrap_or(0) - 1;
    let sign = if negative { "-" } else { "" };
    format!("{sign}{}.{}e{exp}", &mantissa[..1], &mantissa[1..])
}

/// Scientific notation with three significant digits, rounded to nearest.
pub fn scientific(x: &Float) -> String {
    if x.is_zero() || !x.is_finite() {
        return bound(x);
    }
    let (negative, mantissa, exp) = x.to_sign_string_exp_round(10, Some(3), Round::Nearest);
    let exp = exp.unwrap_or(0) - 1;
    let sign = if negative { "-" } else { "" };
    format!("{sign}{}.{}e{exp}", &mantissa[..1], &mantissa[1..])
}
