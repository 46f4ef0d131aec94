//! Stieltjes constants `γ_ℓ(a)`, the coefficients of
//! `ζ(s, a) = 1/(s-1) + Σ_n (-1)^n γ_n(a) (s-1)^n / n!`.
//!
//! Three routes are available:
//!
//! * [`stieltjes_dyadic`]: the alternating double series over dyadic blocks,
//!   `γ_ℓ(a) = -ln^{ℓ+1}a/(ℓ+1) + ln^ℓ a/a + Σ_{n≥1} Σ_{j≥1} (-1)^j ln^ℓ(a + j/2^n)/(j + a 2^n)`;
//! * [`stieltjes_base_k`]: its generalisation to blocks of base `k ≥ 2`, whose
//!   outer sum decays like `k^-n`;
//! * [`gamma0_telescope`] / [`euler_gamma_telescope`]: digamma telescoping
//!   series for `ℓ = 0`.

mod base_k;
mod dyadic;
mod taylor;
mod telescope;

pub use base_k::{stieltjes_base_k, stieltjes_base_k_cross_form};
pub use dyadic::stieltjes_dyadic;
pub use telescope::{euler_gamma_telescope, euler_gamma_telescope_halves, gamma0_telescope};

use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::mpcore::{EvalConfig, OuterStep, SumReport, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Dyadic,
    BaseK,
    PsiTelescope,
}

/// A request for `γ_ℓ(a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StieltjesQuery {
    ell: u32,
    a: Float,
    method: Method,
    k: u32,
}

impl StieltjesQuery {
    pub fn new(ell: u32, a: Float, method: Method, k: u32) -> Result<Self> {
        check_a(&a)?;
        if k < 2 {
            return Err(Error::domain(format!("base k must be at least 2, got {k}")));
        }
        if method == Method::PsiTelescope && ell != 0 {
            return Err(Error::domain(format!(
                "the digamma telescope only yields ell = 0, got ell = {ell}"
            )));
        }
        Ok(StieltjesQuery { ell, a, method, k })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn a(&self) -> &Float {
        &self.a
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn k(&self) -> u32 {
        self.k
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StieltjesValue {
    pub query: StieltjesQuery,
    pub report: SumReport,
}

/// Running value of a series after each outer block.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialValue {
    pub index: u64,
    pub value: Float,
    pub inner_terms: u64,
}

/// Evaluates a query with the method it names.
pub fn evaluate(query: &StieltjesQuery, tol: &Tolerance, cfg: &EvalConfig) -> Result<StieltjesValue> {
    match query.method {
        Method::Dyadic => stieltjes_dyadic(query.ell, &query.a, tol, cfg),
        Method::BaseK => stieltjes_base_k(query.ell, &query.a, query.k, tol, cfg),
        Method::PsiTelescope => {
            let report = gamma0_telescope(&query.a, tol, cfg)?;
            Ok(StieltjesValue {
                query: query.clone(),
                report,
            })
        }
    }
}

/// Like [`evaluate`], also returning the running value after each outer block.
pub fn evaluate_traced(
    query: &StieltjesQuery,
    tol: &Tolerance,
    cfg: &EvalConfig,
) -> Result<(StieltjesValue, Vec<PartialValue>)> {
    match query.method {
        Method::Dyadic => dyadic::traced(query, tol, cfg),
        Method::BaseK => base_k::traced(query, tol, cfg),
        Method::PsiTelescope => telescope::traced(query, tol, cfg),
    }
}

pub(crate) fn check_a(a: &Float) -> Result<()> {
    if !a.is_finite() || *a <= 0 {
        return Err(Error::domain(format!("a must be positive, got {}", a.to_f64())));
    }
    Ok(())
}

/// `(ln x)^ell`, with `ln^0 x = 1`.
pub(crate) fn ln_pow(x: &Float, ell: u32) -> Float {
    let bits = x.prec();
    if ell == 0 {
        return Float::with_val(bits, 1);
    }
    let ln = Float::with_val(bits, x.ln_ref());
    if ell == 1 {
        ln
    } else {
        Float::with_val(bits, ln.pow(ell))
    }
}

/// `-ln^{ℓ+1}(a)/(ℓ+1) + weight · ln^ℓ(a)/a`
pub(crate) fn closed_part(ell: u32, a: &Float, weight: f64) -> Float {
    let bits = a.prec();
    let mut out = Float::with_val(bits, ln_pow(a, ell + 1) / (ell + 1));
    out = -out;
    out += Float::with_val(bits, ln_pow(a, ell) / a) * weight;
    out
}

pub(crate) fn to_partials(closed: &Float, sign: i32, steps: &[OuterStep]) -> Vec<PartialValue> {
    steps
        .iter()
        .map(|s| {
            let mut value = Float::with_val(closed.prec(), &s.partial * sign);
            value += closed;
            PartialValue {
                index: s.index,
                value,
                inner_terms: s.inner_terms,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn query_validation() {
        let one = Float::with_val(256, 1);
        assert!(StieltjesQuery::new(0, one.clone(), Method::Dyadic, 2).is_ok());
        assert!(StieltjesQuery::new(0, Float::with_val(256, -1), Method::Dyadic, 2).is_err());
        assert!(StieltjesQuery::new(0, Float::with_val(256, 0), Method::BaseK, 2).is_err());
        assert!(StieltjesQuery::new(0, one.clone(), Method::BaseK, 1).is_err());
        assert!(StieltjesQuery::new(1, one.clone(), Method::PsiTelescope, 2).is_err());
        assert!(StieltjesQuery::new(0, one, Method::PsiTelescope, 2).is_ok());
    }

    #[test]
    fn ln_pow_handles_negative_logs() {
        let half = Float::with_val(256, 0.5);
        let ln2 = Float::with_val(256, rug::float::Constant::Log2);
        assert_eq!(ln_pow(&half, 0), 1);
        let cube = ln_pow(&half, 3);
        let expected = -Float::with_val(256, ln2.pow(3u32));
        assert!(Float::with_val(256, &cube - &expected).abs() < 1e-70);
    }
}
