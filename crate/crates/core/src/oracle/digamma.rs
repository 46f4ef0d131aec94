use rug::Float;

use super::{bernoulli_numbers, ORACLE_GUARD_BITS};
use crate::error::{Error, Result};
use crate::mpcore::Precision;

/// ψ(x) for real `x > 0`, absolute error below `2^-(bits-16)`.
///
/// Shifts `x` upward with `ψ(x) = ψ(x+1) - 1/x` until `x ≥ max(10, bits/4)`,
/// then sums `ln x - 1/(2x) - Σ B_{2m}/(2m x^{2m})` until the terms drop below
/// the working precision.
pub fn digamma_ref(x: &Float, prec: &Precision) -> Result<Float> {
    if !x.is_finite() || *x <= 0 {
        return Err(Error::domain(format!("digamma needs x > 0, got {x}")));
    }
    let wp = prec.bits() + ORACLE_GUARD_BITS;
    let threshold = f64::from(prec.bits() / 4).max(10.0);

    let mut y = Float::with_val(wp, x);
    let mut shift_sum = Float::new(wp);
    while y < threshold {
        shift_sum += Float::with_val(wp, y.recip_ref());
        y += 1u32;
    }

    let mut result = Float::with_val(wp, y.ln_ref());
    result -= Float::with_val(wp, y.recip_ref()) >> 1u32;

    let inv_y2 = Float::with_val(wp, y.square_ref()).recip();
    let mut power = inv_y2.clone();
    let eps = Float::with_val(wp, Float::i_exp(1, -(wp as i32)));
    let mut table = bernoulli_numbers(64);
    let mut m = 1usize;
    let mut prev_mag: Option<Float> = None;
    loop {
        if 2 * m >= table.len() {
            table = bernoulli_numbers(4 * m);
        }
        let term = Float::with_val(wp, &power * &table[2 * m]) / (2 * m) as u32;
        let mag = Float::with_val(wp, term.abs_ref());
        if let Some(prev) = &prev_mag {
            if mag > *prev {
                return Err(Error::non_convergence("digamma asymptotic series", m as u64));
            }
        }
        result -= &term;
        if mag < eps {
            break;
        }
        prev_mag = Some(mag);
        power *= &inv_y2;
        m += 1;
    }

    result -= shift_sum;
    Ok(Float::with_val(prec.bits(), result))
}
