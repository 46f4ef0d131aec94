use rug::ops::Pow;
use rug::{Float, Integer};

use super::{bernoulli_numbers, EMConfig, OracleValue, ORACLE_GUARD_BITS};
use crate::error::{Error, Result};
use crate::mpcore::Precision;

/// Largest index accepted; beyond it the cancellation at default precision is untested.
pub const MAX_ELL: u32 = 20;

/// γ_ℓ(a) with the default [`EMConfig`].
pub fn stieltjes_ref(ell: u32, a: &Float, prec: &Precision) -> Result<Float> {
    stieltjes_ref_with(ell, a, &EMConfig::default(), prec).map(|v| v.value)
}

/// γ_ℓ(a) from the limit formula
/// `γ_ℓ(a) = lim_N [Σ_{n=0}^{N-1} f(n+a) - ln^{ℓ+1}(N+a)/(ℓ+1)]`, `f(x) = ln^ℓ(x)/x`,
/// with the limit taken by Euler–Maclaurin:
/// `… + f(N+a)/2 - Σ_{p=1}^{M} B_{2p}/(2p)! f^{(2p-1)}(N+a)`.
///
/// Derivatives come from `f^{(q)}(x) = x^{-q-1} P_q(ln x)` with integer
/// polynomials `P_0 = L^ℓ`, `P_{q+1} = P_q' - (q+1) P_q`.
pub fn stieltjes_ref_with(ell: u32, a: &Float, cfg: &EMConfig, prec: &Precision) -> Result<OracleValue> {
    if *a <= 0 || !a.is_finite() {
        return Err(Error::domain(format!("Stieltjes constants need a > 0, got {a}")));
    }
    if ell > MAX_ELL {
        return Err(Error::domain(format!("ell = {ell} exceeds the oracle cap {MAX_ELL}")));
    }
    let wp = prec.bits() + ORACLE_GUARD_BITS;
    let big_n = cfg.shift();
    let m = cfg.bernoulli_terms() as usize;

    let f = |x: &Float| -> Float {
        let ln = Float::with_val(wp, x.ln_ref());
        Float::with_val(wp, ln.pow(ell)) / x
    };

    let mut total = Float::new(wp);
    for n in 0..big_n {
        total += f(&Float::with_val(wp, a + n));
    }
    let x = Float::with_val(wp, a + big_n);
    let ln_x = Float::with_val(wp, x.ln_ref());
    total -= Float::with_val(wp, (&ln_x).pow(ell + 1)) / (ell + 1);
    total += f(&x) >> 1u32;

    let bern = bernoulli_numbers(2 * m + 2);
    let powers_of_ln: Vec<Float> = (0..=ell)
        .map(|i| Float::with_val(wp, (&ln_x).pow(i)))
        .collect();
    let inv_x = Float::with_val(wp, x.recip_ref());

    // poly[i] = coefficient of L^i in P_q
    let mut poly: Vec<Integer> = vec![Integer::new(); ell as usize + 1];
    poly[ell as usize] = Integer::from(1);
    let mut x_pow = inv_x.clone(); // x^{-q-1}
    let mut factorial = Integer::from(1); // (2p)!
    let mut remainder = Float::new(wp);
    for q in 0..=(2 * m + 1) {
        if q % 2 == 1 {
            let p = q.div_ceil(2);
            factorial *= (2 * p - 1) as u32;
            factorial *= (2 * p) as u32;
            let mut deriv = Float::new(wp);
            for (c, lp) in poly.iter().zip(&powers_of_ln) {
                if *c != 0 {
                    deriv += Float::with_val(wp, lp * c);
                }
            }
            deriv *= &x_pow;
            let term = Float::with_val(wp, &deriv * &bern[2 * p]) / &factorial;
            if p == m + 1 {
                remainder = term.abs();
                break;
            }
            total -= term;
        }
        poly = next_derivative(&poly, q as u32);
        x_pow *= &inv_x;
    }

    Ok(OracleValue {
        value: Float::with_val(prec.bits(), total),
        remainder: Float::with_val(prec.bits(), remainder),
    })
}

/// `P_{q+1} = P_q' - (q+1) P_q`
fn next_derivative(poly: &[Integer], q: u32) -> Vec<Integer> {
    let mut next: Vec<Integer> = poly.iter().map(|c| Integer::from(c * -(q as i64 + 1))).collect();
    for i in 1..poly.len() {
        next[i - 1] += Integer::from(&poly[i] * i as u32);
    }
    next
}
