use rug::ops::Pow;
use rug::Float;

use super::{bernoulli_numbers, EMConfig, OracleValue, ORACLE_GUARD_BITS};
use crate::error::{Error, Result};
use crate::mpcore::Precision;

/// ζ(s, a) by Euler–Maclaurin summation.
///
/// `Σ_{n<N} (n+a)^{-s} + (N+a)^{1-s}/(s-1) + (N+a)^{-s}/2
///   + Σ_{k=1}^{M} B_{2k}/(2k)! · s(s+1)…(s+2k-2) · (N+a)^{-s-2k+1}`
/// which also continues ζ to `s > 1 - 2M`. The remainder is the magnitude of the
/// `k = M+1` correction.
pub fn hurwitz_zeta_ref(s: &Float, a: &Float, cfg: &EMConfig, prec: &Precision) -> Result<OracleValue> {
    if *a <= 0 || !a.is_finite() {
        return Err(Error::domain(format!("Hurwitz zeta needs a > 0, got {a}")));
    }
    if !s.is_finite() {
        return Err(Error::domain(format!("s must be finite, got {s}")));
    }
    if *s == 1 {
        return Err(Error::PolePassed);
    }
    let wp = prec.bits() + ORACLE_GUARD_BITS;
    let s = Float::with_val(wp, s);
    let neg_s = Float::with_val(wp, -&s);
    let big_n = cfg.shift();
    let m = cfg.bernoulli_terms() as usize;

    let mut total = Float::new(wp);
    for n in 0..big_n {
        let base = Float::with_val(wp, a + n);
        total += base.pow(&neg_s);
    }

    let x = Float::with_val(wp, a + big_n);
    let x_neg_s = Float::with_val(wp, (&x).pow(&neg_s));
    let s_minus_1 = Float::with_val(wp, &s - 1u32);
    total += Float::with_val(wp, &x_neg_s * &x) / &s_minus_1;
    total += Float::with_val(wp, &x_neg_s >> 1u32);

    let bern = bernoulli_numbers(2 * m + 2);
    let inv_x2 = Float::with_val(wp, x.square_ref()).recip();
    // factor_k = s(s+1)…(s+2k-2) / (2k)! · x^{-s-2k+1}
    let mut factor = Float::with_val(wp, &x_neg_s / &x) * &s / 2u32;
    let mut remainder = Float::new(wp);
    for k in 1..=m + 1 {
        let term = Float::with_val(wp, &factor * &bern[2 * k]);
        if k == m + 1 {
            remainder = term.abs();
            break;
        }
        total += term;
        // advance to k+1: multiply by (s+2k-1)(s+2k) / ((2k+1)(2k+2)) / x^2
        let c1 = Float::with_val(wp, &s + (2 * k - 1) as u32);
        let c2 = Float::with_val(wp, &s + (2 * k) as u32);
        factor *= c1 * c2;
        factor /= ((2 * k + 1) * (2 * k + 2)) as u32;
        factor *= &inv_x2;
    }

    Ok(OracleValue {
        value: Float::with_val(prec.bits(), total),
        remainder: Float::with_val(prec.bits(), remainder),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    fn zeta(s: f64, a: f64) -> OracleValue {
        let p = Precision::default();
        hurwitz_zeta_ref(&p.float(s), &p.float(a), &EMConfig::default(), &p).unwrap()
    }

    #[test]
    fn basel() {
        let pi = Float::with_val(256, Constant::Pi);
        let exact = Float::with_val(256, pi.square_ref()) / 6u32;
        let z = zeta(2.0, 1.0);
        assert!(Float::with_val(256, &z.value - &exact).abs() < 1e-70);
        assert!(z.remainder < 1e-70);
    }

    #[test]
    fn basel_against_crude_direct_sum() {
        // Σ_{n=1}^{10^5} n^-2 plus the integral tail 1/(N+1/2) bracket.
        let mut s = 0.0f64;
        let n_max = 100_000u32;
        for n in (1..=n_max).rev() {
            s += 1.0 / (f64::from(n) * f64::from(n));
        }
        let tail = 1.0 / (f64::from(n_max) + 0.5);
        let z = zeta(2.0, 1.0).value.to_f64();
        assert!((s + tail - z).abs() < 1e-13);
    }

    #[test]
    fn value_at_zero_is_half_minus_a() {
        let z = zeta(0.0, 0.25);
        assert_eq!(z.value, 0.25);
        assert!(z.remainder.is_zero());
    }

    #[test]
    fn shift_in_a() {
        let d = Float::with_val(256, zeta(2.0, 1.0).value - zeta(2.0, 2.0).value) - 1u32;
        assert!(d.abs() < 1e-70);
    }

    #[test]
    fn pole_and_domain() {
        let p = Precision::default();
        let cfg = EMConfig::default();
        assert_eq!(
            hurwitz_zeta_ref(&p.float(1), &p.float(1), &cfg, &p).unwrap_err(),
            Error::PolePassed
        );
        assert!(hurwitz_zeta_ref(&p.float(2), &p.float(0), &cfg, &p).is_err());
    }

    #[test]
    fn doubling_the_shift_stays_within_remainder() {
        let p = Precision::default();
        for (s, a) in [(1.25, 0.25), (2.0, 0.5), (5.0, 2.0)] {
            let base = hurwitz_zeta_ref(&p.float(s), &p.float(a), &EMConfig::new(50, 20).unwrap(), &p)
                .unwrap();
            let doubled =
                hurwitz_zeta_ref(&p.float(s), &p.float(a), &EMConfig::new(100, 20).unwrap(), &p)
                    .unwrap();
            let moved = Float::with_val(256, &base.value - &doubled.value).abs();
            assert!(moved <= base.remainder, "s={s} a={a}: {moved} > {}", base.remainder);
        }
    }
}
