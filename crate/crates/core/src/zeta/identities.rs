use std::fmt;

use rug::ops::Pow;
use rug::Float;

use super::{hurwitz_zeta_series, ZetaArgs};
use crate::error::{Error, Result};
use crate::mpcore::{sum_alternating, EvalConfig, SumReport, Tolerance};

/// Smallest exponent `e` of the difference step `h = 2^-e`.
const MIN_STEP_EXPONENT: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `ζ(s, 1/2) = (2^s - 1) ζ(s)`
    HalfShift,
    /// `∂_a ζ(s, a) = -s ζ(s+1, a)`, by central differences
    Derivative,
    /// `Σ_{j≥1} (-1)^j/(j+1)^s = (1 - 2^{1-s}) ζ(s) - 1`
    Eta,
    /// `ζ(s, a) - ζ(s, a+1) = a^{-s}`
    Recurrence,
}

impl Identity {
    pub fn name(self) -> &'static str {
        match self {
            Identity::HalfShift => "half-shift",
            Identity::Derivative => "a-derivative",
            Identity::Eta => "alternating-zeta",
            Identity::Recurrence => "recurrence",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `|lhs - rhs|` for one identity at one point. `bound` is the combined
/// error bound of the evaluations that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    pub identity: Identity,
    pub s: Float,
    pub a: Option<Float>,
    pub residual: Float,
    pub bound: Float,
    pub threshold: Float,
}

impl Residual {
    pub fn passes(&self) -> bool {
        self.residual <= self.threshold
    }
}

pub fn default_s_grid() -> Vec<f64> {
    vec![1.25, 1.5, 2.0, 3.0, 5.0]
}

pub fn default_a_grid() -> Vec<f64> {
    vec![0.25, 0.5, 1.0, 2.0]
}

/// Residuals of every identity over the grid, each with threshold `tol`.
///
/// Half-shift and alternating-zeta run once per `s`; derivative and
/// recurrence once per `(s, a)`. Component values are computed at tolerances
/// tight enough that their bounds stay below `tol/2`.
pub fn identity_residuals(
    s_grid: &[Float],
    a_grid: &[Float],
    tol: &Tolerance,
    cfg: &EvalConfig,
) -> Result<Vec<Residual>> {
    let mut out = Vec::new();
    for s in s_grid {
        let s = cfg.prec.float(s);
        out.push(half_shift(&s, tol, cfg)?);
        out.push(eta(&s, tol, cfg)?);
        for a in a_grid {
            let a = cfg.prec.float(a);
            out.push(derivative(&s, &a, tol, cfg)?);
            out.push(recurrence(&s, &a, tol, cfg)?);
        }
    }
    Ok(out)
}

/// [`identity_residuals`], failing on the first residual above `tol`.
pub fn identity_suite(
    s_grid: &[Float],
    a_grid: &[Float],
    tol: &Tolerance,
    cfg: &EvalConfig,
) -> Result<Vec<Residual>> {
    let residuals = identity_residuals(s_grid, a_grid, tol, cfg)?;
    if let Some(bad) = residuals.iter().find(|r| !r.passes()) {
        return Err(Error::IdentityViolation {
            name: bad.identity.name().to_string(),
            s: bad.s.to_string_radix(10, Some(17)),
            a: bad
                .a
                .as_ref()
                .map_or_else(|| "-".to_string(), |a| a.to_string_radix(10, Some(17))),
            residual: format!("{:.3e}", bad.residual.to_f64()),
            threshold: format!("{:.3e}", bad.threshold.to_f64()),
        });
    }
    Ok(residuals)
}

fn zeta(s: &Float, a: &Float, tol: &Tolerance, cfg: &EvalConfig) -> Result<SumReport> {
    hurwitz_zeta_series(&ZetaArgs::new(s.clone(), a.clone())?, tol, cfg)
}

fn residual(
    identity: Identity,
    s: &Float,
    a: Option<&Float>,
    diff: Float,
    bound: Float,
    tol: &Tolerance,
) -> Residual {
    Residual {
        identity,
        s: s.clone(),
        a: a.cloned(),
        residual: diff.abs(),
        bound,
        threshold: tol.abs_tol().clone(),
    }
}

fn half_shift(s: &Float, tol: &Tolerance, cfg: &EvalConfig) -> Result<Residual> {
    let bits = cfg.prec.bits();
    let mut factor = Float::with_val(bits, s.exp2_ref());
    factor -= 1u32;
    let component = tol.divided_by(&Float::with_val(bits, &factor * 4u32));
    let half = zeta(s, &cfg.prec.float(0.5), &component, cfg)?;
    let one = zeta(s, &cfg.prec.float(1), &component, cfg)?;
    let diff = Float::with_val(bits, &half.value - Float::with_val(bits, &factor * &one.value));
    let bound = Float::with_val(bits, &half.error_bound + Float::with_val(bits, &factor * &one.error_bound));
    Ok(residual(Identity::HalfShift, s, None, diff, bound, tol))
}

fn eta(s: &Float, tol: &Tolerance, cfg: &EvalConfig) -> Result<Residual> {
    let bits = cfg.prec.bits();
    let quarter = tol.split(4.0);
    let neg_s = Float::with_val(bits, -s);
    let lhs = sum_alternating(
        |j| {
            let t = Float::with_val(bits, Float::with_val(bits, j + 1).pow(&neg_s));
            if j % 2 == 1 {
                -t
            } else {
                t
            }
        },
        1,
        1,
        &quarter,
        &cfg.prec,
        &cfg.limits,
    )?;
    let zeta_s = zeta(s, &cfg.prec.float(1), &quarter, cfg)?;
    // (1 - 2^{1-s}) ζ(s) - 1
    let mut factor = Float::with_val(bits, 1u32 - s);
    factor.exp2_mut();
    let factor = Float::with_val(bits, 1u32 - factor);
    let rhs = Float::with_val(bits, &factor * &zeta_s.value) - 1u32;
    let bound = Float::with_val(bits, &lhs.error_bound + Float::with_val(bits, &factor * &zeta_s.error_bound));
    Ok(residual(Identity::Eta, s, None, lhs.value - rhs, bound, tol))
}

/// Difference step `h = 2^-e`, `e ≥ 30`, with `h^2 ≤ tol/16` and the
/// central-difference truncation `h^2/6 · |∂_a^3 ζ(s, a)|` at most `tol/4`.
///
/// `|∂_a^3 ζ(s, a)| = s(s+1)(s+2) ζ(s+3, a)` and
/// `ζ(σ, a) ≤ a^{-σ} + a^{1-σ}/(σ-1)`.
fn step_exponent(s: &Float, a: &Float, tol: &Tolerance) -> u32 {
    let (s, a) = (s.to_f64(), a.to_f64());
    let sigma = s + 3.0;
    let zeta_bound = a.powf(-sigma) + a.powf(1.0 - sigma) / (sigma - 1.0);
    let third = s * (s + 1.0) * (s + 2.0) * zeta_bound;
    let tol = tol.to_f64();
    let h_squared = (tol / 16.0).min(1.5 * tol / third);
    let e = (-h_squared.log2() / 2.0).ceil() as u32;
    e.max(MIN_STEP_EXPONENT)
}

fn truncation_estimate(s: &Float, a: &Float, h: &Float) -> Float {
    let bits = h.prec();
    let (sf, af) = (s.to_f64(), a.to_f64());
    let sigma = sf + 3.0;
    let third = sf * (sf + 1.0) * (sf + 2.0) * (af.powf(-sigma) + af.powf(1.0 - sigma) / (sigma - 1.0));
    Float::with_val(bits, h.square_ref()) * (third / 6.0)
}

fn derivative(s: &Float, a: &Float, tol: &Tolerance, cfg: &EvalConfig) -> Result<Residual> {
    let bits = cfg.prec.bits();
    let e = step_exponent(s, a, tol);
    let h = Float::with_val(bits, Float::i_exp(1, -(e as i32)));
    let two_h = Float::with_val(bits, &h << 1u32);
    // each side enters divided by 2h
    let side = tol.divided_by(&Float::with_val(bits, 8u32 / &two_h));
    let plus = zeta(s, &Float::with_val(bits, a + &h), &side, cfg)?;
    let minus = zeta(s, &Float::with_val(bits, a - &h), &side, cfg)?;
    let s_next = Float::with_val(bits, s + 1u32);
    let shifted = zeta(&s_next, a, &tol.divided_by(&Float::with_val(bits, s * 4u32)), cfg)?;
    let mut diff = Float::with_val(bits, &plus.value - &minus.value) / &two_h;
    diff += Float::with_val(bits, s * &shifted.value);
    let mut bound = Float::with_val(bits, &plus.error_bound + &minus.error_bound) / &two_h;
    bound += Float::with_val(bits, s * &shifted.error_bound);
    bound += truncation_estimate(s, a, &h);
    Ok(residual(Identity::Derivative, s, Some(a), diff, bound, tol))
}

fn recurrence(s: &Float, a: &Float, tol: &Tolerance, cfg: &EvalConfig) -> Result<Residual> {
    let bits = cfg.prec.bits();
    let quarter = tol.split(4.0);
    let here = zeta(s, a, &quarter, cfg)?;
    let next = zeta(s, &Float::with_val(bits, a + 1u32), &quarter, cfg)?;
    let power = Float::with_val(bits, a.pow(&Float::with_val(bits, -s)));
    let diff = Float::with_val(bits, &here.value - &next.value) - power;
    let bound = Float::with_val(bits, &here.error_bound + &next.error_bound);
    Ok(residual(Identity::Recurrence, s, Some(a), diff, bound, tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(xs: &[f64]) -> Vec<Float> {
        xs.iter().map(|&x| Float::with_val(256, x)).collect()
    }

    #[test]
    fn all_identities_hold_on_a_small_grid() {
        let cfg = EvalConfig::default();
        let tol = Tolerance::from_f64(1e-12).unwrap();
        let rs = identity_suite(&grid(&[2.0, 3.0]), &grid(&[1.0, 2.0]), &tol, &cfg).unwrap();
        assert_eq!(rs.len(), 2 * (2 + 2 * 2));
        for r in &rs {
            assert!(r.passes(), "{} at s={} a={:?}: {:e}", r.identity, r.s, r.a, r.residual);
            assert!(r.bound < *tol.abs_tol());
        }
    }

    #[test]
    fn step_satisfies_square_rule() {
        for t in [1e-10, 1e-12, 1e-20, 1e-30] {
            let tol = Tolerance::from_f64(t).unwrap();
            for (s, a) in [(1.25, 2.0), (5.0, 0.25)] {
                let (s, a) = (Float::with_val(256, s), Float::with_val(256, a));
                let e = step_exponent(&s, &a, &tol);
                assert!(e >= MIN_STEP_EXPONENT);
                assert!(2f64.powi(-2 * e as i32) <= t / 16.0);
                let h = Float::with_val(256, Float::i_exp(1, -(e as i32)));
                assert!(truncation_estimate(&s, &a, &h) <= t / 4.0);
            }
        }
    }

    #[test]
    fn steep_corner_of_the_grid() {
        let cfg = EvalConfig::default();
        let tol = Tolerance::from_f64(1e-12).unwrap();
        let r = derivative(&cfg.prec.float(5), &cfg.prec.float(0.25), &tol, &cfg).unwrap();
        assert!(r.passes(), "{:e}", r.residual);
        assert!(r.bound < 1e-12);
    }

    #[test]
    fn recurrence_at_one_is_exact_reciprocal_power() {
        let cfg = EvalConfig::default();
        let tol = Tolerance::from_f64(1e-12).unwrap();
        let r = recurrence(&cfg.prec.float(2), &cfg.prec.float(1), &tol, &cfg).unwrap();
        assert!(r.residual < 1e-12);
    }
}
