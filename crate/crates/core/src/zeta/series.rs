use rug::ops::Pow;
use rug::Float;

use super::{check_s, ZetaArgs};
use crate::error::{Error, Result};
use crate::mpcore::{
    expected_outer_terms, sum_alternating, sum_geometric_outer, sum_geometric_outer_traced, EvalConfig,
    SumReport, Tolerance,
};
use crate::stieltjes::PartialValue;

/// `ζ(s, a) = a^{-s} + a^{1-s}/(s-1) + Σ_{n≥1} 2^{n(s-1)} Σ_{j≥1} (-1)^j/(j + a 2^n)^s`.
///
/// Block `n` has size about `2^{-n}/(2a^s)`, so the outer sum halves per step.
pub fn hurwitz_zeta_series(args: &ZetaArgs, tol: &Tolerance, cfg: &EvalConfig) -> Result<SumReport> {
    hurwitz(args, tol, cfg, false).map(|(r, _)| r)
}

/// Like [`hurwitz_zeta_series`], also returning the running value after each block.
pub fn hurwitz_zeta_traced(
    args: &ZetaArgs,
    tol: &Tolerance,
    cfg: &EvalConfig,
) -> Result<(SumReport, Vec<PartialValue>)> {
    hurwitz(args, tol, cfg, true)
}

/// Brun's series `β(s) = Σ_{n≥1} Σ_{j≥1} (-1)^{j-1} 2^{n(s-1)}/(2^n + j)^s`, for `s ≥ 1`.
pub fn brun_beta(s: &Float, tol: &Tolerance, cfg: &EvalConfig) -> Result<SumReport> {
    if !s.is_finite() || *s < 1 {
        return Err(Error::domain(format!("Brun's series needs s >= 1, got {}", s.to_f64())));
    }
    let s = cfg.prec.float(s);
    let inner_tol = tol.split(2.0 * expected_outer_terms(tol, 0.5) as f64);
    sum_geometric_outer(
        |n| {
            let offset = Float::with_val(cfg.prec.bits(), Float::i_exp(1, n as i32));
            let mut block = dyadic_block(&s, &offset, n, &inner_tol, cfg)?;
            block.value = -block.value;
            Ok(block)
        },
        1,
        tol,
        &cfg.prec,
        &cfg.limits,
    )
}

/// `ζ(s) = 1/(s-1) + 1 - β(s)` for `s > 1`.
pub fn brun_zeta(s: &Float, tol: &Tolerance, cfg: &EvalConfig) -> Result<SumReport> {
    check_s(s)?;
    let s = cfg.prec.float(s);
    let mut report = brun_beta(&s, tol, cfg)?;
    let mut value = Float::with_val(cfg.prec.bits(), &s - 1u32).recip();
    value += 1u32;
    value -= &report.value;
    report.value = value;
    Ok(report)
}

fn hurwitz(
    args: &ZetaArgs,
    tol: &Tolerance,
    cfg: &EvalConfig,
    trace: bool,
) -> Result<(SumReport, Vec<PartialValue>)> {
    let bits = cfg.prec.bits();
    let s = cfg.prec.float(args.s());
    let a = cfg.prec.float(args.a());
    let s1 = Float::with_val(bits, &s - 1u32);
    // a^{-s} + a^{1-s}/(s-1)
    let a_neg_s = Float::with_val(bits, (&a).pow(&-s.clone()));
    let mut closed = Float::with_val(bits, &a_neg_s * &a) / &s1;
    closed += &a_neg_s;

    let inner_tol = tol.split(2.0 * expected_outer_terms(tol, 0.5) as f64);
    let block = |n: u64| {
        let offset = Float::with_val(bits, &a << n as u32);
        dyadic_block(&s, &offset, n, &inner_tol, cfg)
    };
    let (mut report, partials) = if trace {
        let (r, steps) = sum_geometric_outer_traced(block, 1, tol, &cfg.prec, &cfg.limits)?;
        let partials = steps
            .iter()
            .map(|st| PartialValue {
                index: st.index,
                value: Float::with_val(bits, &st.partial + &closed),
                inner_terms: st.inner_terms,
            })
            .collect();
        (r, partials)
    } else {
        (sum_geometric_outer(block, 1, tol, &cfg.prec, &cfg.limits)?, Vec::new())
    };
    report.value += &closed;
    Ok((report, partials))
}

/// `2^{n(s-1)} Σ_{j≥1} (-1)^j (j + offset)^{-s}`, with the inner sum run to
/// `tol / 2^{n(s-1)}` so the scaled block meets `tol`.
fn dyadic_block(s: &Float, offset: &Float, n: u64, tol: &Tolerance, cfg: &EvalConfig) -> Result<SumReport> {
    let bits = cfg.prec.bits();
    let neg_s = Float::with_val(bits, -s);
    let mut weight = Float::with_val(bits, s - 1u32);
    weight *= n;
    weight.exp2_mut();
    let inner_tol = tol.divided_by(&weight);
    let term = |j: u64| {
        let base = Float::with_val(bits, offset + j);
        let t = Float::with_val(bits, base.pow(&neg_s));
        if j % 2 == 1 {
            -t
        } else {
            t
        }
    };
    let mut report = sum_alternating(term, 1, 1, &inner_tol, &cfg.prec, &cfg.limits)?;
    report.value *= &weight;
    report.error_bound *= &weight;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    fn tol(x: f64) -> Tolerance {
        Tolerance::from_f64(x).unwrap()
    }

    fn args(s: f64, a: f64) -> ZetaArgs {
        ZetaArgs::new(Float::with_val(256, s), Float::with_val(256, a)).unwrap()
    }

    fn close(x: &SumReport, expected: &Float) {
        let err = Float::with_val(256, &x.value - expected).abs();
        assert!(err <= x.error_bound, "error {err:e} exceeds bound {:e}", x.error_bound);
    }

    #[test]
    fn basel_and_half_shift() {
        let cfg = EvalConfig::default();
        let pi2 = Float::with_val(256, Constant::Pi).square();
        let r = hurwitz_zeta_series(&args(2.0, 1.0), &tol(1e-14), &cfg).unwrap();
        close(&r, &Float::with_val(256, &pi2 / 6u32));
        assert!((r.decay_ratio - 0.5).abs() < 0.05);
        let r = hurwitz_zeta_series(&args(2.0, 0.5), &tol(1e-14), &cfg).unwrap();
        close(&r, &Float::with_val(256, &pi2 / 2u32));
    }

    #[test]
    fn apery_constant() {
        let cfg = EvalConfig::default();
        let r = hurwitz_zeta_series(&args(3.0, 1.0), &tol(1e-14), &cfg).unwrap();
        assert!((r.value.to_f64() - 1.202_056_903_159_594_3).abs() < 1e-14);
    }

    #[test]
    fn brun_at_one_gives_euler_constant() {
        let cfg = EvalConfig::default();
        let r = brun_beta(&cfg.prec.float(1), &tol(1e-13), &cfg).unwrap();
        let expected = Float::with_val(256, 1u32 - Float::with_val(256, Constant::Euler));
        close(&r, &expected);
    }

    #[test]
    fn brun_zeta_at_two() {
        let cfg = EvalConfig::default();
        let r = brun_zeta(&cfg.prec.float(2), &tol(1e-13), &cfg).unwrap();
        let pi2 = Float::with_val(256, Constant::Pi).square();
        close(&r, &Float::with_val(256, &pi2 / 6u32));
        assert!(brun_beta(&cfg.prec.float(0.5), &tol(1e-10), &cfg).is_err());
        assert!(brun_zeta(&cfg.prec.float(1), &tol(1e-10), &cfg).is_err());
    }

    #[test]
    fn traced_partials_end_at_value() {
        let cfg = EvalConfig::default();
        let (r, partials) = hurwitz_zeta_traced(&args(1.5, 0.25), &tol(1e-12), &cfg).unwrap();
        assert_eq!(partials.len(), r.outer_terms);
        assert_eq!(partials.last().unwrap().value, r.value);
        assert_eq!(partials[0].index, 1);
    }
}
