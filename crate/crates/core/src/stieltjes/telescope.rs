use rug::float::Constant;
use rug::Float;

use super::{check_a, to_partials, PartialValue, StieltjesQuery, StieltjesValue};
use crate::error::{Error, Result};
use crate::mpcore::{sum_geometric_outer, sum_geometric_outer_traced, EvalConfig, SumReport, Tolerance};
use crate::oracle::digamma_ref;

/// Absolute error of one ψ evaluation is below `2^-(bits-16)`.
const DIGAMMA_LOSS_BITS: u32 = 16;

/// `γ = Σ_{n≥0} [ψ(2^{n+1}) - ψ(2^n) - ln 2]`.
///
/// The halves form `½ Σ_{n≥0} [ψ(2^n + ½) - ψ(2^n)]` is evaluated as well and
/// must agree; the two are term-by-term equal by the duplication formula.
pub fn euler_gamma_telescope(tol: &Tolerance, cfg: &EvalConfig) -> Result<SumReport> {
    let one = cfg.prec.float(1);
    let doubled = doubling_sum(&one, tol, cfg, false)?.0;
    let halves = euler_gamma_telescope_halves(tol, cfg)?;
    let bits = cfg.prec.bits();
    let diff = Float::with_val(bits, &doubled.value - &halves.value).abs();
    let allowed = Float::with_val(bits, &doubled.error_bound + &halves.error_bound);
    if diff > allowed {
        return Err(Error::CrossCheckMismatch {
            what: "Euler constant telescopes".into(),
            difference: format!("{:.3e}", diff.to_f64()),
            allowed: format!("{:.3e}", allowed.to_f64()),
        });
    }
    Ok(doubled)
}

/// `½ Σ_{n≥0} [ψ((2^{n+1} + 1)/2) - ψ(2^n)]`
pub fn euler_gamma_telescope_halves(tol: &Tolerance, cfg: &EvalConfig) -> Result<SumReport> {
    let bits = cfg.prec.bits();
    let per_term = term_error(cfg, 2);
    sum_geometric_outer(
        |n| {
            let x = Float::with_val(bits, Float::i_exp(1, n as i32));
            let x_half = Float::with_val(bits, &x + 0.5f64);
            let mut value = digamma_ref(&x_half, &cfg.prec)? - digamma_ref(&x, &cfg.prec)?;
            value >>= 1u32;
            Ok(term_report(value, &per_term))
        },
        0,
        tol,
        &cfg.prec,
        &cfg.limits,
    )
}

/// `γ_0(a) = -ψ(a) = -ln a + Σ_{n≥0} [ψ(a 2^{n+1}) - ψ(a 2^n) - ln 2]`.
pub fn gamma0_telescope(a: &Float, tol: &Tolerance, cfg: &EvalConfig) -> Result<SumReport> {
    check_a(a)?;
    let a = cfg.prec.float(a);
    doubling_sum(&a, tol, cfg, false).map(|(r, _)| r)
}

pub(super) fn traced(
    query: &StieltjesQuery,
    tol: &Tolerance,
    cfg: &EvalConfig,
) -> Result<(StieltjesValue, Vec<PartialValue>)> {
    let a = cfg.prec.float(query.a());
    let (report, partials) = doubling_sum(&a, tol, cfg, true)?;
    Ok((
        StieltjesValue {
            query: query.clone(),
            report,
        },
        partials,
    ))
}

fn doubling_sum(
    a: &Float,
    tol: &Tolerance,
    cfg: &EvalConfig,
    trace: bool,
) -> Result<(SumReport, Vec<PartialValue>)> {
    let bits = cfg.prec.bits();
    let ln2 = Float::with_val(bits, Constant::Log2);
    let per_term = term_error(cfg, 2);
    let term = |n: u64| {
        let x = Float::with_val(bits, a << n as u32);
        let x2 = Float::with_val(bits, &x << 1u32);
        let value = digamma_ref(&x2, &cfg.prec)? - digamma_ref(&x, &cfg.prec)? - &ln2;
        Ok(term_report(value, &per_term))
    };
    let closed = -Float::with_val(bits, a.ln_ref());
    let (mut report, partials) = if trace {
        let (r, steps) = sum_geometric_outer_traced(term, 0, tol, &cfg.prec, &cfg.limits)?;
        let p = to_partials(&closed, 1, &steps);
        (r, p)
    } else {
        (sum_geometric_outer(term, 0, tol, &cfg.prec, &cfg.limits)?, Vec::new())
    };
    report.value += &closed;
    report.error_bound += term_error(cfg, 1);
    Ok((report, partials))
}

fn term_error(cfg: &EvalConfig, evaluations: u32) -> Float {
    let bits = cfg.prec.bits();
    Float::with_val(bits, Float::i_exp(evaluations as i32, -((bits - DIGAMMA_LOSS_BITS) as i32)))
}

fn term_report(value: Float, error: &Float) -> SumReport {
    SumReport {
        value,
        error_bound: error.clone(),
        outer_terms: 0,
        inner_terms_total: 2,
        decay_ratio: f64::NAN,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpcore::Precision;

    fn tol(x: f64) -> Tolerance {
        Tolerance::from_f64(x).unwrap()
    }

    #[test]
    fn euler_constant() {
        let cfg = EvalConfig::default();
        let r = euler_gamma_telescope(&tol(1e-15), &cfg).unwrap();
        let gamma = Float::with_val(256, Constant::Euler);
        assert!(Float::with_val(256, &r.value - &gamma).abs() <= r.error_bound);
        assert!(r.error_bound <= 1e-15);
    }

    #[test]
    fn first_halves_term_is_one_minus_ln_two() {
        let p = Precision::default();
        let half_term = (digamma_ref(&p.float(1.5), &p).unwrap() - digamma_ref(&p.float(1), &p).unwrap()) / 2u32;
        let ln2 = Float::with_val(256, Constant::Log2);
        let doubling_term = digamma_ref(&p.float(2), &p).unwrap() - digamma_ref(&p.float(1), &p).unwrap() - &ln2;
        let exact = Float::with_val(256, 1u32 - ln2);
        assert!(Float::with_val(256, &half_term - &exact).abs() < 1e-70);
        assert!(Float::with_val(256, &doubling_term - &exact).abs() < 1e-70);
    }

    #[test]
    fn partial_sums_increase_towards_gamma() {
        let p = Precision::default();
        let ln2 = Float::with_val(256, Constant::Log2);
        let gamma = Float::with_val(256, Constant::Euler);
        let mut partial = Float::new(256);
        for n in 0..=60u32 {
            let x = Float::with_val(256, Float::i_exp(1, n as i32));
            let x2 = Float::with_val(256, &x * 2u32);
            let term = digamma_ref(&x2, &p).unwrap() - digamma_ref(&x, &p).unwrap() - &ln2;
            assert!(term > 0, "term {n} not positive");
            partial += term;
            assert!(partial < gamma);
        }
        assert!(Float::with_val(256, &gamma - &partial) < 1e-18);
    }

    #[test]
    fn gamma0_values() {
        let cfg = EvalConfig::default();
        let t = tol(1e-15);
        let gamma = Float::with_val(256, Constant::Euler);
        let ln2 = Float::with_val(256, Constant::Log2);
        let at_two = gamma0_telescope(&cfg.prec.float(2), &t, &cfg).unwrap();
        assert!(Float::with_val(256, &at_two.value - (Float::with_val(256, &gamma - 1u32))).abs() < 1e-15);
        let at_half = gamma0_telescope(&cfg.prec.float(0.5), &t, &cfg).unwrap();
        let expected = Float::with_val(256, &gamma + Float::with_val(256, &ln2 * 2u32));
        assert!(Float::with_val(256, &at_half.value - &expected).abs() < 1e-15);
        assert!(gamma0_telescope(&cfg.prec.float(0), &t, &cfg).is_err());
    }
}
