use rug::Float;

use super::{check_a, closed_part, ln_pow, to_partials, PartialValue, StieltjesQuery, StieltjesValue};
use crate::error::Result;
use crate::mpcore::{
    expected_outer_terms, sum_alternating, sum_geometric_outer, sum_geometric_outer_traced,
    EvalConfig, SumReport, Tolerance,
};
use crate::stieltjes::Method;

/// Sign changes of `ln^ℓ` closer than this are summed through directly.
const MAX_DIRECT_CROSSING: f64 = 4096.0;

/// `γ_ℓ(a)` from the dyadic double series.
///
/// Each inner sum `Σ_{j≥1} (-1)^j ln^ℓ(a + j/2^n)/(j + a 2^n)` goes through
/// [`sum_alternating`], which adds consecutive terms in pairs.
pub fn stieltjes_dyadic(ell: u32, a: &Float, tol: &Tolerance, cfg: &EvalConfig) -> Result<StieltjesValue> {
    check_a(a)?;
    let a = cfg.prec.float(a);
    let closed = closed_part(ell, &a, 1.0);
    let inner_tol = inner_tolerance(tol);
    let mut report = sum_geometric_outer(
        |n| inner_sum(ell, &a, n, &inner_tol, cfg),
        1,
        tol,
        &cfg.prec,
        &cfg.limits,
    )?;
    report.value += &closed;
    Ok(StieltjesValue {
        query: StieltjesQuery::new(ell, a, Method::Dyadic, 2)?,
        report,
    })
}

pub(super) fn traced(
    query: &StieltjesQuery,
    tol: &Tolerance,
    cfg: &EvalConfig,
) -> Result<(StieltjesValue, Vec<PartialValue>)> {
    let ell = query.ell();
    let a = cfg.prec.float(query.a());
    let closed = closed_part(ell, &a, 1.0);
    let inner_tol = inner_tolerance(tol);
    let (mut report, steps) = sum_geometric_outer_traced(
        |n| inner_sum(ell, &a, n, &inner_tol, cfg),
        1,
        tol,
        &cfg.prec,
        &cfg.limits,
    )?;
    report.value += &closed;
    let partials = to_partials(&closed, 1, &steps);
    Ok((
        StieltjesValue {
            query: query.clone(),
            report,
        },
        partials,
    ))
}

fn inner_tolerance(tol: &Tolerance) -> Tolerance {
    tol.split(2.0 * expected_outer_terms(tol, 0.5) as f64)
}

fn inner_sum(ell: u32, a: &Float, n: u64, tol: &Tolerance, cfg: &EvalConfig) -> Result<SumReport> {
    let bits = cfg.prec.bits();
    let shift = n as u32;
    let term = |j: u64| {
        // y = a + j/2^n, term = (-1)^j ln^ℓ(y) / (2^n y)
        let mut y = Float::with_val(bits, j);
        y >>= shift;
        y += a;
        let mut t = ln_pow(&y, ell) / y;
        t >>= shift;
        if j % 2 == 1 {
            t = -t;
        }
        t
    };
    sum_alternating(term, 1, monotone_onset(ell, a, n), tol, &cfg.prec, &cfg.limits)
}

/// For `ℓ ≥ 1` and `a < 1`, `ln^ℓ(a + j/2^n)` vanishes at `j = 2^n (1 - a)`:
/// odd ℓ changes sign there and even ℓ stops decreasing. Near crossings are
/// summed past directly.
fn monotone_onset(ell: u32, a: &Float, n: u64) -> u64 {
    if ell == 0 || *a >= 1 {
        return 1;
    }
    let crossing = (1.0 - a.to_f64()) * 2f64.powi(n as i32);
    if crossing <= MAX_DIRECT_CROSSING {
        crossing.floor() as u64 + 1
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    fn tol(x: f64) -> Tolerance {
        Tolerance::from_f64(x).unwrap()
    }

    #[test]
    fn euler_constant_at_one() {
        let cfg = EvalConfig::default();
        let v = stieltjes_dyadic(0, &cfg.prec.float(1), &tol(1e-15), &cfg).unwrap();
        let gamma = Float::with_val(256, Constant::Euler);
        let err = Float::with_val(256, &v.report.value - &gamma).abs();
        assert!(err <= v.report.error_bound, "{err} > {}", v.report.error_bound);
        assert!(v.report.error_bound <= 1e-15);
        assert!((v.report.decay_ratio - 0.5).abs() < 0.05);
    }

    #[test]
    fn closed_part_at_one_is_exactly_one() {
        let one = Float::with_val(256, 1);
        assert_eq!(closed_part(0, &one, 1.0), 1);
        assert_eq!(closed_part(3, &one, 1.0), 0);
    }

    #[test]
    fn onset_skips_sign_change() {
        let half = Float::with_val(256, 0.5);
        assert_eq!(monotone_onset(1, &half, 3), 5);
        assert_eq!(monotone_onset(2, &half, 3), 5);
        assert_eq!(monotone_onset(0, &half, 3), 1);
        assert_eq!(monotone_onset(1, &Float::with_val(256, 1.5), 3), 1);
        assert_eq!(monotone_onset(1, &half, 40), 1);
    }
}
