use rug::Float;

use super::{CompensatedSum, Limits, Precision, SumReport, Tolerance};
use crate::error::{Error, Result};

/// Ratios at or above this never count as convergent.
const RATIO_CAP: f64 = 0.9;
/// Ratios taken from the most recent terms when estimating the tail.
const RATIO_WINDOW: usize = 3;

/// One outer block as seen by the stopping rule.
#[derive(Debug, Clone, PartialEq)]
pub struct OuterStep {
    pub index: u64,
    pub term: Float,
    /// Compensated sum of the outer terms up to and including this one.
    pub partial: Float,
    /// Inner terms used so far, cumulative.
    pub inner_terms: u64,
}

/// A generous estimate of how many outer terms a series with asymptotic ratio
/// `ratio` needs to reach `tol`; used to split the inner error budget.
pub fn expected_outer_terms(tol: &Tolerance, ratio: f64) -> usize {
    let digits = (1.0 / tol.to_f64()).ln().max(1.0);
    (2.0 * digits / (1.0 / ratio).ln()).ceil() as usize + 16
}

/// Sums `Σ_{n ≥ first} T_n` for outer terms that decay roughly geometrically.
///
/// Stops once `2|T_N|·r/(1-r) < tol/2`, where `r` is the largest ratio
/// `|T_{n+1}/T_n|` among the last three and must be below 0.9. The reported
/// bound is that tail estimate plus the sum of the inner error bounds.
pub fn sum_geometric_outer<F>(
    outer_term: F,
    first: u64,
    tol: &Tolerance,
    prec: &Precision,
    limits: &Limits,
) -> Result<SumReport>
where
    F: FnMut(u64) -> Result<SumReport>,
{
    run(outer_term, first, tol, prec, limits, None)
}

/// [`sum_geometric_outer`] that also records the partial sum after every term.
pub fn sum_geometric_outer_traced<F>(
    outer_term: F,
    first: u64,
    tol: &Tolerance,
    prec: &Precision,
    limits: &Limits,
) -> Result<(SumReport, Vec<OuterStep>)>
where
    F: FnMut(u64) -> Result<SumReport>,
{
    let mut steps = Vec::new();
    let report = run(outer_term, first, tol, prec, limits, Some(&mut steps))?;
    Ok((report, steps))
}

fn run<F>(
    mut outer_term: F,
    first: u64,
    tol: &Tolerance,
    prec: &Precision,
    limits: &Limits,
    mut trace: Option<&mut Vec<OuterStep>>,
) -> Result<SumReport>
where
    F: FnMut(u64) -> Result<SumReport>,
{
    let bits = prec.bits();
    let half_tol = Float::with_val(bits, tol.abs_tol() / 2u32);
    let mut acc = CompensatedSum::new(bits);
    let mut inner_bound = Float::new(bits);
    let mut inner_terms = 0u64;
    let mut magnitudes: Vec<Float> = Vec::new();

    for count in 0..limits.max_outer_terms {
        let n = first + count as u64;
        let term = outer_term(n)?;
        inner_bound += &term.error_bound;
        inner_terms += term.inner_terms_total;
        acc.add(&term.value);
        magnitudes.push(term.value.clone().abs());
        if let Some(steps) = trace.as_deref_mut() {
            steps.push(OuterStep {
                index: n,
                term: term.value,
                partial: acc.value(),
                inner_terms,
            });
        }

        if magnitudes.len() <= RATIO_WINDOW {
            continue;
        }
        let ratio = recent_ratio(&magnitudes);
        if ratio >= RATIO_CAP {
            continue;
        }
        let last = magnitudes.last().unwrap();
        // doubled: observed ratios may still be drifting upward
        let tail = Float::with_val(bits, last * ratio) * (2.0 / (1.0 - ratio));
        if tail < half_tol {
            let error_bound = Float::with_val(bits, &inner_bound + &tail);
            return Ok(SumReport {
                value: acc.value(),
                error_bound,
                outer_terms: magnitudes.len(),
                inner_terms_total: inner_terms,
                decay_ratio: observed_ratio(&magnitudes),
            });
        }
    }
    Err(Error::non_convergence(
        "geometric outer sum",
        limits.max_outer_terms as u64,
    ))
}

fn ratio_of(prev: &Float, next: &Float) -> f64 {
    if next.is_zero() {
        0.0
    } else if prev.is_zero() {
        f64::INFINITY
    } else {
        Float::with_val(64, next / prev).to_f64()
    }
}

fn recent_ratio(magnitudes: &[Float]) -> f64 {
    magnitudes[magnitudes.len() - RATIO_WINDOW - 1..]
        .windows(2)
        .map(|w| ratio_of(&w[0], &w[1]))
        .fold(0.0, f64::max)
}

fn observed_ratio(magnitudes: &[Float]) -> f64 {
    if magnitudes.len() < 3 {
        return f64::NAN;
    }
    recent_ratio(magnitudes)
}
