//! Multiprecision summation primitives shared by the series modules.
//!
//! Values are [`rug::Float`]s at a caller-chosen binary precision. The two
//! workhorses are [`sum_alternating`] (inner sums with a remainder bound) and
//! [`sum_geometric_outer`] (outer block sums with an empirical ratio stopping rule).

mod alternating;
pub mod bernoulli;
mod compensated;
mod outer;
mod precision;

pub use alternating::sum_alternating;
pub use compensated::CompensatedSum;
pub use outer::{expected_outer_terms, sum_geometric_outer, sum_geometric_outer_traced, OuterStep};
pub use precision::{Precision, Tolerance};

use rug::Float;

/// Hard caps on the number of terms any single evaluation may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_inner_terms: u64,
    pub max_outer_terms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_inner_terms: 1_000_000,
            max_outer_terms: 200,
        }
    }
}

/// Everything an evaluation needs besides its mathematical arguments.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EvalConfig {
    pub prec: Precision,
    pub limits: Limits,
    /// Evaluate secondary algebraic forms alongside the primary one and
    /// fail on disagreement.
    pub cross_check: bool,
}

impl EvalConfig {
    pub fn with_precision(prec: Precision) -> Self {
        EvalConfig {
            prec,
            ..EvalConfig::default()
        }
    }

    pub fn with_cross_check(mut self, on: bool) -> Self {
        self.cross_check = on;
        self
    }
}

/// A summed value together with a bound on its truncation error and telemetry.
#[derive(Debug, Clone, PartialEq)]
pub struct SumReport {
    pub value: Float,
    /// Bound on `|value - exact sum|`.
    pub error_bound: Float,
    pub outer_terms: usize,
    pub inner_terms_total: u64,
    /// Observed geometric ratio of the outer terms, NaN with fewer than 3 outer terms.
    pub decay_ratio: f64,
}

impl SumReport {
    /// A report for a value computed in closed form (no truncation).
    pub fn exact(value: Float) -> Self {
        let error_bound = Float::with_val(value.prec(), 0);
        SumReport {
            value,
            error_bound,
            outer_terms: 0,
            inner_terms_total: 0,
            decay_ratio: f64::NAN,
        }
    }

    pub fn within(&self, tol: &Tolerance) -> bool {
        self.error_bound <= *tol.abs_tol()
    }
}
