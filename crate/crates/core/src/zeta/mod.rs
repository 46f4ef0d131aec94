//! Hurwitz and Riemann zeta values from alternating dyadic double series,
//! the classical identities they satisfy, and real Dirichlet L-functions.

mod dirichlet;
mod identities;
mod series;

pub use dirichlet::{dirichlet_l, periodic_l, DirichletCharacter, PeriodicCoefficients};
pub use identities::{
    default_a_grid, default_s_grid, identity_residuals, identity_suite, Identity, Residual,
};
pub use series::{brun_beta, brun_zeta, hurwitz_zeta_series, hurwitz_zeta_traced};

use rug::Float;

use crate::error::{Error, Result};

/// Distance from the pole below which `s` is rejected.
pub const POLE_EXCLUSION: f64 = 1e-6;

/// Arguments `(s, a)` of `ζ(s, a)` with `s > 1` (and not within
/// [`POLE_EXCLUSION`] of 1) and `a > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaArgs {
    s: Float,
    a: Float,
}

impl ZetaArgs {
    pub fn new(s: Float, a: Float) -> Result<Self> {
        check_s(&s)?;
        if !a.is_finite() || a <= 0 {
            return Err(Error::domain(format!("a must be positive, got {}", a.to_f64())));
        }
        Ok(ZetaArgs { s, a })
    }

    pub fn s(&self) -> &Float {
        &self.s
    }

    pub fn a(&self) -> &Float {
        &self.a
    }
}

pub(crate) fn check_s(s: &Float) -> Result<()> {
    if !s.is_finite() || *s <= 1 {
        return Err(Error::domain(format!("s must exceed 1, got {}", s.to_f64())));
    }
    if Float::with_val(s.prec(), s - 1u32) < POLE_EXCLUSION {
        return Err(Error::domain(format!(
            "s = {} is within {POLE_EXCLUSION:e} of the pole",
            s.to_f64()
        )));
    }
    Ok(())
}
