//! Independent reference implementations used to validate the series routes.
//!
//! Nothing here touches the summation primitives in [`crate::mpcore`]: the
//! oracles use Euler–Maclaurin summation, the asymptotic digamma expansion and
//! the classical limit formula for Stieltjes constants, with their own
//! Bernoulli-number generator. They favour simplicity over speed.

mod bernoulli;
mod digamma;
mod hurwitz;
mod stieltjes_ref;

pub use bernoulli::bernoulli_numbers;
pub use digamma::digamma_ref;
pub use hurwitz::hurwitz_zeta_ref;
pub use stieltjes_ref::{stieltjes_ref, stieltjes_ref_with, MAX_ELL};

use rug::Float;

use crate::error::{Error, Result};

/// Extra bits carried internally by every oracle computation.
pub(crate) const ORACLE_GUARD_BITS: u32 = 32;

/// Euler–Maclaurin parameters: `shift` terms are summed directly before the
/// Bernoulli correction with `bernoulli_terms` terms takes over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EMConfig {
    shift: u64,
    bernoulli_terms: u32,
}

impl EMConfig {
    pub fn new(shift: u64, bernoulli_terms: u32) -> Result<Self> {
        if shift < 10 {
            return Err(Error::domain(format!("EM shift must be at least 10, got {shift}")));
        }
        if !(2..=30).contains(&bernoulli_terms) {
            return Err(Error::domain(format!(
                "EM Bernoulli terms must lie in [2, 30], got {bernoulli_terms}"
            )));
        }
        Ok(EMConfig {
            shift,
            bernoulli_terms,
        })
    }

    pub fn shift(&self) -> u64 {
        self.shift
    }

    pub fn bernoulli_terms(&self) -> u32 {
        self.bernoulli_terms
    }
}

impl Default for EMConfig {
    fn default() -> Self {
        EMConfig {
            shift: 100,
            bernoulli_terms: 30,
        }
    }
}

/// An oracle value with the magnitude of the first omitted correction term.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleValue {
    pub value: Float,
    pub remainder: Float,
}
