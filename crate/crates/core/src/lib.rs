//! High-precision Stieltjes constants `γ_ℓ(a)`, Hurwitz and Riemann zeta values,
//! digamma values and real Dirichlet L-functions.
//!
//! The library evaluates rapidly convergent double series over dyadic (and more
//! generally base-`k`) blocks and reports a truncation error bound with every value.
//! An independent [`oracle`] module (Euler–Maclaurin summation, asymptotic digamma,
//! limit-formula Stieltjes constants) exists to validate the series routes.
//!
//! ```
//! use stieltjes_core::{stieltjes, EvalConfig, Tolerance};
//!
//! let cfg = EvalConfig::default();
//! let tol = Tolerance::from_f64(1e-12).unwrap();
//! let a = cfg.prec.float(1);
//! let gamma = stieltjes::stieltjes_dyadic(0, &a, &tol, &cfg).unwrap();
//! assert!((gamma.report.value.to_f64() - 0.5772156649015329).abs() < 1e-12);
//! ```

pub mod error;
pub mod mpcore;
pub mod oracle;
pub mod stieltjes;
pub mod zeta;

pub use error::{Error, Result};
pub use mpcore::{EvalConfig, Limits, Precision, SumReport, Tolerance};
