use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid precision: {0}")]
    InvalidPrecision(String),

    #[error("{what} did not converge after {terms} terms")]
    NonConvergence { what: String, terms: u64 },

    /// Two consecutive nonzero terms of an alternating series share a sign.
    #[error("alternating series broken at index {index}: consecutive terms share a sign")]
    InvalidSequence { index: u64 },

    #[error("{what}: routes disagree by {difference} (allowed {allowed})")]
    CrossCheckMismatch {
        what: String,
        difference: String,
        allowed: String,
    },

    #[error("identity {name} violated at s={s}, a={a}: residual {residual} > {threshold}")]
    IdentityViolation {
        name: String,
        s: String,
        a: String,
        residual: String,
        threshold: String,
    },

    #[error("evaluation at the pole s = 1")]
    PolePassed,

    #[error("invalid Dirichlet character: {0}")]
    InvalidCharacter(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn non_convergence(what: impl Into<String>, terms: u64) -> Self {
        Error::NonConvergence {
            what: what.into(),
            terms,
        }
    }
}
