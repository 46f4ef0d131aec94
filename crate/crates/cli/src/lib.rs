//! Command-line front end: `compute`, `verify` and `bench`.
//!
//! Exit codes: 0 success, 1 malformed invocation, 2 domain error,
//! 3 non-convergence, 4 failed verification.

pub mod args;
pub mod bench;
pub mod compute;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use stieltjes_core::{Error, EvalConfig, Precision, Tolerance};

use args::{Cli, Command, PrecisionArgs};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_NON_CONVERGENCE: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Numeric(Error),
    ChecksFailed { failed: usize, total: usize },
    Io(std::io::Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Io(_) => EXIT_USAGE,
            Failure::Numeric(e) => numeric_exit_code(e),
            Failure::ChecksFailed { .. } => EXIT_VERIFY_FAILED,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Numeric(e) => write!(f, "{e}"),
            Failure::ChecksFailed { failed, total } => write!(f, "{failed} of {total} checks failed"),
            Failure::Io(e) => write!(f, "output error: {e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numeric(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

pub fn numeric_exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::InvalidPrecision(_) | Error::PolePassed | Error::InvalidCharacter(_) => EXIT_DOMAIN,
        Error::NonConvergence { .. } | Error::InvalidSequence { .. } | Error::CrossCheckMismatch { .. } => {
            EXIT_NON_CONVERGENCE
        }
        Error::IdentityViolation { .. } => EXIT_VERIFY_FAILED,
    }
}

/// Parses `argv` (program name first), runs the subcommand and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Compute(a) => compute::run(&a, out),
        Command::Verify(a) => verify::run(&a, out),
        Command::Bench(a) => bench::run(&a, out, err),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.exit_code()
        }
    }
}

/// Working precision, evaluation settings and target tolerance from the shared flags.
pub(crate) fn settings(p: &PrecisionArgs) -> Result<(EvalConfig, Tolerance), Failure> {
    let prec = Precision::new(p.prec_bits, p.digits)?;
    let tol = Tolerance::parse(&p.tol).map_err(|_| Failure::Usage(format!("cannot parse --tol {:?}", p.tol)))?;
    Ok((EvalConfig::with_precision(prec), tol))
}

/// A decimal flag value parsed at working precision; `e` names Euler's number.
pub(crate) fn parse_real(flag: &str, text: &str, cfg: &EvalConfig) -> Result<rug::Float, Failure> {
    if text.trim() == "e" {
        return Ok(rug::Float::with_val(cfg.prec.bits(), 1u32).exp());
    }
    cfg.prec
        .parse(text)
        .map_err(|_| Failure::Usage(format!("cannot parse --{flag} {text:?} as a decimal number")))
}
