use rug::{Assign, Float};

use crate::error::{Error, Result};

pub const DEFAULT_BITS: u32 = 256;
pub const DEFAULT_DIGITS: u32 = 30;
const GUARD_BITS: u32 = 32;
const MIN_BITS: u32 = 64;
/// Tolerances are compared, never accumulated, so a double-width mantissa is plenty.
const TOL_BITS: u32 = 64;

/// Working binary precision and the number of decimal digits to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    bits: u32,
    out_digits: u32,
}

impl Precision {
    pub fn new(bits: u32, out_digits: u32) -> Result<Self> {
        if out_digits == 0 {
            return Err(Error::InvalidPrecision(
                "at least one output digit is required".into(),
            ));
        }
        let needed = (f64::from(out_digits) * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS;
        if bits < MIN_BITS || bits < needed {
            return Err(Error::InvalidPrecision(format!(
                "{bits} bits cannot carry {out_digits} digits (need at least {})",
                needed.max(MIN_BITS)
            )));
        }
        Ok(Precision { bits, out_digits })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn out_digits(&self) -> u32 {
        self.out_digits
    }

    /// A new float at working precision.
    pub fn float<T>(&self, value: T) -> Float
    where
        Float: Assign<T>,
    {
        Float::with_val(self.bits, value)
    }

    /// Parses a decimal string at working precision.
    pub fn parse(&self, text: &str) -> Result<Float> {
        let parsed = Float::parse(text.trim())
            .map_err(|e| Error::domain(format!("cannot parse {text:?} as a real: {e}")))?;
        let value = Float::with_val(self.bits, parsed);
        if !value.is_finite() {
            return Err(Error::domain(format!("{text:?} is not finite")));
        }
        Ok(value)
    }

    /// `2^-bits`, the unit roundoff scale.
    pub fn epsilon(&self) -> Float {
        Float::with_val(self.bits, Float::i_exp(1, -(self.bits as i32)))
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            bits: DEFAULT_BITS,
            out_digits: DEFAULT_DIGITS,
        }
    }
}

/// Target absolute error of a final value.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerance {
    abs_tol: Float,
}

impl Tolerance {
    pub fn new(abs_tol: Float) -> Result<Self> {
        if !abs_tol.is_finite() || abs_tol <= 0 {
            return Err(Error::domain(format!(
                "tolerance must be positive and finite, got {abs_tol}"
            )));
        }
        Ok(Tolerance {
            abs_tol: Float::with_val(TOL_BITS.max(abs_tol.prec()), abs_tol),
        })
    }

    pub fn from_f64(abs_tol: f64) -> Result<Self> {
        Tolerance::new(Float::with_val(TOL_BITS, abs_tol))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let parsed = Float::parse(text.trim())
            .map_err(|e| Error::domain(format!("cannot parse tolerance {text:?}: {e}")))?;
        Tolerance::new(Float::with_val(TOL_BITS, parsed))
    }

    pub fn abs_tol(&self) -> &Float {
        &self.abs_tol
    }

    pub fn to_f64(&self) -> f64 {
        self.abs_tol.to_f64()
    }

    /// This tolerance divided by `divisor`.
    pub fn split(&self, divisor: f64) -> Tolerance {
        Tolerance {
            abs_tol: Float::with_val(self.abs_tol.prec(), &self.abs_tol / divisor),
        }
    }

    /// This tolerance divided by an arbitrary positive float.
    pub fn divided_by(&self, divisor: &Float) -> Tolerance {
        let prec = self.abs_tol.prec();
        Tolerance {
            abs_tol: Float::with_val(prec, &self.abs_tol / divisor),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard_bits_enforced() {
        assert!(Precision::new(256, 30).is_ok());
        // 30 digits need 100 bits + 32 guard bits.
        assert!(Precision::new(131, 30).is_err());
        assert!(Precision::new(132, 30).is_ok());
        assert!(Precision::new(63, 1).is_err());
        assert!(Precision::new(128, 0).is_err());
    }

    #[test]
    fn tolerance_rejects_nonpositive() {
        assert!(Tolerance::from_f64(0.0).is_err());
        assert!(Tolerance::from_f64(-1e-3).is_err());
        assert!(Tolerance::from_f64(f64::NAN).is_err());
        assert!(Tolerance::parse("1e-40").is_ok());
        assert!(Tolerance::parse("abc").is_err());
    }

    #[test]
    fn parse_keeps_working_precision() {
        let p = Precision::default();
        let third = p.parse("0.333333333333333333333333333333333333333").unwrap();
        assert_eq!(third.prec(), 256);
        assert!(p.parse("inf").is_err());
    }
}
