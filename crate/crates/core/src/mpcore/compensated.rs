use std::cmp::Ordering;

use rug::Float;

/// Neumaier-compensated running sum at a fixed precision.
///
/// Terms must be added in a fixed order for results to be reproducible.
#[derive(Debug, Clone)]
pub struct CompensatedSum {
    sum: Float,
    carry: Float,
}

impl CompensatedSum {
    pub fn new(bits: u32) -> Self {
        CompensatedSum {
            sum: Float::new(bits),
            carry: Float::new(bits),
        }
    }

    pub fn add(&mut self, x: &Float) {
        let bits = self.sum.prec();
        let t = Float::with_val(bits, &self.sum + x);
        let lost = if self.sum.cmp_abs(x) != Some(Ordering::Less) {
            Float::with_val(bits, &self.sum - &t) + x
        } else {
            Float::with_val(bits, x - &t) + &self.sum
        };
        self.carry += lost;
        self.sum = t;
    }

    pub fn value(&self) -> Float {
        Float::with_val(self.sum.prec(), &self.sum + &self.carry)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_absorbed_low_order_terms() {
        // At 64 bits, 1 + 2^-70 rounds to 1; the carry keeps the small parts.
        let mut acc = CompensatedSum::new(64);
        acc.add(&Float::with_val(64, 1));
        for _ in 0..4 {
            acc.add(&Float::with_val(64, Float::i_exp(1, -70)));
        }
        acc.add(&Float::with_val(64, -1));
        assert_eq!(acc.value(), Float::with_val(64, Float::i_exp(1, -68)));
    }
}
