use std::sync::{Mutex, OnceLock};

use rug::{Integer, Rational};

fn cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rational::from(1)]))
}

/// Exact `B_0..=B_n` (with `B_1 = -1/2`) from `Σ_{k=0}^{m} C(m+1, k) B_k = 0`.
///
/// Results are cached for the life of the process; concurrent callers may both
/// extend the table, which yields identical values.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut table = cache().lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= n {
        let m = table.len();
        let mut acc = Rational::new();
        let mut binom = Integer::from(1);
        for (k, b) in table.iter().enumerate() {
            acc += Rational::from(b * &binom);
            // C(m+1, k+1) from C(m+1, k)
            binom *= (m + 1 - k) as u32;
            binom /= (k + 1) as u32;
        }
        // C(m+1, m) = m+1
        table.push(-acc / (m as u32 + 1));
    }
    table[..=n].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let b = bernoulli_numbers(12);
        assert_eq!(b[1], Rational::from((-1, 2)));
        assert_eq!(b[2], Rational::from((1, 6)));
        assert_eq!(b[3], Rational::new());
        assert_eq!(b[4], Rational::from((-1, 30)));
        assert_eq!(b[12], Rational::from((-691, 2730)));
    }

    #[test]
    fn agrees_with_series_side_generator() {
        let ours = bernoulli_numbers(80);
        let theirs = crate::mpcore::bernoulli::even_bernoulli(40);
        for p in 1..=40 {
            assert_eq!(ours[2 * p], theirs[p - 1], "B_{}", 2 * p);
        }
    }
}
