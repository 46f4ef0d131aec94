//! Even-index Bernoulli numbers via the Akiyama–Tanigawa transform.

use std::sync::{Mutex, OnceLock};

use rug::Rational;

fn cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// `B_0, B_1, …, B_n` with the `B_1 = +1/2` convention of the transform.
fn akiyama_tanigawa(n: usize) -> Vec<Rational> {
    let mut row: Vec<Rational> = Vec::with_capacity(n + 1);
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        row.push(Rational::from((1, m as u32 + 1)));
        for j in (1..=m).rev() {
            let diff = Rational::from(&row[j - 1] - &row[j]);
            row[j - 1] = diff * j as u32;
        }
        out.push(row[0].clone());
    }
    out
}

/// `B_{2p}` for `p = 1..=count`, exact.
pub fn even_bernoulli(count: usize) -> Vec<Rational> {
    let mut cached = cache().lock().unwrap_or_else(|e| e.into_inner());
    if cached.len() < count {
        let all = akiyama_tanigawa(2 * count);
        *cached = (1..=count).map(|p| all[2 * p].clone()).collect();
    }
    cached[..count].to_vec()
}
