use rug::Float;

use super::{CompensatedSum, Limits, Precision, SumReport, Tolerance};
use crate::error::{Error, Result};

const INITIAL_WINDOW: usize = 16;
/// Fewest differences a level must show before its remainder bound is trusted.
const MIN_DIFFS: usize = 4;
/// Bits of working precision given up to rounding in the averaged partial sums.
const NOISE_BITS: u32 = 8;

/// Sums the alternating series `Σ_{j ≥ first} term(j)`.
///
/// Terms with index below `monotone_from` are added directly, two at a time.
/// From there on the terms must strictly alternate in sign and the tail is
/// accelerated by repeated averaging of partial sums (the Euler transform).
/// Averaging level `p` of the partial sums is again an alternating sequence;
/// the lowest level whose differences are observed to alternate and shrink
/// yields a Leibniz bound on its last entry. The bound is the next-to-last
/// difference rather than the last one, so an accidental near-zero difference
/// at the window edge cannot understate it. Level 0 is the plain
/// alternating-series remainder.
///
/// The reported bound relies on the shrinking pattern continuing past the
/// observed window, which holds for the smooth, eventually monotone summands
/// this crate feeds in.
pub fn sum_alternating<F>(
    mut term: F,
    first: u64,
    monotone_from: u64,
    tol: &Tolerance,
    prec: &Precision,
    limits: &Limits,
) -> Result<SumReport>
where
    F: FnMut(u64) -> Float,
{
    let bits = prec.bits();
    let onset = monotone_from.max(first);
    if onset - first > limits.max_inner_terms {
        return Err(Error::non_convergence(
            "alternating series (direct head)",
            onset - first,
        ));
    }

    let mut head = CompensatedSum::new(bits);
    let mut j = first;
    while j < onset {
        let mut pair = term(j);
        if j + 1 < onset {
            pair += term(j + 1);
            j += 2;
        } else {
            j += 1;
        }
        head.add(&pair);
    }
    let mut evaluated = onset - first;

    // Terms from `start` onward, not yet folded into `head`.
    let mut start = onset;
    let mut window: Vec<Float> = Vec::with_capacity(INITIAL_WINDOW);
    let mut width = INITIAL_WINDOW;
    let mut last_sign: Option<bool> = None;

    loop {
        while window.len() < width {
            if evaluated >= limits.max_inner_terms {
                return Err(Error::non_convergence("alternating series", evaluated));
            }
            let index = start + window.len() as u64;
            let t = term(index);
            evaluated += 1;
            if t.is_zero() {
                // a zero occupies its slot in the sign pattern
                last_sign = last_sign.map(|s| !s);
            } else {
                let negative = t.is_sign_negative();
                if last_sign == Some(negative) {
                    return Err(Error::InvalidSequence { index });
                }
                last_sign = Some(negative);
            }
            window.push(t);
        }

        if let Some((tail, bound)) = accelerated_tail(&window, tol, bits) {
            let mut value = head.value();
            value += &tail;
            return Ok(SumReport {
                value,
                error_bound: bound,
                outer_terms: 0,
                inner_terms_total: evaluated,
                decay_ratio: f64::NAN,
            });
        }

        // Move the acceleration start forward: fold the front half (an even
        // number of terms) into the head and widen the window.
        let fold = (window.len() / 2) & !1;
        for pair in window[..fold].chunks(2) {
            let s = Float::with_val(bits, &pair[0] + &pair[1]);
            head.add(&s);
        }
        window.drain(..fold);
        start += fold as u64;
        width *= 2;
    }
}

/// Euler-transformed value of `Σ window[i]` continued to infinity, with bound.
fn accelerated_tail(window: &[Float], tol: &Tolerance, bits: u32) -> Option<(Float, Float)> {
    let mut level: Vec<Float> = Vec::with_capacity(window.len() + 1);
    level.push(Float::new(bits));
    for t in window {
        let next = Float::with_val(bits, level.last().unwrap() + t);
        level.push(next);
    }
    let scale = level
        .iter()
        .map(|v| v.clone().abs())
        .fold(Float::new(bits), |m, v| if v > m { v } else { m });
    let noise = Float::with_val(bits, &scale >> (bits - NOISE_BITS));

    let max_level = (window.len() * 3 / 4).min(window.len().saturating_sub(MIN_DIFFS));
    for p in 0..=max_level {
        if let Some(bound) = level_bound(&level, &noise) {
            if bound <= *tol.abs_tol() {
                return Some((level.last().unwrap().clone(), bound));
            }
        }
        if p == max_level {
            break;
        }
        level = level
            .windows(2)
            .map(|w| Float::with_val(bits, &w[0] + &w[1]) >> 1u32)
            .collect();
    }
    None
}

/// Remainder bound of one averaging level, if its trailing differences alternate
/// in sign with nonincreasing magnitude (differences under `noise` count as zero).
fn level_bound(level: &[Float], noise: &Float) -> Option<Float> {
    let bits = noise.prec();
    let diffs: Vec<Float> = level
        .windows(2)
        .map(|w| Float::with_val(bits, &w[1] - &w[0]))
        .collect();
    if diffs.len() < MIN_DIFFS {
        return None;
    }
    let checked = &diffs[diffs.len() - (diffs.len() / 2).max(MIN_DIFFS)..];
    for w in checked.windows(2) {
        let (d0, d1) = (&w[0], &w[1]);
        let small0 = d0.cmp_abs(noise) != Some(std::cmp::Ordering::Greater);
        let small1 = d1.cmp_abs(noise) != Some(std::cmp::Ordering::Greater);
        match (small0, small1) {
            (_, true) => {}
            (true, false) => return None,
            (false, false) => {
                if d0.is_sign_negative() == d1.is_sign_negative() {
                    return None;
                }
                if d1.cmp_abs(d0) == Some(std::cmp::Ordering::Greater) {
                    return None;
                }
            }
        }
    }
    let guard = diffs[diffs.len() - 2].clone().abs();
    Some(if guard > *noise { guard } else { noise.clone() })
}
