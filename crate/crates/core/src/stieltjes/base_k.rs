use rug::{Float, Rational};

use super::taylor::log_power_coefficients;
use super::{check_a, closed_part, ln_pow, to_partials, Method, PartialValue, StieltjesQuery, StieltjesValue};
use crate::error::{Error, Result};
use crate::mpcore::bernoulli::even_bernoulli;
use crate::mpcore::{
    expected_outer_terms, sum_geometric_outer, sum_geometric_outer_traced, CompensatedSum, EvalConfig,
    SumReport, Tolerance,
};

const MAX_TAIL_ORDER: usize = 512;
/// Consecutive correction terms that must all fall below tolerance.
const SETTLED_TERMS: usize = 3;

/// How the per-block sum over `j` is arranged.
///
/// With `F_n(t) = ln^ℓ(a + t/k^n)/(t + a k^n)`:
///
/// * `Extracted`: `γ_ℓ(a) = ln^ℓ a/a - ln^{ℓ+1}a/(ℓ+1) - Σ_{n≥0} [ (1/k) Σ_{m=1}^{k-1} F_n(m/k)
///   + Σ_{j≥1} { (1/k - 1) F_n(j) + (1/k) Σ_{m=1}^{k-1} F_n(j + m/k) } ]`
/// * `Symmetric`: `γ_ℓ(a) = ½ ln^ℓ a/a - ln^{ℓ+1}a/(ℓ+1) - Σ_{n≥0} Σ_{j≥0}
///   { ½(1/k - 1)[F_n(j) + F_n(j+1)] + (1/k) Σ_{m=1}^{k-1} F_n(j + m/k) }`
///
/// The symmetric arrangement is the difference of a step-`1/k` and a step-1
/// trapezoid rule applied to `F_n`; pulling its `j = 0` boundary terms out
/// gives the extracted one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Form {
    Extracted,
    Symmetric,
}

/// `γ_ℓ(a)` from the base-`k` double series, whose outer blocks shrink like `k^-n`.
///
/// The inner sum runs over groups of `k` consecutive grid points; past
/// `j = J` the group sum is replaced by its Euler–Maclaurin expansion
/// `-Σ_p B_{2p} (k^{-2p} - 1)/(2p)! F_n^{(2p-1)}(J)`, with `J + a k^n` large
/// enough that the expansion converges below the inner tolerance.
///
/// With `cfg.cross_check` the symmetric arrangement is evaluated as well and
/// the two must agree within their combined bounds.
pub fn stieltjes_base_k(
    ell: u32,
    a: &Float,
    k: u32,
    tol: &Tolerance,
    cfg: &EvalConfig,
) -> Result<StieltjesValue> {
    let query = StieltjesQuery::new(ell, cfg.prec.float(a), Method::BaseK, k)?;
    let series = BaseK::new(&query, cfg);
    let report = series.evaluate(Form::Extracted, tol, false)?.0;
    if cfg.cross_check {
        let other = series.evaluate(Form::Symmetric, tol, false)?.0;
        compare("base-k arrangements", &report, &other, cfg)?;
    }
    Ok(StieltjesValue { query, report })
}

/// `γ_ℓ(a)` from the symmetric arrangement only.
pub fn stieltjes_base_k_cross_form(
    ell: u32,
    a: &Float,
    k: u32,
    tol: &Tolerance,
    cfg: &EvalConfig,
) -> Result<StieltjesValue> {
    let query = StieltjesQuery::new(ell, cfg.prec.float(a), Method::BaseK, k)?;
    let report = BaseK::new(&query, cfg).evaluate(Form::Symmetric, tol, false)?.0;
    Ok(StieltjesValue { query, report })
}

pub(super) fn traced(
    query: &StieltjesQuery,
    tol: &Tolerance,
    cfg: &EvalConfig,
) -> Result<(StieltjesValue, Vec<PartialValue>)> {
    check_a(query.a())?;
    let (report, partials) = BaseK::new(query, cfg).evaluate(Form::Extracted, tol, true)?;
    Ok((
        StieltjesValue {
            query: query.clone(),
            report,
        },
        partials,
    ))
}

fn compare(what: &str, x: &SumReport, y: &SumReport, cfg: &EvalConfig) -> Result<()> {
    let bits = cfg.prec.bits();
    let diff = Float::with_val(bits, &x.value - &y.value).abs();
    let scale = Float::with_val(bits, x.value.abs_ref()).max(&Float::with_val(bits, 1));
    let rounding = Float::with_val(bits, scale >> (bits - 16));
    let allowed = Float::with_val(bits, &x.error_bound + &y.error_bound) + rounding;
    if diff > allowed {
        return Err(Error::CrossCheckMismatch {
            what: what.to_string(),
            difference: format!("{:.3e}", diff.to_f64()),
            allowed: format!("{:.3e}", allowed.to_f64()),
        });
    }
    Ok(())
}

struct BaseK<'a> {
    ell: u32,
    a: Float,
    k: u32,
    cfg: &'a EvalConfig,
    bits: u32,
}

impl<'a> BaseK<'a> {
    fn new(query: &StieltjesQuery, cfg: &'a EvalConfig) -> Self {
        BaseK {
            ell: query.ell(),
            a: cfg.prec.float(query.a()),
            k: query.k(),
            cfg,
            bits: cfg.prec.bits(),
        }
    }

    fn evaluate(&self, form: Form, tol: &Tolerance, trace: bool) -> Result<(SumReport, Vec<PartialValue>)> {
        let weight = match form {
            Form::Extracted => 1.0,
            Form::Symmetric => 0.5,
        };
        let closed = closed_part(self.ell, &self.a, weight);
        let ratio = 1.0 / f64::from(self.k);
        let inner_tol = tol.split(2.0 * expected_outer_terms(tol, ratio) as f64);
        let term = |n: u64| self.block(n, form, &inner_tol);
        let (mut report, partials) = if trace {
            let (r, steps) = sum_geometric_outer_traced(term, 0, tol, &self.cfg.prec, &self.cfg.limits)?;
            let p = to_partials(&closed, -1, &steps);
            (r, p)
        } else {
            (
                sum_geometric_outer(term, 0, tol, &self.cfg.prec, &self.cfg.limits)?,
                Vec::new(),
            )
        };
        report.value = -report.value;
        report.value += &closed;
        Ok((report, partials))
    }

    /// `F_n(numer/k) = ln^ℓ(y)/(k^n y)` with `y = a + numer/k^{n+1}`.
    fn f(&self, scale: &Scale, numer: u64) -> Float {
        let mut y = Float::with_val(self.bits, numer);
        y /= &scale.k_pow_next;
        y += &self.a;
        let denom = Float::with_val(self.bits, &y * &scale.k_pow);
        ln_pow(&y, self.ell) / denom
    }

    /// `Σ_{m=0}^{k-1} F_n(j + m/k)`
    fn fine_points(&self, scale: &Scale, j: u64) -> Float {
        let k = u64::from(self.k);
        let mut acc = Float::new(self.bits);
        for m in 0..k {
            acc += self.f(scale, j * k + m);
        }
        acc
    }

    fn block(&self, n: u64, form: Form, tol: &Tolerance) -> Result<SumReport> {
        let scale = Scale::new(&self.a, self.k, n, self.bits);
        let k = u64::from(self.k);
        let kf = f64::from(self.k);
        let mut acc = CompensatedSum::new(self.bits);
        let mut terms = 0u64;

        let first_group = match form {
            Form::Extracted => {
                // (1/k) Σ_{m=1}^{k-1} F_n(m/k)
                let mut boundary = Float::new(self.bits);
                for m in 1..k {
                    boundary += self.f(&scale, m);
                }
                acc.add(&(boundary / self.k));
                terms += k - 1;
                1
            }
            Form::Symmetric => 0,
        };

        let digits = (1.0 / tol.to_f64()).ln().max(1.0);
        let reach = 8.0 + digits / (2.0 * std::f64::consts::PI);
        let offset = match form {
            Form::Extracted => 0,
            Form::Symmetric => 3,
        };
        let mut cut = ((reach - scale.a_k_pow).ceil().max(1.0) as u64).max(first_group) + offset;

        let mut next = first_group;
        let mut carry: Option<Float> = None; // F_n(next), shared by neighbouring symmetric groups
        loop {
            while next < cut {
                let fine = self.fine_points(&scale, next);
                terms += k;
                let integer_point = self.f(&scale, next * k);
                let group = match form {
                    // (1/k) Σ_{m=0}^{k-1} F(j + m/k) - F(j)
                    Form::Extracted => fine / self.k - integer_point,
                    // (1/k) Σ_{m=0}^{k-1} F(j + m/k) - ½ (1 + 1/k)·F(j) … folded below
                    Form::Symmetric => {
                        let left = carry.take().unwrap_or(integer_point);
                        let right = self.f(&scale, (next + 1) * k);
                        terms += 1;
                        let ends = Float::with_val(self.bits, &left + &right);
                        carry = Some(right);
                        // ½(1/k - 1)(F(j) + F(j+1)) + (1/k)(Σ_{m=0}^{k-1} F(j+m/k) - F(j))
                        let mut g = ends * ((1.0 / kf - 1.0) / 2.0);
                        g += Float::with_val(self.bits, &fine - &left) / self.k;
                        g
                    }
                };
                acc.add(&group);
                next += 1;
            }

            if let Some((tail, bound)) = self.trapezoid_gap_tail(&scale, cut, tol) {
                let mut value = acc.value();
                value += tail;
                if form == Form::Extracted {
                    // Σ_{j≥J} G(j) = E(J) + (1-k)/(2k) · F(J)
                    let f_cut = self.f(&scale, cut * k);
                    terms += 1;
                    value += f_cut * ((1.0 - kf) / (2.0 * kf));
                }
                return Ok(SumReport {
                    value,
                    error_bound: bound,
                    outer_terms: 0,
                    inner_terms_total: terms,
                    decay_ratio: f64::NAN,
                });
            }
            cut *= 2;
            if terms + k * cut > self.cfg.limits.max_inner_terms {
                return Err(Error::non_convergence("base-k inner sum", terms));
            }
        }
    }

    /// `E(J) = -Σ_{p≥1} B_{2p}(k^{-2p} - 1)/(2p)! · F_n^{(2p-1)}(J)`, the
    /// Euler–Maclaurin expansion of the step-`1/k` minus step-1 trapezoid sums
    /// of `F_n` over `[J, ∞)`. `F_n^{(q)}(J) = q! d_q / R^{q+1}` with
    /// `R = J + a k^n`.
    fn trapezoid_gap_tail(&self, scale: &Scale, cut: u64, tol: &Tolerance) -> Option<(Float, Float)> {
        let bits = self.bits;
        let mut y = Float::with_val(bits, cut);
        y /= &scale.k_pow;
        y += &self.a;
        let radius = Float::with_val(bits, &y * &scale.k_pow);
        let inv_r2 = Float::with_val(bits, radius.square_ref()).recip();
        let ln_y = Float::with_val(bits, y.ln_ref());
        let inv_k2 = Float::with_val(bits, self.k * self.k).recip();

        let mut order = 16usize;
        while order <= MAX_TAIL_ORDER {
            let d = log_power_coefficients(self.ell, &ln_y, order);
            let bern: Vec<Rational> = even_bernoulli(order / 2 + 1);
            let mut sum = Float::new(bits);
            let mut r_pow = inv_r2.clone(); // R^{-2p}
            let mut k_pow = inv_k2.clone(); // k^{-2p}
            let mut peak = Float::new(bits);
            let mut settled: Vec<Float> = Vec::with_capacity(SETTLED_TERMS);
            let mut pending = Float::new(bits);
            let mut p = 1usize;
            while 2 * p - 1 <= order {
                let mut term = Float::with_val(bits, &k_pow - 1u32);
                term *= &bern[p - 1];
                term *= &d[2 * p - 1];
                term *= &r_pow;
                term /= (2 * p) as u32;
                term = -term;
                let mag = Float::with_val(bits, term.abs_ref());
                if p > SETTLED_TERMS && mag > peak {
                    return None;
                }
                if mag > peak {
                    peak = mag.clone();
                }
                if mag <= *tol.abs_tol() {
                    if settled.is_empty() {
                        pending = sum.clone();
                    }
                    settled.push(mag);
                    if settled.len() == SETTLED_TERMS {
                        let mut bound = Float::new(bits);
                        for m in &settled {
                            bound += m;
                        }
                        if bound <= *tol.abs_tol() {
                            return Some((pending, bound));
                        }
                    }
                } else {
                    settled.clear();
                }
                sum += term;
                r_pow *= &inv_r2;
                k_pow *= &inv_k2;
                p += 1;
            }
            order *= 2;
        }
        None
    }
}

/// Powers of `k` for one outer block.
struct Scale {
    k_pow: Float,
    k_pow_next: Float,
    a_k_pow: f64,
}

impl Scale {
    fn new(a: &Float, k: u32, n: u64, bits: u32) -> Self {
        let k_pow = Float::with_val(bits, rug::ops::Pow::pow(Float::with_val(bits, k), n as u32));
        let k_pow_next = Float::with_val(bits, &k_pow * k);
        let a_k_pow = Float::with_val(bits, a * &k_pow).to_f64();
        Scale {
            k_pow,
            k_pow_next,
            a_k_pow,
        }
    }
}
