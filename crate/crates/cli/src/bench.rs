use std::io::Write;

use rug::Float;
use serde::Serialize;
use stieltjes_core::stieltjes::{self, PartialValue, StieltjesQuery};
use stieltjes_core::zeta::{hurwitz_zeta_series, hurwitz_zeta_traced, ZetaArgs};
use stieltjes_core::{EvalConfig, Result as CoreResult, Tolerance};

use crate::args::{BenchArgs, Format, MethodArg, Quantity};
use crate::compute::{core_method, method_name};
use crate::{output, parse_real, settings, Failure};

pub const CSV_HEADER: &str = "method,ell,a,k,n,partial_value,abs_error,inner_terms";

/// Leading rows left out of the decay fit and the monotonicity check.
const SETTLING_ROWS: usize = 3;
/// The reference value is computed this much more tightly than the profile.
const REFERENCE_FACTOR: f64 = 1e6;

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileRow {
    pub n: u64,
    pub partial_value: Float,
    /// `|partial_value - reference|`
    pub abs_error: Float,
    /// Inner terms used up to and including block `n`.
    pub inner_terms: u64,
}

/// Running values of one series after each outer block.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceProfile {
    pub method: String,
    pub ell: Option<u32>,
    pub a: String,
    pub k: u32,
    pub s: Option<String>,
    pub rows: Vec<ProfileRow>,
}

impl ConvergenceProfile {
    /// Profile of `γ_ℓ(a)`; errors are measured against a run at a tolerance
    /// [`REFERENCE_FACTOR`] times smaller.
    pub fn stieltjes(
        ell: u32,
        a: &Float,
        a_label: &str,
        method: MethodArg,
        k: u32,
        tol: &Tolerance,
        cfg: &EvalConfig,
    ) -> CoreResult<Self> {
        let k = if method == MethodArg::BaseK { k } else { 2 };
        let query = StieltjesQuery::new(ell, a.clone(), core_method(method), k)?;
        let (_, partials) = stieltjes::evaluate_traced(&query, tol, cfg)?;
        let reference = stieltjes::evaluate(&query, &tol.split(REFERENCE_FACTOR), cfg)?.report.value;
        Ok(ConvergenceProfile {
            method: method_name(method).to_string(),
            ell: Some(ell),
            a: a_label.to_string(),
            k,
            s: None,
            rows: rows(&partials, &reference),
        })
    }

    /// Profile of `ζ(s, a)` from its dyadic series.
    pub fn hurwitz(s: &Float, s_label: &str, a: &Float, a_label: &str, tol: &Tolerance, cfg: &EvalConfig) -> CoreResult<Self> {
        let args = ZetaArgs::new(s.clone(), a.clone())?;
        let (_, partials) = hurwitz_zeta_traced(&args, tol, cfg)?;
        let reference = hurwitz_zeta_series(&args, &tol.split(REFERENCE_FACTOR), cfg)?.value;
        Ok(ConvergenceProfile {
            method: "zeta".to_string(),
            ell: None,
            a: a_label.to_string(),
            k: 2,
            s: Some(s_label.to_string()),
            rows: rows(&partials, &reference),
        })
    }

    pub fn outer_terms(&self) -> usize {
        self.rows.len()
    }

    pub fn inner_terms_total(&self) -> u64 {
        self.rows.last().map_or(0, |r| r.inner_terms)
    }

    /// `exp` of the least-squares slope of `ln|error|` against `n`, skipping
    /// the first rows and exact zeros.
    pub fn fitted_ratio(&self) -> Option<f64> {
        let points: Vec<(f64, f64)> = self
            .rows
            .iter()
            .skip(SETTLING_ROWS)
            .filter(|r| !r.abs_error.is_zero())
            .map(|r| (r.n as f64, r.abs_error.clone().ln().to_f64()))
            .collect();
        if points.len() < 2 {
            return None;
        }
        let count = points.len() as f64;
        let mean_x = points.iter().map(|p| p.0).sum::<f64>() / count;
        let mean_y = points.iter().map(|p| p.1).sum::<f64>() / count;
        let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
        let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
        Some((sxy / sxx).exp())
    }

    /// Whether `abs_error` never grows by more than a factor of 2 from one
    /// row to the next once the first rows are past.
    pub fn is_settling(&self) -> bool {
        self.rows
            .iter()
            .skip(SETTLING_ROWS)
            .collect::<Vec<_>>()
            .windows(2)
            .all(|w| w[1].abs_error <= Float::with_val(w[0].abs_error.prec(), &w[0].abs_error * 2u32))
    }
}

fn rows(partials: &[PartialValue], reference: &Float) -> Vec<ProfileRow> {
    partials
        .iter()
        .map(|p| ProfileRow {
            n: p.index,
            partial_value: p.value.clone(),
            abs_error: Float::with_val(p.value.prec(), &p.value - reference).abs(),
            inner_terms: p.inner_terms,
        })
        .collect()
}

#[derive(Debug, Serialize)]
struct JsonRow {
    n: u64,
    partial_value: String,
    abs_error: String,
    inner_terms: u64,
}

#[derive(Debug, Serialize)]
struct JsonProfile {
    method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    ell: Option<u32>,
    a: String,
    k: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<String>,
    outer_terms: usize,
    inner_terms_total: u64,
    fitted_ratio: Option<f64>,
    rows: Vec<JsonRow>,
}

pub fn run(args: &BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let (cfg, tol) = settings(&args.precision)?;
    let a = parse_real("a", &args.a, &cfg)?;
    let mut profiles = Vec::new();
    match args.quantity {
        Quantity::Stieltjes => {
            if args.method == MethodArg::PsiTelescope && args.ell.iter().any(|&l| l != 0) {
                return Err(Failure::Usage("psi-telescope profiles need --ell 0".into()));
            }
            let ks: &[u32] = if args.method == MethodArg::BaseK { &args.k } else { &[2] };
            for &ell in &args.ell {
                for &k in ks {
                    profiles.push(ConvergenceProfile::stieltjes(ell, &a, &args.a, args.method, k, &tol, &cfg)?);
                }
            }
        }
        Quantity::Zeta => {
            for s_text in &args.s {
                let s = parse_real("s", s_text, &cfg)?;
                profiles.push(ConvergenceProfile::hurwitz(&s, s_text, &a, &args.a, &tol, &cfg)?);
            }
        }
        other => {
            return Err(Failure::Usage(format!(
                "bench supports --quantity stieltjes or zeta, not {}",
                crate::compute::quantity_name(other)
            )))
        }
    }

    let digits = cfg.prec.out_digits();
    match args.format {
        Format::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for p in &profiles {
                let ell = p.ell.map(|e| e.to_string()).unwrap_or_default();
                for r in &p.rows {
                    writeln!(
                        out,
                        "{},{},{},{},{},{},{},{}",
                        p.method,
                        ell,
                        p.a,
                        p.k,
                        r.n,
                        output::decimal(&r.partial_value, digits),
                        output::bound(&r.abs_error),
                        r.inner_terms
                    )?;
                }
            }
            for p in &profiles {
                writeln!(
                    err,
                    "# fit method={} ell={} a={} k={}{} outer_terms={} fitted_ratio={}",
                    p.method,
                    p.ell.map(|e| e.to_string()).unwrap_or_default(),
                    p.a,
                    p.k,
                    p.s.as_ref().map(|s| format!(" s={s}")).unwrap_or_default(),
                    p.outer_terms(),
                    p.fitted_ratio().map_or("n/a".to_string(), |r| format!("{r:.4}"))
                )?;
            }
        }
        Format::Json => {
            let json: Vec<JsonProfile> = profiles
                .iter()
                .map(|p| JsonProfile {
                    method: p.method.clone(),
                    ell: p.ell,
                    a: p.a.clone(),
                    k: p.k,
                    s: p.s.clone(),
                    outer_terms: p.outer_terms(),
                    inner_terms_total: p.inner_terms_total(),
                    fitted_ratio: p.fitted_ratio(),
                    rows: p
                        .rows
                        .iter()
                        .map(|r| JsonRow {
                            n: r.n,
                            partial_value: output::decimal(&r.partial_value, digits),
                            abs_error: output::bound(&r.abs_error),
                            inner_terms: r.inner_terms,
                        })
                        .collect(),
                })
                .collect();
            let text = serde_json::to_string(&serde_json::json!({ "profiles": json }))
                .map_err(|e| Failure::Usage(e.to_string()))?;
            writeln!(out, "{text}")?;
        }
    }
    Ok(())
}
