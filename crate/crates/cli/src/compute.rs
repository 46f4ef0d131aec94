use std::io::Write;
use std::time::Instant;

use serde::Serialize;
use stieltjes_core::stieltjes::{self, Method, StieltjesQuery};
use stieltjes_core::zeta::{self, DirichletCharacter, ZetaArgs};
use stieltjes_core::{EvalConfig, SumReport, Tolerance};

use crate::args::{ComputeArgs, Format, MethodArg, Quantity};
use crate::{output, parse_real, settings, Failure};

/// One computed value as printed by `compute`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComputeRecord {
    pub quantity: String,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    pub value: String,
    pub error_bound: String,
    pub outer_terms: usize,
    pub inner_terms_total: u64,
    pub elapsed_ms: u64,
}

pub fn run(args: &ComputeArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let (cfg, tol) = settings(&args.precision)?;
    let start = Instant::now();
    let (method, report) = evaluate(args, &cfg, &tol)?;
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let digits = cfg.prec.out_digits();
    let record = ComputeRecord {
        quantity: quantity_name(args.quantity).to_string(),
        method: method.to_string(),
        ell: if uses_ell(args.quantity) { args.ell } else { None },
        a: args.a.clone().filter(|_| uses_a(args.quantity)),
        s: args.s.clone().filter(|_| uses_s(args.quantity)),
        k: (method == "base-k").then_some(args.k),
        value: output::decimal(&report.value, digits),
        error_bound: output::bound(&report.error_bound),
        outer_terms: report.outer_terms,
        inner_terms_total: report.inner_terms_total,
        elapsed_ms,
    };
    match args.format {
        Format::Json => {
            let text = serde_json::to_string(&record).map_err(|e| Failure::Usage(e.to_string()))?;
            writeln!(out, "{text}")?;
        }
        Format::Csv => {
            writeln!(out, "quantity,method,ell,a,s,k,value,error_bound,outer_terms,inner_terms_total,elapsed_ms")?;
            let opt = |x: &Option<String>| x.clone().unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                record.quantity,
                record.method,
                record.ell.map(|e| e.to_string()).unwrap_or_default(),
                opt(&record.a),
                opt(&record.s),
                record.k.map(|k| k.to_string()).unwrap_or_default(),
                record.value,
                record.error_bound,
                record.outer_terms,
                record.inner_terms_total,
                record.elapsed_ms
            )?;
        }
    }
    Ok(())
}

pub fn quantity_name(q: Quantity) -> &'static str {
    match q {
        Quantity::Stieltjes => "stieltjes",
        Quantity::Zeta => "zeta",
        Quantity::BrunBeta => "brun-beta",
        Quantity::DirichletL => "dirichlet-l",
        Quantity::Gamma0Telescope => "gamma0-telescope",
        Quantity::EulerGamma => "euler-gamma",
    }
}

fn uses_ell(q: Quantity) -> bool {
    q == Quantity::Stieltjes
}

fn uses_a(q: Quantity) -> bool {
    matches!(q, Quantity::Stieltjes | Quantity::Zeta | Quantity::Gamma0Telescope)
}

fn uses_s(q: Quantity) -> bool {
    matches!(q, Quantity::Zeta | Quantity::BrunBeta | Quantity::DirichletL)
}

pub fn method_name(m: MethodArg) -> &'static str {
    match m {
        MethodArg::Dyadic => "dyadic",
        MethodArg::BaseK => "base-k",
        MethodArg::PsiTelescope => "psi-telescope",
    }
}

pub(crate) fn core_method(m: MethodArg) -> Method {
    match m {
        MethodArg::Dyadic => Method::Dyadic,
        MethodArg::BaseK => Method::BaseK,
        MethodArg::PsiTelescope => Method::PsiTelescope,
    }
}

fn required<'a>(value: &'a Option<String>, flag: &str, q: Quantity) -> Result<&'a str, Failure> {
    value
        .as_deref()
        .ok_or_else(|| Failure::Usage(format!("--{flag} is required for --quantity {}", quantity_name(q))))
}

fn reject_method(args: &ComputeArgs) -> Result<(), Failure> {
    if args.method.is_some() {
        return Err(Failure::Usage(format!(
            "--method does not apply to --quantity {}",
            quantity_name(args.quantity)
        )));
    }
    Ok(())
}

fn evaluate(args: &ComputeArgs, cfg: &EvalConfig, tol: &Tolerance) -> Result<(&'static str, SumReport), Failure> {
    let q = args.quantity;
    match q {
        Quantity::Stieltjes => {
            let ell = args
                .ell
                .ok_or_else(|| Failure::Usage("--ell is required for --quantity stieltjes".into()))?;
            let a = parse_real("a", required(&args.a, "a", q)?, cfg)?;
            let method = args.method.unwrap_or(MethodArg::Dyadic);
            let query = StieltjesQuery::new(ell, a, core_method(method), args.k)?;
            Ok((method_name(method), stieltjes::evaluate(&query, tol, cfg)?.report))
        }
        Quantity::EulerGamma => {
            let method = args.method.unwrap_or(MethodArg::PsiTelescope);
            let report = match method {
                MethodArg::PsiTelescope => stieltjes::euler_gamma_telescope(tol, cfg)?,
                _ => {
                    let query = StieltjesQuery::new(0, cfg.prec.float(1), core_method(method), args.k)?;
                    stieltjes::evaluate(&query, tol, cfg)?.report
                }
            };
            Ok((method_name(method), report))
        }
        Quantity::Gamma0Telescope => {
            if args.method.is_some_and(|m| m != MethodArg::PsiTelescope) {
                return Err(Failure::Usage("gamma0-telescope only supports --method psi-telescope".into()));
            }
            let a = parse_real("a", required(&args.a, "a", q)?, cfg)?;
            Ok(("psi-telescope", stieltjes::gamma0_telescope(&a, tol, cfg)?))
        }
        Quantity::Zeta => {
            reject_method(args)?;
            let s = parse_real("s", required(&args.s, "s", q)?, cfg)?;
            let a = match &args.a {
                Some(text) => parse_real("a", text, cfg)?,
                None => cfg.prec.float(1),
            };
            Ok(("dyadic", zeta::hurwitz_zeta_series(&ZetaArgs::new(s, a)?, tol, cfg)?))
        }
        Quantity::BrunBeta => {
            reject_method(args)?;
            let s = parse_real("s", required(&args.s, "s", q)?, cfg)?;
            Ok(("brun", zeta::brun_beta(&s, tol, cfg)?))
        }
        Quantity::DirichletL => {
            reject_method(args)?;
            let s = parse_real("s", required(&args.s, "s", q)?, cfg)?;
            let chi = parse_character(args)?;
            Ok(("hurwitz-combination", zeta::dirichlet_l(&s, &chi, tol, cfg)?))
        }
    }
}

fn parse_character(args: &ComputeArgs) -> Result<DirichletCharacter, Failure> {
    let values = match &args.chi {
        Some(table) => table
            .split(',')
            .map(|v| v.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| Failure::Usage(format!("cannot parse --chi {table:?} as integers")))?,
        None => {
            let m = args
                .modulus
                .ok_or_else(|| Failure::Usage("dirichlet-l needs --chi or --modulus".into()))?;
            return Ok(DirichletCharacter::principal(m)?);
        }
    };
    if let Some(m) = args.modulus {
        if m as usize != values.len() {
            return Err(Failure::Usage(format!(
                "--modulus {m} does not match the {} entries of --chi",
                values.len()
            )));
        }
    }
    Ok(DirichletCharacter::new(values)?)
}
