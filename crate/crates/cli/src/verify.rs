use std::io::Write;

use rug::float::Constant;
use rug::Float;
use stieltjes_core::oracle::{digamma_ref, hurwitz_zeta_ref, stieltjes_ref, EMConfig};
use stieltjes_core::stieltjes::{
    euler_gamma_telescope, gamma0_telescope, stieltjes_base_k, stieltjes_base_k_cross_form, stieltjes_dyadic,
};
use stieltjes_core::zeta::{
    brun_beta, brun_zeta, dirichlet_l, hurwitz_zeta_series, identity_residuals, DirichletCharacter, ZetaArgs,
};
use stieltjes_core::{EvalConfig, Result as CoreResult, SumReport, Tolerance};

use crate::args::{Grid, VerifyArgs};
use crate::{output, parse_real, settings, Failure};

/// One named comparison: passes when `residual ≤ allowed`.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub outcome: Result<(Float, Float), String>,
}

impl Check {
    fn passes(&self, perturb: &Float) -> bool {
        match &self.outcome {
            Ok((residual, allowed)) => Float::with_val(residual.prec(), residual + perturb) <= *allowed,
            Err(_) => false,
        }
    }
}

/// Parameter grids for one verification run.
#[derive(Debug, Clone)]
pub struct GridSpec {
    pub ells: Vec<u32>,
    pub a: Vec<&'static str>,
    pub k: Vec<u32>,
    pub s: Vec<&'static str>,
    pub hurwitz_a: Vec<&'static str>,
    pub brun_s: Vec<&'static str>,
}

impl GridSpec {
    pub fn new(grid: Grid) -> Self {
        match grid {
            Grid::Small => GridSpec {
                ells: vec![0, 1, 2],
                a: vec!["1", "1.5"],
                k: vec![2, 3],
                s: vec!["2", "3"],
                hurwitz_a: vec!["0.5", "1"],
                brun_s: vec!["1.25", "2", "3"],
            },
            Grid::Full => GridSpec {
                ells: (0..=5).collect(),
                a: vec!["0.5", "1", "1.5", "2", "e"],
                k: vec![2, 3, 5],
                s: vec!["1.25", "1.5", "2", "3", "5"],
                hurwitz_a: vec!["0.25", "0.5", "1", "2"],
                brun_s: vec!["1.25", "1.5", "2", "3", "5"],
            },
        }
    }
}

pub fn run(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let (cfg, tol) = settings(&args.precision)?;
    let perturb = match &args.perturb {
        Some(text) => parse_real("perturb", text, &cfg)?,
        None => Float::new(cfg.prec.bits()),
    };
    let checks = run_checks(&GridSpec::new(args.grid), &tol, &cfg)?;
    let mut failed = 0;
    for c in &checks {
        let pass = c.passes(&perturb);
        failed += usize::from(!pass);
        let status = if pass { "PASS" } else { "FAIL" };
        match &c.outcome {
            Ok((residual, allowed)) => writeln!(
                out,
                "{status}  {:<44} residual={:<10} allowed={}",
                c.name,
                output::bound(residual),
                output::scientific(allowed)
            )?,
            Err(message) => writeln!(out, "{status}  {:<44} error: {message}", c.name)?,
        }
    }
    writeln!(out, "{} of {} checks passed", checks.len() - failed, checks.len())?;
    if failed > 0 {
        return Err(Failure::ChecksFailed {
            failed,
            total: checks.len(),
        });
    }
    Ok(())
}

fn abs_diff(x: &Float, y: &Float) -> Float {
    Float::with_val(x.prec(), x - y).abs()
}

fn combined(x: &SumReport, y: &SumReport) -> Float {
    Float::with_val(x.value.prec(), &x.error_bound + &y.error_bound)
}

fn check(name: String, f: impl FnOnce() -> CoreResult<(Float, Float)>) -> Check {
    Check {
        name,
        outcome: f().map_err(|e| e.to_string()),
    }
}

/// Runs every check over the grid. Only malformed grid entries abort the
/// run; numerical failures are reported as failing checks.
pub fn run_checks(grid: &GridSpec, tol: &Tolerance, cfg: &EvalConfig) -> Result<Vec<Check>, Failure> {
    let bits = cfg.prec.bits();
    let real = |text: &str| parse_real("grid", text, cfg);
    let tol_f = tol.abs_tol().clone();
    let one = cfg.prec.float(1);
    let mut checks = Vec::new();

    let minus_psi1 = -digamma_ref(&one, &cfg.prec)?;
    checks.push(check("euler-gamma dyadic vs oracle".into(), || {
        let v = stieltjes_dyadic(0, &one, tol, cfg)?.report.value;
        Ok((abs_diff(&v, &minus_psi1), tol_f.clone()))
    }));
    checks.push(check("euler-gamma telescope vs oracle".into(), || {
        let v = euler_gamma_telescope(tol, cfg)?.value;
        Ok((abs_diff(&v, &minus_psi1), tol_f.clone()))
    }));
    checks.push(check("euler-gamma 1-beta(1) vs oracle".into(), || {
        let v = Float::with_val(bits, 1u32 - brun_beta(&one, tol, cfg)?.value);
        Ok((abs_diff(&v, &minus_psi1), tol_f.clone()))
    }));

    for &ell in &grid.ells {
        for &a_text in &grid.a {
            let a = real(a_text)?;
            let dyadic = stieltjes_dyadic(ell, &a, tol, cfg);
            checks.push(check(format!("stieltjes ell={ell} a={a_text} vs oracle"), || {
                let d = dyadic.clone()?.report;
                Ok((abs_diff(&d.value, &stieltjes_ref(ell, &a, &cfg.prec)?), tol_f.clone()))
            }));
            for &k in &grid.k {
                checks.push(check(format!("stieltjes ell={ell} a={a_text} base-{k} vs dyadic"), || {
                    let d = dyadic.clone()?.report;
                    let b = stieltjes_base_k(ell, &a, k, tol, cfg)?.report;
                    Ok((abs_diff(&b.value, &d.value), combined(&b, &d)))
                }));
                checks.push(check(format!("stieltjes ell={ell} a={a_text} base-{k} forms"), || {
                    let b = stieltjes_base_k(ell, &a, k, tol, cfg)?.report;
                    let c = stieltjes_base_k_cross_form(ell, &a, k, tol, cfg)?.report;
                    Ok((abs_diff(&b.value, &c.value), combined(&b, &c)))
                }));
            }
        }
    }

    for &a_text in &grid.a {
        let a = real(a_text)?;
        checks.push(check(format!("gamma0 telescope a={a_text} vs digamma"), || {
            let t = gamma0_telescope(&a, tol, cfg)?;
            let psi = digamma_ref(&a, &cfg.prec)?;
            Ok((Float::with_val(bits, &t.value + &psi).abs(), t.error_bound.clone()))
        }));
    }

    let em = EMConfig::default();
    for &s_text in &grid.s {
        let s = real(s_text)?;
        for &a_text in &grid.hurwitz_a {
            let a = real(a_text)?;
            checks.push(check(format!("hurwitz s={s_text} a={a_text} vs oracle"), || {
                let z = hurwitz_zeta_series(&ZetaArgs::new(s.clone(), a.clone())?, tol, cfg)?;
                let o = hurwitz_zeta_ref(&s, &a, &em, &cfg.prec)?;
                Ok((abs_diff(&z.value, &o.value), tol_f.clone()))
            }));
        }
    }

    let s_grid: Vec<Float> = grid.s.iter().map(|t| real(t)).collect::<Result<_, _>>()?;
    let a_grid: Vec<Float> = grid.hurwitz_a.iter().map(|t| real(t)).collect::<Result<_, _>>()?;
    match identity_residuals(&s_grid, &a_grid, tol, cfg) {
        Ok(residuals) => {
            for r in residuals {
                let at = match &r.a {
                    Some(a) => format!("s={} a={}", short(&r.s), short(a)),
                    None => format!("s={}", short(&r.s)),
                };
                checks.push(Check {
                    name: format!("identity {} {at}", r.identity),
                    outcome: Ok((r.residual, r.threshold)),
                });
            }
        }
        Err(e) => checks.push(Check {
            name: "identity suite".into(),
            outcome: Err(e.to_string()),
        }),
    }

    for &s_text in &grid.brun_s {
        let s = real(s_text)?;
        checks.push(check(format!("brun s={s_text} vs hurwitz a=1"), || {
            let b = brun_zeta(&s, tol, cfg)?;
            let z = hurwitz_zeta_series(&ZetaArgs::new(s.clone(), one.clone())?, tol, cfg)?;
            Ok((abs_diff(&b.value, &z.value), combined(&b, &z)))
        }));
    }

    let two = cfg.prec.float(2);
    checks.push(check("dirichlet mod 4 s=2 vs oracle".into(), || {
        let chi = DirichletCharacter::new(vec![1, 0, -1, 0])?;
        let l = dirichlet_l(&two, &chi, tol, cfg)?;
        let q1 = hurwitz_zeta_ref(&two, &cfg.prec.float(0.25), &em, &cfg.prec)?.value;
        let q3 = hurwitz_zeta_ref(&two, &cfg.prec.float(0.75), &em, &cfg.prec)?.value;
        let catalan = Float::with_val(bits, &q1 - &q3) / 16u32;
        Ok((abs_diff(&l.value, &catalan), tol_f.clone()))
    }));
    checks.push(check("dirichlet principal mod 2 s=2 vs pi^2/8".into(), || {
        let chi = DirichletCharacter::principal(2)?;
        let l = dirichlet_l(&two, &chi, tol, cfg)?;
        let pi2_8 = Float::with_val(bits, Constant::Pi).square() / 8u32;
        Ok((abs_diff(&l.value, &pi2_8), tol_f.clone()))
    }));

    Ok(checks)
}

fn short(x: &Float) -> String {
    output::decimal(x, 6).trim_end_matches('0').trim_end_matches('.').to_string()
}
