//! Agreement between independent routes to the same constants.

use rug::float::Constant;
use rug::{Float, Rational};
use stieltjes_core::oracle::{digamma_ref, stieltjes_ref};
use stieltjes_core::stieltjes::{
    euler_gamma_telescope, gamma0_telescope, stieltjes_base_k, stieltjes_base_k_cross_form, stieltjes_dyadic,
};
use stieltjes_core::zeta::brun_beta;
use stieltjes_core::{EvalConfig, SumReport, Tolerance};

const BITS: u32 = 256;

fn tol(x: f64) -> Tolerance {
    Tolerance::from_f64(x).unwrap()
}

fn grid_a(cfg: &EvalConfig) -> Vec<Float> {
    let e = Float::with_val(BITS, 1u32).exp();
    vec![cfg.prec.float(0.5), cfg.prec.float(1), cfg.prec.float(1.5), cfg.prec.float(2), e]
}

fn within_combined(x: &SumReport, y: &SumReport) -> bool {
    let diff = Float::with_val(BITS, &x.value - &y.value).abs();
    diff <= Float::with_val(BITS, &x.error_bound + &y.error_bound)
}

#[test]
fn euler_constant_three_ways() {
    let cfg = EvalConfig::default();
    let t = tol(1e-12);
    let reference = -digamma_ref(&cfg.prec.float(1), &cfg.prec).unwrap();
    let dyadic = stieltjes_dyadic(0, &cfg.prec.float(1), &t, &cfg).unwrap().report.value;
    let telescope = euler_gamma_telescope(&t, &cfg).unwrap().value;
    let brun = Float::with_val(BITS, 1u32 - brun_beta(&cfg.prec.float(1), &t, &cfg).unwrap().value);
    for v in [dyadic, telescope, brun] {
        assert!(Float::with_val(BITS, &v - &reference).abs() <= 1e-12);
    }
    let gamma = Float::with_val(BITS, Constant::Euler);
    assert!(Float::with_val(BITS, &reference - &gamma).abs() < 1e-70);
}

#[test]
fn dyadic_matches_limit_formula_oracle() {
    let cfg = EvalConfig::default();
    let t = tol(1e-10);
    for ell in 0..=5u32 {
        for a in grid_a(&cfg) {
            let series = stieltjes_dyadic(ell, &a, &t, &cfg).unwrap().report;
            let oracle = stieltjes_ref(ell, &a, &cfg.prec).unwrap();
            let err = Float::with_val(BITS, &series.value - &oracle).abs();
            assert!(err <= 1e-10, "ell={ell} a={}: {err:e}", a.to_f64());
            assert!(err <= series.error_bound, "ell={ell} a={}: {err:e} > bound", a.to_f64());
        }
    }
}

#[test]
fn base_k_matches_dyadic_and_both_arrangements_agree() {
    let cfg = EvalConfig::default();
    let t = tol(1e-10);
    for ell in 0..=5u32 {
        for a in grid_a(&cfg) {
            let dyadic = stieltjes_dyadic(ell, &a, &t, &cfg).unwrap().report;
            for k in [2u32, 3, 5] {
                let primary = stieltjes_base_k(ell, &a, k, &t, &cfg).unwrap().report;
                let symmetric = stieltjes_base_k_cross_form(ell, &a, k, &t, &cfg).unwrap().report;
                assert!(within_combined(&primary, &dyadic), "ell={ell} a={} k={k}", a.to_f64());
                assert!(within_combined(&primary, &symmetric), "ell={ell} a={} k={k}", a.to_f64());
            }
        }
    }
}

#[test]
fn gamma0_is_minus_digamma() {
    let cfg = EvalConfig::default();
    let t = tol(1e-12);
    for a in grid_a(&cfg) {
        let psi = digamma_ref(&a, &cfg.prec).unwrap();
        let dyadic = stieltjes_dyadic(0, &a, &t, &cfg).unwrap().report;
        assert!(Float::with_val(BITS, &dyadic.value + &psi).abs() <= dyadic.error_bound);
        let telescope = gamma0_telescope(&a, &t, &cfg).unwrap();
        assert!(Float::with_val(BITS, &telescope.value + &psi).abs() <= telescope.error_bound);
    }
}

#[test]
fn harmonic_numbers() {
    let cfg = EvalConfig::default();
    let t = tol(1e-12);
    let gamma = Float::with_val(BITS, Constant::Euler);
    let mut h = Rational::new();
    for n in 1..=10u32 {
        h += Rational::from((1, n));
        let expected = Float::with_val(BITS, &gamma - Float::with_val(BITS, &h));
        let r = stieltjes_dyadic(0, &cfg.prec.float(n + 1), &t, &cfg).unwrap().report;
        assert!(Float::with_val(BITS, &r.value - &expected).abs() <= r.error_bound, "n={n}");
    }
}
