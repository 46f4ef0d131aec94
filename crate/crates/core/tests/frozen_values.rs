//! Values computed once with an independent arbitrary-precision package and
//! frozen here at 40 significant digits.

use rug::Float;
use stieltjes_core::oracle::{hurwitz_zeta_ref, stieltjes_ref, EMConfig};
use stieltjes_core::stieltjes::{stieltjes_base_k, stieltjes_dyadic};
use stieltjes_core::zeta::{brun_beta, dirichlet_l, hurwitz_zeta_series, DirichletCharacter, ZetaArgs};
use stieltjes_core::{EvalConfig, Precision, SumReport, Tolerance};

const BITS: u32 = 256;

fn f(text: &str) -> Float {
    Precision::default().parse(text).unwrap()
}

fn tol(x: f64) -> Tolerance {
    Tolerance::from_f64(x).unwrap()
}

fn a_values() -> [Float; 4] {
    [f("0.5"), f("1"), f("1.5"), Float::with_val(BITS, 1u32).exp()]
}

/// `γ_ℓ(a)` for a in {1/2, 1, 3/2, e}.
const STIELTJES: [[&str; 4]; 6] = [
    [
        "1.963510026021423479440976332998755567193",
        "0.5772156649015328606065120900824024310422",
        "-0.03648997397857652055902366700124443280684",
        "-0.8049262744635665513710357964665947315439",
    ],
    [
        "-1.353459680804941517708687169178064403591",
        "-0.07281584548367672486058637587490131913774",
        "0.03283468031494910112577707373828873255971",
        "-0.315943941139518918082964797480198389237",
    ],
    [
        "0.9688644752202907114217110623237806541826",
        "-0.009690363192872318484530386035212529359066",
        "0.007958447383887862087506009670450710721492",
        "-0.1605690110803549428710049999875303547072",
    ],
    [
        "-0.667424273711380739555989196796920837465",
        "0.002053834420303345866160046542753384285716",
        "-0.001374969733521780118282031573459749152706",
        "-0.08868222674588225222238441865426004018384",
    ],
    [
        "0.4595474450767714581525882126603356151813",
        "0.002325370065467300057468170177526068000904",
        "-0.00212275208939544562240722287528992785538",
        "-0.05014388151501075308916700824585636237028",
    ],
    [
        "-0.3208120266778654902243045341461064656794",
        "0.0007933238173010627017533348774444448307315",
        "-0.0008066311635828480624112064341982721406197",
        "-0.02813056310584416837486171601588066164877",
    ],
];

const HURWITZ_S: [&str; 5] = ["1.25", "1.5", "2", "3", "5"];
const HURWITZ_A: [&str; 4] = ["0.25", "0.5", "1", "2"];
const HURWITZ: [[&str; 4]; 5] = [
    [
        "9.877308776761412875134869569213927549288",
        "6.333967529208202112726015751519606145022",
        "4.595111825842943380685378039694625652281",
        "3.595111825842943380685378039694625652281",
    ],
    [
        "10.21305536046660073888285571024857141653",
        "4.776537947554833248576627669358302173663",
        "2.612375348685488343348567567924071630571",
        "1.612375348685488343348567567924071630571",
    ],
    [
        "17.19732915450711073927131911933522402151",
        "4.934802200544679309417245499938075567657",
        "1.644934066848226436472415166646025189219",
        "0.644934066848226436472415166646025189219",
    ],
    [
        "64.66386996876846016666898358942199494365",
        "8.414398322117159997798167130580149935355",
        "1.202056903159594285399738161511449990765",
        "0.202056903159594285399738161511449990765",
    ],
    [
        "1024.34897452658057223159279802174829149",
        "32.14476040944446771627233008016805920977",
        "1.036927755143369926331365486457034168057",
        "0.03692775514336992633136548645703416805708",
    ],
];

fn assert_close(got: &Float, expected: &Float, limit: f64, what: &str) {
    let err = Float::with_val(BITS, got - expected).abs();
    assert!(err <= limit, "{what}: off by {err:e}");
}

fn assert_bounded(r: &SumReport, expected: &Float, what: &str) {
    let err = Float::with_val(BITS, &r.value - expected).abs();
    assert!(err <= r.error_bound, "{what}: off by {err:e}, bound {:e}", r.error_bound);
}

#[test]
fn stieltjes_oracle() {
    let p = Precision::default();
    for (ell, row) in STIELTJES.iter().enumerate() {
        for (a, text) in a_values().iter().zip(row) {
            let v = stieltjes_ref(ell as u32, a, &p).unwrap();
            assert_close(&v, &f(text), 1e-38, &format!("oracle ell={ell} a={}", a.to_f64()));
        }
    }
}

#[test]
fn stieltjes_series_routes() {
    let cfg = EvalConfig::default();
    let t = tol(1e-12);
    for (ell, row) in STIELTJES.iter().enumerate() {
        for (a, text) in a_values().iter().zip(row) {
            let expected = f(text);
            let what = format!("ell={ell} a={}", a.to_f64());
            assert_bounded(&stieltjes_dyadic(ell as u32, a, &t, &cfg).unwrap().report, &expected, &what);
            assert_bounded(&stieltjes_base_k(ell as u32, a, 3, &t, &cfg).unwrap().report, &expected, &what);
        }
    }
}

#[test]
fn leading_digits_of_classical_constants() {
    let cfg = EvalConfig::default();
    let t = tol(1e-12);
    let one = cfg.prec.float(1);
    let g1 = stieltjes_dyadic(1, &one, &t, &cfg).unwrap().report.value;
    let g2 = stieltjes_dyadic(2, &one, &t, &cfg).unwrap().report.value;
    assert!(g1.to_string_radix(10, Some(15)).starts_with("-7.281584548"));
    assert!(g2.to_string_radix(10, Some(15)).starts_with("-9.69036319"));
}

#[test]
fn stieltjes_at_two_equals_at_one_for_positive_ell() {
    let cfg = EvalConfig::default();
    let t = tol(1e-12);
    for ell in 1..=5u32 {
        let r = stieltjes_dyadic(ell, &cfg.prec.float(2), &t, &cfg).unwrap().report;
        assert_bounded(&r, &f(STIELTJES[ell as usize][1]), &format!("ell={ell}"));
    }
}

#[test]
fn hurwitz_series_and_oracle() {
    let cfg = EvalConfig::default();
    let t = tol(1e-12);
    let em = EMConfig::default();
    for (s_text, row) in HURWITZ_S.iter().zip(&HURWITZ) {
        for (a_text, text) in HURWITZ_A.iter().zip(row) {
            let (s, a) = (f(s_text), f(a_text));
            let expected = f(text);
            let what = format!("s={s_text} a={a_text}");
            let series = hurwitz_zeta_series(&ZetaArgs::new(s.clone(), a.clone()).unwrap(), &t, &cfg).unwrap();
            assert_bounded(&series, &expected, &what);
            assert!(series.error_bound <= 1e-12);
            let oracle = hurwitz_zeta_ref(&s, &a, &em, &cfg.prec).unwrap();
            assert_close(&oracle.value, &expected, 1e-36, &what);
        }
    }
}

#[test]
fn brun_values() {
    let cfg = EvalConfig::default();
    let t = tol(1e-13);
    let r = brun_beta(&f("1"), &t, &cfg).unwrap();
    assert_bounded(&r, &f("0.4227843350984671393934879099175975689578"), "beta(1)");
    let r = brun_beta(&f("2"), &t, &cfg).unwrap();
    assert_bounded(&r, &f("0.355065933151773563527584833353974810781"), "beta(2)");
}

#[test]
fn dirichlet_values() {
    let cfg = EvalConfig::default();
    let t = tol(1e-12);
    let s = f("2");
    let catalan = f("0.9159655941772190150546035149323841107742");
    let odd = f("1.233700550136169827354311374984518891914");
    let zeta2 = f("1.644934066848226436472415166646025189219");
    let chi4 = DirichletCharacter::new(vec![1, 0, -1, 0]).unwrap();
    assert_bounded(&dirichlet_l(&s, &chi4, &t, &cfg).unwrap(), &catalan, "chi mod 4");
    let chi2 = DirichletCharacter::principal(2).unwrap();
    assert_bounded(&dirichlet_l(&s, &chi2, &t, &cfg).unwrap(), &odd, "principal mod 2");
    let chi1 = DirichletCharacter::principal(1).unwrap();
    assert_bounded(&dirichlet_l(&s, &chi1, &t, &cfg).unwrap(), &zeta2, "principal mod 1");
}
