//! End-to-end runs of the command-line front end.

mod common;

use std::path::PathBuf;
use std::process::Command;

use semicont::cli::{parse_spec, print_spec, run_with};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<String> = std::iter::once("semicont").chain(args.iter().copied()).map(String::from).collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn classify_heaviside_at_zero() {
    let (code, out, _) = call(&["classify", &fixture("heaviside.fn"), "--at", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("usc=yes lsc=no left=no right=yes cont=no"), "{out}");
}

#[test]
fn compare_dirichlet_headline() {
    let (code, out, _) = call(&["compare", &fixture("dirichlet.fn"), "--tol", "1/1000", "--max-depth", "20"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next().unwrap(), "riemann: NOT integrable (gap=1), lebesgue: 0");
}

#[test]
fn integrate_square_encloses_one_third() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let (code, out, err) = call(&[
        "integrate",
        &fixture("square.fn"),
        "--tol",
        "1/1000000",
        "--max-depth",
        "30",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("Lebesgue integral: ["), "{out}");
    let text = std::fs::read_to_string(csv).unwrap();
    let field = |key: &str| -> semicont::Rational {
        let line = text.lines().find(|l| l.starts_with(&format!("{key},"))).unwrap();
        semicont::numeric::parse_rational(line.split(',').nth(1).unwrap()).unwrap()
    };
    let third = common::q(1, 3);
    assert!(field("lebesgue_lo") <= third && third <= field("lebesgue_hi"));
    assert!(field("lower_integral_lo") <= third && third <= field("upper_integral_hi"));
}

#[test]
fn analyze_reports_certificate() {
    let (code, out, _) = call(&["analyze", &fixture("heaviside.fn")]);
    assert_eq!(code, 0);
    assert!(out.contains("continuous: 0 (~0)"), "{out}");
    assert!(out.contains("measurable: yes"));
}

#[test]
fn fixtures_round_trip_through_printer() {
    for name in ["heaviside.fn", "dirichlet.fn", "square.fn"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let f = parse_spec(&text).unwrap();
        assert_eq!(parse_spec(&print_spec(&f)).unwrap(), f);
    }
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(call(&[]).0, 1);
    assert_eq!(call(&["classify", &fixture("heaviside.fn")]).0, 1);
    assert_eq!(call(&["integrate", &fixture("square.fn"), "--tol", "-1"]).0, 1);
    assert_eq!(call(&["integrate", &fixture("square.fn"), "--bogus"]).0, 1);
    let (code, _, err) = call(&["analyze", "/nonexistent/spec.fn"]);
    assert_eq!(code, 1);
    assert!(err.contains("cannot read spec"));
}

#[test]
fn malformed_specs_are_positioned() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.fn");
    let p = path.to_str().unwrap();
    let mut rng = common::rng(21);
    for _ in 0..300 {
        let text = common::malformed_spec(&mut rng);
        std::fs::write(&path, &text).unwrap();
        let (code, _, err) = call(&["analyze", p]);
        assert_eq!(code, 1, "{text}");
        assert!(common::is_positioned(&err, p), "{err} for\n{text}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_semicont");
    let ok = Command::new(bin).args(["classify", &fixture("heaviside.fn"), "--at", "-1/2", "0"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("x = -1/2 (~-0.5)"));
    let bad = Command::new(bin).arg("nonsense").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
