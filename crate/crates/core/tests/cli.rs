use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hamrep::cli::{self, Format, NRange, Overrides, Suite, SuiteConfig, EXIT_CONFIG, EXIT_FAIL, EXIT_PASS};
use hamrep::liealg::Family;
use num_complex::Complex64;
use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamrep")).args(args).output().expect("spawn hamrep")
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn algebra_suite_passes() {
    let o = bin(&["verify", "--suite", "algebra", "--n", "3"]);
    assert_eq!(o.status.code(), Some(EXIT_PASS), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("[PASS] algebra"));
    assert!(text.ends_with("overall: PASS\n"));
}

#[test]
fn casimir_count_reports_twelve_of_sixteen() {
    let config = SuiteConfig::resolve(
        None,
        Overrides { suites: vec![Suite::CasimirCount], n: Some("1..4".parse().unwrap()), ..Default::default() },
    )
    .unwrap();
    let report = cli::verify(&config);
    assert!(!report.pass);
    let suite = &report.suites[0];
    assert_eq!(suite.checks.len(), 16);
    assert_eq!(suite.checks.iter().filter(|c| c.pass).count(), 12);
    let failing: Vec<_> = suite.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    for cell in ["Ga n=2", "Ga n=4", "QHa n=2", "QHa n=4"] {
        assert!(failing.iter().any(|f| f.contains(cell)), "{cell} not among {failing:?}");
    }
    let o = bin(&["verify", "--suite", "casimir-count", "--n", "1..4"]);
    assert_eq!(o.status.code(), Some(EXIT_FAIL));
    assert!(stdout(&o).contains("(12/16 checks)"));
}

#[test]
fn uir_suite_for_qha_passes() {
    let o = bin(&["verify", "--suite", "uir", "--family", "qha", "--trials", "500", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(EXIT_PASS), "{}", stdout(&o));
}

#[test]
fn configuration_errors_exit_with_two() {
    assert_eq!(bin(&["verify", "--trials", "0"]).status.code(), Some(EXIT_CONFIG));
    assert_eq!(bin(&["verify", "--suite", "bogus"]).status.code(), Some(EXIT_CONFIG));
    assert_eq!(bin(&["verify", "--n", "0..2"]).status.code(), Some(EXIT_CONFIG));
    assert_eq!(bin(&["verify", "--n", "1..9"]).status.code(), Some(EXIT_CONFIG));
    assert_eq!(bin(&["verify", "--config", "/nonexistent/hamrep.json"]).status.code(), Some(EXIT_CONFIG));
    let grid = data("boost.json");
    let transform = grid.to_str().unwrap();
    assert_eq!(bin(&["demo", "--grid", "1:0", "--transform", transform]).status.code(), Some(EXIT_CONFIG));
    assert_eq!(bin(&["demo", "--grid", "0:1:0", "--transform", transform]).status.code(), Some(EXIT_CONFIG));
    assert_eq!(bin(&["demo", "--grid", "0:1:3", "--transform", "/nonexistent.json"]).status.code(), Some(EXIT_CONFIG));
    assert_eq!(cli::run(["hamrep", "frobnicate"]), EXIT_CONFIG);
}

#[test]
fn flags_override_config_file_over_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("cfg.json");
    std::fs::write(&file, r#"{"suites": ["heisenberg"], "n": 2, "trials": 11, "seed": 5, "format": "json"}"#).unwrap();

    let defaults = SuiteConfig::resolve(None, Overrides::default()).unwrap();
    assert_eq!(defaults.n, NRange::single(3));
    assert_eq!(defaults.trials, 200);
    assert_eq!(defaults.seed, 42);
    assert_eq!(defaults.format, Format::Text);

    let from_file = SuiteConfig::resolve(Some(&file), Overrides::default()).unwrap();
    assert_eq!(from_file.suites, vec![Suite::Heisenberg]);
    assert_eq!(from_file.n, NRange::single(2));
    assert_eq!((from_file.trials, from_file.seed), (11, 5));
    assert_eq!(from_file.format, Format::Json);
    assert_eq!(from_file.families, defaults.families);

    let flags = Overrides { trials: Some(3), families: vec![Family::Galilei], ..Default::default() };
    let both = SuiteConfig::resolve(Some(&file), flags).unwrap();
    assert_eq!(both.trials, 3);
    assert_eq!(both.seed, 5);
    assert_eq!(both.families, vec![Family::Galilei]);

    let labels = dir.path().join("labels.json");
    std::fs::write(&labels, r#"{"lambda": 2.0, "mu": 0.5}"#).unwrap();
    let o = bin(&["verify", "--config", file.to_str().unwrap(), "--labels", labels.to_str().unwrap(), "--seed", "9"]);
    assert_eq!(o.status.code(), Some(EXIT_PASS));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["config"]["seed"], 9);
    assert_eq!(v["config"]["trials"], 11);
    assert_eq!(v["config"]["labels"]["lambda"], 2.0);
    assert_eq!(v["config"]["labels"]["mu"], 0.5);

    std::fs::write(&file, r#"{"trails": 3}"#).unwrap();
    assert!(SuiteConfig::resolve(Some(&file), Overrides::default()).is_err());
}

#[test]
fn json_report_is_byte_identical_across_runs() {
    let args = ["verify", "--suite", "uir", "--suite", "cover", "--family", "qha", "--trials", "20", "--format", "json"];
    let a = bin(&args);
    let b = bin(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "hamrep/1");
    assert_eq!(v["pass"], true);
    let names: Vec<_> = v["suites"].as_array().unwrap().iter().map(|s| s["suite"].as_str().unwrap()).collect();
    assert_eq!(names, ["cover", "uir"]);
}

#[test]
fn report_written_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.txt");
    let o = bin(&["verify", "--suite", "heisenberg", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(EXIT_PASS));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("[PASS] heisenberg"));
}

fn parse_csv(text: &str) -> Vec<[f64; 5]> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,t,re,im,abs2"));
    lines
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|c| c.parse().unwrap()).collect();
            [v[0], v[1], v[2], v[3], v[4]]
        })
        .collect()
}

fn gaussian(y: f64, c: f64, k: f64, w: f64) -> Complex64 {
    Complex64::from_polar((-(y - c).powi(2) / (2.0 * w * w)).exp(), k * y)
}

fn transform_file(dir: &Path, element: &str) -> PathBuf {
    let path = dir.join("t.json");
    let json = format!(
        r#"{{"family": "qha", "labels": {{"lambda": 1.0, "mu": 1.5, "alpha": 0.5, "kappa": 1.0, "j": 0.0, "hbar": 1.0}},
            "element": {element},
            "packet": {{"center": [0.3, 0, 0], "momentum": [0.25, 0, 0], "width": 0.8}}}}"#
    );
    std::fs::write(&path, json).unwrap();
    path
}

fn element(v: [f64; 3], q: [f64; 3], p: [f64; 3]) -> String {
    format!(
        r#"{{"n": 3, "R": [1,0,0,0,1,0,0,0,1], "v": {v:?}, "f": [0,0,0], "r": 0, "q": {q:?}, "t": 0, "p": {p:?},
            "eps": 0, "iota": 0, "s": 0, "u": 0}}"#
    )
}

#[test]
fn identity_leaves_the_packet_unchanged() {
    let dir = tempfile::tempdir().unwrap();
    let t = transform_file(dir.path(), &element([0.0; 3], [0.0; 3], [0.0; 3]));
    let o = bin(&["demo", "--grid", "-2:2:9,0:1:2", "--transform", t.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(EXIT_PASS));
    let rows = parse_csv(&stdout(&o));
    assert_eq!(rows.len(), 18);
    for [x, _, re, im, abs2] in rows {
        let g = gaussian(x, 0.3, 0.25, 0.8);
        assert!((Complex64::new(re, im) - g).norm() < 1e-12);
        assert!((abs2 - g.norm_sqr()).abs() < 1e-12);
    }
}

#[test]
fn translations_shift_and_modulate_the_packet() {
    // Parameter p pairs with Q̂ = −iλℏ∂ and shifts momentum by λp; parameter q
    // pairs with P̂ = p̃ and multiplies by e^{iq·p̃/ℏ}.
    let dir = tempfile::tempdir().unwrap();
    let t = transform_file(dir.path(), &element([0.0; 3], [0.0; 3], [0.4, 0.0, 0.0]));
    let o = bin(&["demo", "--grid", "-2:2:9", "--transform", t.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(EXIT_PASS));
    for [x, _, re, im, _] in parse_csv(&stdout(&o)) {
        let want = gaussian(x - 0.4, 0.3, 0.25, 0.8);
        assert!((Complex64::new(re, im) - want).norm() < 1e-12, "x = {x}");
    }

    let t = transform_file(dir.path(), &element([0.0; 3], [0.4, 0.0, 0.0], [0.0; 3]));
    let o = bin(&["demo", "--grid", "-2:2:9", "--transform", t.to_str().unwrap()]);
    for [x, _, re, im, _] in parse_csv(&stdout(&o)) {
        let want = Complex64::from_polar(1.0, 0.4 * x) * gaussian(x, 0.3, 0.25, 0.8);
        assert!((Complex64::new(re, im) - want).norm() < 1e-12, "x = {x}");
    }
}

#[test]
fn boost_matches_golden_and_closed_form() {
    let transform = data("boost.json");
    let o = bin(&["demo", "--grid", "-3:3:7,0:1:3", "--transform", transform.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(EXIT_PASS));
    let golden = std::fs::read_to_string(data("boost_golden.csv")).unwrap();
    assert_eq!(stdout(&o), golden);

    // ψ'(p, t) = exp(i(t v·p + μ t |v|²/2)/ℏ) ψ(p + μv), from G̃ = −t p/ℏ + iμ∂.
    let (mu, v) = (1.5, 0.5);
    let rows = parse_csv(&golden);
    assert_eq!(rows.len(), 21);
    for [p, t, re, im, _] in rows {
        let phase = Complex64::from_polar(1.0, t * v * p + mu * t * v * v / 2.0);
        let want = phase * gaussian(p + mu * v, 0.0, 0.25, 1.0);
        assert!((Complex64::new(re, im) - want).norm() < 1e-12, "p = {p}, t = {t}");
    }
}
