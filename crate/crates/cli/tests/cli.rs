//! End-to-end behaviour of the `ghq` binary: outputs, exit codes, and
//! configuration layering.

use std::io::Write;
use std::process::{Command, Output};

use proptest::prelude::*;

fn ghq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ghq")).args(args).output().expect("spawn ghq")
}

fn code(args: &[&str]) -> i32 {
    ghq(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    let out = ghq(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn config_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn eval_examples() {
    assert_eq!(stdout(&["eval", "comm(tx1, tp1)"]).trim(), "(0, hbar)");
    assert_eq!(stdout(&["eval", "x1*p1 - p1*x1"]).trim(), "(0, hbar)");
    assert_eq!(stdout(&["eval", "comm(x1, x1)"]).trim(), "0");
    assert_eq!(stdout(&["eval", "comm(x1,p2)"]).trim(), "0");
    assert_eq!(stdout(&["eval", "comm(a1d,a2d)", "--bind", "theta=eta/(mu*omega)^2"]).trim(), "0");
    assert_eq!(stdout(&["eval", "comm(tp1,tp2)"]).trim(), "(0, 4*hbar^2*eta/(4*hbar^2 + eta*theta))");
    let v = json(&["--format", "json", "eval", "comm(x1,p1)"]);
    assert_eq!(v["result"], "(0, hbar)");
}

#[test]
fn verify_algebra_report() {
    let out = stdout(&["verify-algebra"]);
    assert!(out.contains("all checks PASS"));
    assert!(out.contains("MISMATCH"));
    assert!(!out.lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn commutative_spectrum_rows() {
    let out = stdout(&["spectrum"]);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "eta_bar,theta_bar,N,quantity,value,convergence_delta,status");
    let values: Vec<f64> = lines.map(|l| l.split(',').nth(4).unwrap().parse().unwrap()).collect();
    for (v, want) in values.iter().zip([1.0, 2.0, 2.0, 3.0, 3.0, 3.0]) {
        assert!((v - want).abs() < 1e-10);
    }
    assert_eq!(values.len(), 6);
}

#[test]
fn constants_report() {
    let v = json(&["constants", "--omega", "1e15"]);
    let eta = v["derived"]["eta_c"].as_f64().unwrap();
    assert_eq!(eta.log10().floor(), -65.0);
    assert_eq!(v["units"]["eta_c"], "kg^2*m^2*s^-2");
    assert_eq!(v["units"]["theta_c"], "m^2");
    assert_eq!(v["flags"]["extrapolated"], serde_json::json!(["min_area", "min_volume"]));
    let zero = json(&["constants", "--omega", "1e15", "--b-field", "0"]);
    for k in ["eta_c", "theta_c", "dp_min", "dx_min", "min_area", "min_volume"] {
        assert_eq!(zero["derived"][k].as_f64(), Some(0.0), "{k}");
    }
    let out = ghq(&["constants"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("omega"));
}

#[test]
fn sweep_ties_theta_and_flags_bad_points() {
    let out = stdout(&["--impose-be", "--n", "12", "--n-larger", "16", "sweep", "--eta-grid", "0.05,0.1,0.2"]);
    let rows: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    for r in &rows {
        assert_eq!(r[0], r[1]);
        assert_eq!(r[6], "ok");
    }
    let mixed = ghq(&["--n", "12", "--n-larger", "16", "sweep", "--eta-grid", "0,0.7", "--theta-grid", "0"]);
    assert_eq!(mixed.status.code(), Some(0));
    let text = String::from_utf8(mixed.stdout).unwrap();
    assert!(text.lines().nth(2).unwrap().contains("error"));
    assert_eq!(code(&["sweep", "--eta-grid", "0.7,0.8", "--theta-grid", "0"]), 1);
    assert_eq!(stdout(&["sweep", "--eta-grid", "", "--theta-grid", ""]).lines().count(), 1);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let out = ghq(&["constants", "--omega", "1e15", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert!(v["derived"]["eta_c"].is_number());
}

#[test]
fn usage_errors_exit_64() {
    let bad: &[&[&str]] = &[
        &["--eta-bar", "0.7", "spectrum"],
        &["--theta-bar", "-0.1", "spectrum"],
        &["--n", "80", "--n-larger", "90", "spectrum"],
        &["--n", "32", "--n-larger", "24", "spectrum"],
        &["--margin", "20", "spectrum"],
        &["--k", "0", "spectrum"],
        &["--format", "xml", "spectrum"],
        &["--eta-bar", "abc", "spectrum"],
        &["frobnicate"],
        &[],
        &["eval", "x1 +* p1"],
        &["eval", "y1"],
        &["eval", "x1", "--bind", "theta"],
        &["spectrum", "--hamiltonian", "landau", "--theta-bar", "0.1", "--eta-bar", "0.2"],
        &["spectrum", "--hamiltonian", "landau", "--slopes", "--eta-bar", "0.2"],
        &["spectrum", "--hamiltonian", "dirac"],
        &["uncertainty", "--family-n", "4"],
        &["constants", "--omega", "-1"],
        &["sweep", "--eta-grid", "0.1,x"],
        &["--config", "/nonexistent/ghq.conf", "spectrum"],
    ];
    for args in bad {
        assert_eq!(code(args), 64, "{args:?}");
    }
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
    assert_eq!(code(&["spectrum", "--help"]), 0);
}

#[test]
fn config_layering() {
    let f = config_file("# defaults\neta_bar = 0.2\ntheta-bar = 0.05 # trailing\nn = 12\nn-larger = 16\nk = 2\nformat = json\n");
    let p = f.path().to_str().unwrap();
    let from_file = json(&["--config", p, "spectrum"]);
    assert_eq!(from_file.as_array().unwrap().len(), 2);
    assert_eq!(from_file[0]["eta_bar"].as_f64(), Some(0.2));
    assert_eq!(from_file[0]["theta_bar"].as_f64(), Some(0.05));
    assert_eq!(from_file[0]["N"], 12);
    let flag_wins = json(&["--config", p, "--eta-bar", "0.1", "--k", "3", "spectrum"]);
    assert_eq!(flag_wins.as_array().unwrap().len(), 3);
    assert_eq!(flag_wins[0]["eta_bar"].as_f64(), Some(0.1));
    assert_eq!(flag_wins[0]["theta_bar"].as_f64(), Some(0.05));
    let defaults = stdout(&["spectrum"]);
    assert!(defaults.lines().nth(1).unwrap().starts_with("0.0000000000000000e0,0.0000000000000000e0,24,"));

    let bad_key = config_file("etabar = 0.1\n");
    assert_eq!(code(&["--config", bad_key.path().to_str().unwrap(), "spectrum"]), 64);
    let bad_line = config_file("eta-bar 0.1\n");
    assert_eq!(code(&["--config", bad_line.path().to_str().unwrap(), "spectrum"]), 64);
}

#[derive(Clone, Debug)]
struct Cfg {
    eta: f64,
    theta: f64,
    n: usize,
    n_larger: usize,
    margin: usize,
    k: usize,
    format: &'static str,
}

impl Cfg {
    fn valid(&self) -> bool {
        (0.0..=0.5).contains(&self.eta)
            && (0.0..=0.5).contains(&self.theta)
            && 2 <= self.n
            && self.n < self.n_larger
            && self.n_larger <= 64
            && 1 <= self.margin
            && 2 * self.margin < self.n
            && 1 <= self.k
            && self.k <= self.n * self.n / 4
            && self.format != "xml"
    }

    fn text(&self) -> String {
        format!(
            "eta-bar = {}\ntheta-bar = {}\nn = {}\nn-larger = {}\nmargin = {}\nk = {}\nformat = {}\n",
            self.eta, self.theta, self.n, self.n_larger, self.margin, self.k, self.format
        )
    }
}

fn cfg() -> impl Strategy<Value = Cfg> {
    (-0.2..0.8f64, -0.2..0.8f64, 0usize..40, 0usize..72, 0usize..12, 0usize..200, prop::sample::select(vec!["csv", "json", "xml"]))
        .prop_map(|(eta, theta, n, n_larger, margin, k, format)| Cfg { eta, theta, n, n_larger, margin, k, format })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exit_code_follows_validity(c in cfg()) {
        let f = config_file(&c.text());
        let got = code(&["--config", f.path().to_str().unwrap(), "eval", "comm(x1, p1)"]);
        prop_assert_eq!(got, if c.valid() { 0 } else { 64 }, "{}", c.text());
    }
}
