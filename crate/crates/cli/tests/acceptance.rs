//! Acceptance suite: one PASS/FAIL line per criterion, each checked at its
//! stated tolerance and time budget.

use std::path::Path;
use std::process::{Command, ExitCode, Output};
use std::time::{Duration, Instant};

use ghq_core::fock::{
    build_phase_ops, commutator_residual, eigh, hamiltonian_oscillator, landau_system, minimize_uncertainty,
    oscillator_slopes, spectrum_point, tilde_transform, uncertainty_pair, GaussianFamilySpec, HamiltonianKind,
    SimUnits, StateVector, TruncationSpec,
};
use ghq_core::weyl::{
    derive_be_condition, parse_expression, substitute, verify_ghq_algebra, verify_ghq_algebra_with, Bindings,
    CoeffField, Param, RatFunc, Symbol,
};
use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ghq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ghq")).args(args).output().expect("spawn ghq")
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn spec(n: usize, m: usize) -> TruncationSpec {
    TruncationSpec::new(n, m).unwrap()
}

fn criterion(id: u32, name: &str, budget: Option<Duration>, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = f();
    let t = start.elapsed();
    let over = budget.filter(|b| t >= *b);
    let (ok, detail) = match (result, over) {
        (Ok(d), None) => (true, d),
        (Ok(d), Some(b)) => (false, format!("{d}; took {:.2}s, budget {}s", t.as_secs_f64(), b.as_secs())),
        (Err(e), _) => (false, e),
    };
    println!("criterion {id:>2} {} {name} ({:.2}s): {detail}", if ok { "PASS" } else { "FAIL" }, t.as_secs_f64());
    ok
}

fn c1_exact_algebra() -> Check {
    let r = verify_ghq_algebra();
    let zero = r.identities.iter().filter(|c| c.residual.is_zero()).count();
    ensure(r.identities.len() == 9 && zero == 9, format!("{zero}/{} residuals zero", r.identities.len()))?;
    let out = ghq(&["verify-algebra"]);
    ensure(out.status.code() == Some(0), format!("verify-algebra exited {:?}", out.status.code()))?;
    Ok("9/9 identities with zero residual; verify-algebra exit 0".into())
}

fn c2_be_condition() -> Check {
    let r = derive_be_condition();
    ensure(r.cofactor.is_some(), "factor not divisible by theta*mu^2*omega^2 - eta")?;
    ensure(r.on_condition.is_zero(), "factor nonzero on the condition")?;
    let nonzero = r.off_condition_points.iter().filter(|p| !p.factor.is_zero()).count();
    ensure(r.off_condition_points.len() == 50 && nonzero == 50, format!("{nonzero}/50 off-condition points nonzero"))?;
    Ok("vanishes on theta = eta/(mu*omega)^2 exactly; 50/50 off-condition points nonzero".into())
}

fn c3_case2() -> Check {
    let c = parse_expression("comm(a1d, a2d)").unwrap().to_polynomial().unwrap();
    let b = Bindings::new().bind(Symbol::Theta, RatFunc::zero());
    let v = substitute(&c, &b).map_err(|e| e.to_string())?;
    ensure(!v.is_zero(), "[a1d, a2d] vanishes at theta = 0")?;
    ensure(!derive_be_condition().case2.is_zero(), "derived factor vanishes at theta = 0")?;
    Ok(format!("[a1d, a2d] at theta = 0 is {v}"))
}

fn c4_eta_magnitude() -> Check {
    let out = ghq(&["constants", "--omega", "1e15"]);
    ensure(out.status.code() == Some(0), format!("constants exited {:?}", out.status.code()))?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let eta = v["derived"]["eta_c"].as_f64().ok_or("no derived.eta_c")?;
    let codata = 1.054571817e-34 * 1.602176634e-19 * 1e-12;
    let rel = (eta - codata).abs() / codata;
    ensure(eta.log10().floor() == -65.0, format!("floor(log10) = {}", eta.log10().floor()))?;
    ensure(rel < 1e-3, format!("relative error {rel:e}"))?;
    ensure((eta - 1.689e-65).abs() / 1.689e-65 < 1e-3, format!("eta_c = {eta:e}"))?;
    Ok(format!("eta_c = {eta:.4e}, floor(log10) = -65, relative error {rel:.1e}"))
}

fn c5_numeric_fidelity() -> Check {
    let s = spec(24, 4);
    let t = tilde_transform(&build_phase_ops(&s), &SimUnits::new(0.1, 0.1).unwrap());
    let xi2 = t.params.xi().powi(2);
    let i = Complex64::new(0.0, 1.0);
    let zero = Complex64::default();
    let cases = [
        (&t.tx1, &t.tp1, i),
        (&t.tx2, &t.tp2, i),
        (&t.tx1, &t.tp2, zero),
        (&t.tx2, &t.tp1, zero),
        (&t.tp1, &t.tp2, i * xi2 * 0.1),
        (&t.tx1, &t.tx2, i * xi2 * 0.1),
    ];
    let mut worst = 0.0f64;
    for (a, b, z) in cases {
        worst = worst.max(commutator_residual(a, b, z, &s).map_err(|e| e.to_string())?);
    }
    ensure(worst < 1e-9, format!("max residual {worst:e}"))?;
    Ok(format!("max interior residual {worst:.2e}"))
}

fn c6_landau() -> Check {
    let u = SimUnits::new(0.2, 0.0).unwrap();
    let r = spectrum_point(&u, HamiltonianKind::Landau, 24, &spec(32, 4), &spec(40, 4)).map_err(|e| e.to_string())?;
    let conv = r.converged_values();
    ensure(conv.len() >= 6, format!("only {} converged values", conv.len()))?;
    let mut worst = 0.0f64;
    let mut levels = std::collections::BTreeSet::new();
    for e in &conv {
        let n = (e / 0.2 - 0.5).round().max(0.0);
        levels.insert(n as i64);
        worst = worst.max((e - 0.2 * (n + 0.5)).abs());
    }
    ensure(worst < 1e-6, format!("max distance from 0.2(n+1/2) is {worst:e}"))?;
    ensure(levels.contains(&0) && levels.contains(&1), "lowest two levels not both resolved")?;
    Ok(format!("{} converged values on levels {:?}, max error {worst:.1e}", conv.len(), levels))
}

fn c7_minimal_uncertainties() -> Check {
    let fam = GaussianFamilySpec::new(spec(96, 4));
    let ops = build_phase_ops(&fam.spec);
    let tied = tilde_transform(&ops, &SimUnits::with_be_condition(0.1).unwrap());
    let dx = minimize_uncertainty(&tied.tx1, &tied.tx2, &fam).map_err(|e| e.to_string())?.objective();
    let landau = tilde_transform(&ops, &SimUnits::new(0.2, 0.0).unwrap());
    let dp = minimize_uncertainty(&landau.tp1, &landau.tp2, &fam).map_err(|e| e.to_string())?.objective();
    let (ex, ep) = ((dx / 0.05f64.sqrt() - 1.0).abs(), (dp / 0.1f64.sqrt() - 1.0).abs());
    ensure(ex < 0.01, format!("min dx {dx} off by {:.3}%", 100.0 * ex))?;
    ensure(ep < 0.01, format!("min dp {dp} off by {:.3}%", 100.0 * ep))?;

    let s = spec(24, 4);
    let t = tilde_transform(&build_phase_ops(&s), &SimUnits::new(0.2, 0.0).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut slack = f64::INFINITY;
    for _ in 0..100 {
        let v = StateVector::random_interior(&s, &mut rng);
        let p = uncertainty_pair(&v, &t.tp1, &t.tp2).map_err(|e| e.to_string())?;
        slack = slack.min(p.product() - 0.1);
    }
    ensure(slack >= -1e-9, format!("Robertson violated by {:e}", -slack))?;
    Ok(format!(
        "min dx {dx:.6} ({:.3}%), min dp {dp:.6} ({:.3}%), Robertson slack {slack:.3e}",
        100.0 * ex,
        100.0 * ep
    ))
}

fn c8_slopes() -> Check {
    let mut parts = Vec::new();
    for (label, dir) in [("tied", (1.0, 1.0)), ("eta only", (1.0, 0.0))] {
        let checks = oscillator_slopes(&spec(24, 4), 3, dir).map_err(|e| e.to_string())?;
        ensure(checks.len() == 2, format!("{label}: expected ground and first-excited groups"))?;
        for c in &checks {
            ensure(c.passed(), format!("{label} level {}: error {:e}", c.first, c.max_error()))?;
        }
        let worst = checks.iter().map(|c| c.max_error()).fold(0.0, f64::max);
        parts.push(format!("{label} max error {worst:.1e}"));
    }
    Ok(parts.join(", "))
}

fn c9_commutative_limit() -> Check {
    let b = Bindings::new()
        .bind(Symbol::Eta, RatFunc::zero())
        .bind(Symbol::Theta, RatFunc::zero())
        .with(Param::Xi, CoeffField::one());
    let r = verify_ghq_algebra_with(&b).map_err(|e| e.to_string())?;
    ensure(r.all_passed(), "canonical relations not recovered exactly")?;

    let (s, l) = (spec(24, 4), spec(32, 4));
    let sp = spectrum_point(&SimUnits::commutative(), HamiltonianKind::Oscillator, 6, &s, &l).map_err(|e| e.to_string())?;
    for (e, want) in sp.eigenvalues.iter().zip([1.0, 2.0, 2.0, 3.0, 3.0, 3.0]) {
        ensure((e - want).abs() < 1e-10, format!("spectrum {:?}", sp.eigenvalues))?;
    }

    let ops = build_phase_ops(&s);
    let t = tilde_transform(&ops, &SimUnits::commutative());
    let (_, vectors) = eigh(&hamiltonian_oscillator(&t)).map_err(|e| e.to_string())?;
    let g = uncertainty_pair(&vectors[0], &t.tx1, &t.tp1).map_err(|e| e.to_string())?;
    ensure((g.product() - 0.5).abs() < 1e-10, format!("ground dx*dp = {}", g.product()))?;
    let (_, lh) = landau_system(&s, &SimUnits::commutative()).map_err(|e| e.to_string())?;
    ensure(lh.is_hermitian(), "free Hamiltonian not Hermitian")?;
    Ok(format!("relations exact, spectrum {:?}, dx*dp = {:.12}", sp.eigenvalues, g.product()))
}

const ARTIFACTS: &[(&str, &[&str])] = &[
    ("verify.json", &["--format", "json", "verify-algebra"]),
    ("spectrum.csv", &["--eta-bar", "0.1", "--theta-bar", "0.1", "spectrum", "--slopes"]),
    ("spectrum.json", &["--eta-bar", "0.1", "--impose-be", "--format", "json", "spectrum"]),
    ("landau.csv", &["--eta-bar", "0.2", "--n", "24", "--k", "8", "spectrum", "--hamiltonian", "landau"]),
    ("uncertainty.json", &["--eta-bar", "0.2", "--format", "json", "uncertainty", "--family-n", "48"]),
    ("constants.json", &["constants", "--omega", "1e15"]),
    ("sweep.csv", &["--impose-be", "sweep", "--eta-grid", "0.05,0.1,0.2"]),
    ("sweep.json", &["--format", "json", "sweep", "--eta-grid", "0,0.1", "--theta-grid", "0,0.2"]),
];

fn produce(dir: &Path) -> Result<Vec<Vec<u8>>, String> {
    ARTIFACTS
        .iter()
        .map(|(name, args)| {
            let path = dir.join(name);
            let mut full: Vec<&str> = args.to_vec();
            let p = path.to_str().unwrap();
            full.extend(["--out", p]);
            let out = ghq(&full);
            ensure(out.status.code() == Some(0), format!("{name}: exit {:?}", out.status.code()))?;
            std::fs::read(&path).map_err(|e| format!("{name}: {e}"))
        })
        .collect()
}

fn c10_determinism() -> Check {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let first = produce(a.path())?;
    let second = produce(b.path())?;
    for ((name, _), (x, y)) in ARTIFACTS.iter().zip(first.iter().zip(&second)) {
        ensure(!x.is_empty() && x == y, format!("{name} differs between runs"))?;
    }
    let bytes: usize = first.iter().map(Vec::len).sum();
    Ok(format!("{} artifacts ({bytes} bytes) byte-identical across two runs", ARTIFACTS.len()))
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let results = [
        criterion(1, "exact deformed algebra", Some(s(5)), c1_exact_algebra),
        criterion(2, "Bose-Einstein condition", Some(s(5)), c2_be_condition),
        criterion(3, "theta = 0 excluded", Some(s(1)), c3_case2),
        criterion(4, "eta_c magnitude", Some(s(1)), c4_eta_magnitude),
        criterion(5, "numeric algebra fidelity", Some(s(10)), c5_numeric_fidelity),
        criterion(6, "Landau levels", Some(s(30)), c6_landau),
        criterion(7, "minimal uncertainties", Some(s(60)), c7_minimal_uncertainties),
        criterion(8, "perturbation slopes", Some(s(30)), c8_slopes),
        criterion(9, "commutative limit", Some(s(10)), c9_commutative_limit),
        criterion(10, "determinism", None, c10_determinism),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria PASS", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
