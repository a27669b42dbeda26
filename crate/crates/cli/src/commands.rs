use std::fmt::Write as _;
use std::path::PathBuf;

use ghq_core::fock::sweep::{perturbation_direction, SweepSettings, SweepTask};
use ghq_core::fock::{self, oscillator_slopes, spectrum_point, uncertainty_point, validate_units, FockError, HamiltonianKind};
use ghq_core::scenario::{self, CosmicInputs, Dims, Quantity, ScenarioError};
use ghq_core::table::{self, Row};
use ghq_core::weyl::{
    self, derive_be_condition, parse_binding, parse_operator_expression, substitute, verify_ghq_algebra,
    verify_ghq_algebra_with, AlgebraError, AlgebraReport, Bindings, CoeffField, Param, RatFunc, Symbol,
};
use serde_json::{json, Value};

use crate::config::{Format, Grid, RunConfig, Task};
use crate::{CliError, EXIT_FAILURE, EXIT_OK};

/// Rendered output, its destination, and the exit code.
pub struct Outcome {
    pub text: String,
    pub out: Option<PathBuf>,
    pub code: u8,
}

pub fn emit(o: Outcome) -> Result<u8, CliError> {
    match &o.out {
        Some(p) => std::fs::write(p, &o.text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display())))?,
        None => print!("{}", o.text),
    }
    Ok(o.code)
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

fn fock_error(e: FockError) -> CliError {
    match e {
        FockError::InvalidParameter(_) | FockError::InvalidTruncation(_) | FockError::Precondition(_) | FockError::Resource(_) => {
            CliError::Usage(e.to_string())
        }
        _ => internal(e),
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn render_rows(cfg: &RunConfig, rows: &[Row]) -> String {
    match cfg.format {
        Format::Csv => table::to_csv(rows),
        Format::Json => table::to_json(rows),
    }
}

fn commutative_bindings() -> Bindings {
    Bindings::new()
        .bind(Symbol::Theta, RatFunc::zero())
        .bind(Symbol::Eta, RatFunc::zero())
        .with(Param::Xi, CoeffField::one())
}

fn algebra_section(out: &mut String, title: &str, r: &AlgebraReport) {
    let _ = writeln!(out, "{title}");
    for c in r.identities.iter().chain(&r.supplementary) {
        let _ = writeln!(out, "  {} {} = {}", verdict(c.passed()), c.name, c.computed);
        if !c.passed() {
            let _ = writeln!(out, "       residual {}", c.residual);
        }
    }
    let _ = writeln!(out, "  {}/{} identities exact", r.passed_count(), r.identities.len());
}

fn algebra_json(r: &AlgebraReport) -> Value {
    let item = |c: &weyl::verify::IdentityCheck| {
        json!({
            "name": c.name,
            "computed": c.computed.to_string(),
            "target": c.target.to_string(),
            "residual": c.residual.to_string(),
            "passed": c.passed(),
        })
    };
    json!({
        "identities": r.identities.iter().map(item).collect::<Vec<_>>(),
        "supplementary": r.supplementary.iter().map(item).collect::<Vec<_>>(),
        "passed": r.passed_count(),
    })
}

pub fn verify_algebra(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let generic = verify_ghq_algebra();
    let theta0 = verify_ghq_algebra_with(&Bindings::new().bind(Symbol::Theta, RatFunc::zero())).map_err(internal)?;
    let commutative = verify_ghq_algebra_with(&commutative_bindings()).map_err(internal)?;
    let d = derive_be_condition();

    let off_nonzero = d.off_condition_points.iter().filter(|p| !p.factor.is_zero()).count();
    let on_zero = d.on_condition_points.iter().filter(|p| p.factor.is_zero()).count();
    let ok = generic.all_passed()
        && theta0.all_passed()
        && commutative.all_passed()
        && d.vanishes_iff_condition()
        && d.case2_excluded();

    let text = match cfg.format {
        Format::Json => {
            let v = json!({
                "ghq": algebra_json(&generic),
                "theta_zero": algebra_json(&theta0),
                "commutative": algebra_json(&commutative),
                "be_condition": {
                    "commutators": d.commutators.iter().map(|(n, p)| json!({"name": n, "value": p.to_string()})).collect::<Vec<_>>(),
                    "factor": d.factor.to_string(),
                    "condition": d.condition.to_string(),
                    "divisible": d.cofactor.is_some(),
                    "on_condition": d.on_condition.to_string(),
                    "off_condition_nonzero": off_nonzero,
                    "off_condition_points": d.off_condition_points.len(),
                    "on_condition_zero": on_zero,
                    "on_condition_points": d.on_condition_points.len(),
                    "theta_zero_factor": d.case2.to_string(),
                    "case2_excluded": d.case2_excluded(),
                    "printed_forms": d.printed.iter().map(|p| json!({
                        "relation": p.relation,
                        "printed": p.printed.to_string(),
                        "computed": p.computed.to_string(),
                        "agrees": p.agrees(),
                    })).collect::<Vec<_>>(),
                },
                "passed": ok,
            });
            let mut s = serde_json::to_string_pretty(&v).map_err(internal)?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::new();
            algebra_section(&mut out, "deformed algebra from the tilde map", &generic);
            algebra_section(&mut out, "theta = 0", &theta0);
            algebra_section(&mut out, "eta = theta = 0, xi = 1", &commutative);
            let _ = writeln!(out, "Bose-Einstein condition");
            for (name, p) in &d.commutators {
                let _ = writeln!(out, "  {name} = {p}");
            }
            let _ = writeln!(out, "  factor of [a1d, a2d] = {}", d.factor);
            let _ = writeln!(out, "  {} factor divisible by {}", verdict(d.cofactor.is_some()), d.condition);
            let _ = writeln!(out, "  {} factor at theta = eta/(mu*omega)^2 is {}", verdict(d.on_condition.is_zero()), d.on_condition);
            let _ = writeln!(
                out,
                "  {} nonzero at {off_nonzero}/{} random points off the condition",
                verdict(off_nonzero == d.off_condition_points.len()),
                d.off_condition_points.len()
            );
            let _ = writeln!(
                out,
                "  {} zero at {on_zero}/{} random points on the condition",
                verdict(on_zero == d.on_condition_points.len()),
                d.on_condition_points.len()
            );
            let _ = writeln!(out, "  {} theta = 0 leaves factor {} (case excluded)", verdict(d.case2_excluded()), d.case2);
            let _ = writeln!(out, "printed forms");
            for p in &d.printed {
                let tag = if p.agrees() { "AGREES" } else { "MISMATCH" };
                let _ = writeln!(out, "  {tag} {}: printed {}, computed {}", p.relation, p.printed, p.computed);
            }
            let _ = writeln!(out, "{}", if ok { "all checks PASS" } else { "some checks FAIL" });
            out
        }
    };
    Ok(Outcome { text, out: cfg.out.clone(), code: if ok { EXIT_OK } else { EXIT_FAILURE } })
}

/// Parse errors echo the input with a caret under the error position.
fn algebra_usage(e: AlgebraError, text: &str, label: &str) -> CliError {
    match &e {
        AlgebraError::Parse(p) => {
            let pad = label.chars().count() + text[..p.position().min(text.len())].chars().count();
            CliError::Usage(format!("{e}\n  {label}{text}\n  {}^", " ".repeat(pad)))
        }
        _ => CliError::Usage(e.to_string()),
    }
}

pub fn eval(cfg: &RunConfig, expression: &str, bindings: &[String]) -> Result<Outcome, CliError> {
    let mut b = Bindings::new();
    for spec in bindings {
        let (param, value) = parse_binding(spec).map_err(|e| algebra_usage(e, spec, "--bind "))?;
        b.insert(param, value);
    }
    let p = parse_operator_expression(expression).map_err(|e| algebra_usage(e, expression, ""))?;
    let p = substitute(&p, &b).map_err(|e| CliError::Usage(e.to_string()))?;
    let text = match cfg.format {
        Format::Json => format!("{}\n", json!({ "expression": expression, "result": p.to_string() })),
        Format::Csv => format!("{p}\n"),
    };
    Ok(Outcome { text, out: cfg.out.clone(), code: EXIT_OK })
}

fn units(cfg: &RunConfig) -> Result<fock::SimUnits, CliError> {
    validate_units(cfg.eta_bar, cfg.theta_bar, cfg.impose_be).map_err(fock_error)
}

pub fn spectrum(cfg: &RunConfig, slopes: bool) -> Result<Outcome, CliError> {
    let u = units(cfg)?;
    if slopes && cfg.hamiltonian != HamiltonianKind::Oscillator {
        return Err(CliError::Usage("--slopes applies to the oscillator Hamiltonian only".into()));
    }
    let r = spectrum_point(&u, cfg.hamiltonian, cfg.k, &cfg.spec(), &cfg.spec_larger()).map_err(fock_error)?;
    let mut rows = Vec::new();
    let mut ok = true;
    for (i, (&e, &d)) in r.eigenvalues.iter().zip(&r.convergence_delta).enumerate() {
        let converged = r.is_converged(i);
        ok &= converged;
        rows.push(Row::new(u.eta_bar, u.theta_bar, cfg.n, &format!("E{i}")).with_values(
            vec![e],
            vec![d],
            if converged { "ok" } else { "unconverged" },
        ));
    }
    if slopes {
        let checks = oscillator_slopes(&cfg.spec(), cfg.k, perturbation_direction(&u)).map_err(fock_error)?;
        for c in &checks {
            ok &= c.passed();
            let status = if c.passed() { "ok" } else { "mismatch" };
            let q = |kind: &str| format!("{kind}_level{}", c.first);
            rows.push(Row::new(u.eta_bar, u.theta_bar, cfg.n, &q("slope_first_order")).with_values(c.analytic.clone(), Vec::new(), status));
            rows.push(Row::new(u.eta_bar, u.theta_bar, cfg.n, &q("slope_finite_difference")).with_values(
                c.finite_difference.clone(),
                Vec::new(),
                status,
            ));
        }
    }
    Ok(Outcome { text: render_rows(cfg, &rows), out: cfg.out.clone(), code: if ok { EXIT_OK } else { EXIT_FAILURE } })
}

pub fn uncertainty(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let u = units(cfg)?;
    let r = uncertainty_point(&u, &cfg.spec(), &cfg.spec_larger(), &cfg.family_spec()).map_err(fock_error)?;
    let mut rows = vec![
        Row::new(u.eta_bar, u.theta_bar, cfg.family_n, "min_dx").with_values(vec![r.min_dx], Vec::new(), "ok"),
        Row::new(u.eta_bar, u.theta_bar, cfg.family_n, "min_dp").with_values(vec![r.min_dp], Vec::new(), "ok"),
    ];
    for s in &r.states {
        let n = if s.label.starts_with("min_") { cfg.family_n } else { cfg.n };
        let status = if s.robertson_holds() { "ok" } else { "robertson_violation" };
        let pairs = s.pairs();
        let row = |q: &str, v: Vec<f64>| Row::new(u.eta_bar, u.theta_bar, n, &format!("{}:{q}", s.label)).with_values(v, Vec::new(), status);
        rows.push(row("dtx1;dtx2;dtp1;dtp2", s.deltas.to_vec()));
        rows.push(row("bound_xx;bound_pp;bound_xp", pairs.iter().map(|p| p.bound).collect()));
        rows.push(row("saturation_xx;saturation_pp;saturation_xp", pairs.iter().map(|p| p.saturation()).collect()));
    }
    let code = if r.robertson_holds() { EXIT_OK } else { EXIT_FAILURE };
    Ok(Outcome { text: render_rows(cfg, &rows), out: cfg.out.clone(), code })
}

pub struct ConstantsArgs {
    pub b_field: Option<f64>,
    pub charge: Option<f64>,
    pub mass: Option<f64>,
    pub omega: Option<f64>,
}

fn scenario_usage(e: ScenarioError) -> CliError {
    CliError::Usage(e.to_string())
}

pub fn constants(cfg: &RunConfig, a: &ConstantsArgs) -> Result<Outcome, CliError> {
    let omega = a.omega.ok_or_else(|| {
        CliError::Usage("the oscillator frequency has no default: pass --omega in 1/s".into())
    })?;
    let inputs = CosmicInputs::new(
        Quantity::new(a.b_field.unwrap_or(scenario::DEFAULT_B_FIELD.value), Dims::TESLA),
        Quantity::new(a.charge.unwrap_or(scenario::ELEMENTARY_CHARGE.value), Dims::COULOMB),
        Quantity::new(a.mass.unwrap_or(scenario::ELECTRON_MASS.value), Dims::KG),
        Quantity::new(omega, Dims::PER_SECOND),
    )
    .map_err(scenario_usage)?;
    let report = scenario::constants_report(&inputs).map_err(scenario_usage)?;
    let mut text = serde_json::to_string_pretty(&report.to_json()).map_err(internal)?;
    text.push('\n');
    Ok(Outcome { text, out: cfg.out.clone(), code: EXIT_OK })
}

pub fn sweep(cfg: &RunConfig, task: Task, eta_grid: Option<Grid>, theta_grid: Option<Grid>) -> Result<Outcome, CliError> {
    let etas = eta_grid.map(|g| g.0).unwrap_or_else(|| vec![cfg.eta_bar]);
    let grid: Vec<(f64, f64)> = if cfg.impose_be {
        etas.iter().map(|&e| (e, e)).collect()
    } else {
        let thetas = theta_grid.map(|g| g.0).unwrap_or_else(|| vec![cfg.theta_bar]);
        etas.iter().flat_map(|&e| thetas.iter().map(move |&t| (e, t))).collect()
    };
    let settings = SweepSettings {
        task: match task {
            Task::Spectrum => SweepTask::Spectrum { kind: cfg.hamiltonian, k: cfg.k },
            Task::Uncertainty => SweepTask::Uncertainty,
        },
        spec: cfg.spec(),
        spec_larger: cfg.spec_larger(),
        family: cfg.family_spec(),
        impose_be: cfg.impose_be,
    };
    let rows = fock::sweep(&grid, &settings);
    let all_failed = !rows.is_empty() && rows.iter().all(|r| r.status != "ok");
    Ok(Outcome {
        text: render_rows(cfg, &rows),
        out: cfg.out.clone(),
        code: if all_failed { EXIT_FAILURE } else { EXIT_OK },
    })
}
