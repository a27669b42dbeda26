//! Spectrum and uncertainty tasks at a parameter point, and grid sweeps
//! over them.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::eigen::{eigenspectrum, eigh, group_levels, SpectrumResult, DEGENERACY_TOL};
use super::error::FockError;
use super::matrix::{OperatorMatrix, TruncationSpec};
use super::minimize::{minimize_uncertainty, GaussianFamilySpec};
use super::ops::{
    build_phase_ops, hamiltonian_oscillator, landau_system, oscillator_perturbation, tilde_transform, tilde_with,
    SimUnits, TildeOps, TildeParams,
};
use super::perturbation::{central_difference_slopes, first_order_shift, FD_STEP};
use super::state::{uncertainty_pair, variance, StateVector, UncertaintyPair};
use crate::table::Row;

/// Largest accepted `η̄` or `θ̄`.
pub const MAX_PARAM: f64 = 0.5;
/// Allowed slack in `ΔA·ΔB ≥ bound`.
pub const ROBERTSON_TOL: f64 = 1e-9;
/// Allowed relative mismatch between analytic and finite-difference slopes.
pub const SLOPE_TOL: f64 = 1e-5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HamiltonianKind {
    Oscillator,
    Landau,
}

impl FromStr for HamiltonianKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "oscillator" => Ok(HamiltonianKind::Oscillator),
            "landau" => Ok(HamiltonianKind::Landau),
            _ => Err(format!("unknown hamiltonian `{s}` (expected oscillator or landau)")),
        }
    }
}

impl fmt::Display for HamiltonianKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HamiltonianKind::Oscillator => "oscillator",
            HamiltonianKind::Landau => "landau",
        })
    }
}

/// Checks `0 ≤ η̄, θ̄ ≤ MAX_PARAM`.
pub fn validate_units(eta_bar: f64, theta_bar: f64, impose_be: bool) -> Result<SimUnits, FockError> {
    for (name, v) in [("eta_bar", eta_bar), ("theta_bar", theta_bar)] {
        if !(0.0..=MAX_PARAM).contains(&v) {
            return Err(FockError::InvalidParameter(format!("{name} must lie in [0, {MAX_PARAM}], got {v}")));
        }
    }
    if impose_be {
        SimUnits::with_be_condition(eta_bar)
    } else {
        SimUnits::new(eta_bar, theta_bar)
    }
}

fn oscillator_matrix(spec: &TruncationSpec, units: &SimUnits) -> OperatorMatrix {
    hamiltonian_oscillator(&tilde_transform(&build_phase_ops(spec), units))
}

/// Lowest `k` eigenvalues of the chosen Hamiltonian.
///
/// Landau truncations carry boundary states below and between the levels,
/// so for [`HamiltonianKind::Landau`] the lowest `k` converged values are
/// reported instead (see [`SpectrumResult::select_converged`]).
pub fn spectrum_point(
    units: &SimUnits,
    kind: HamiltonianKind,
    k: usize,
    spec: &TruncationSpec,
    spec_larger: &TruncationSpec,
) -> Result<SpectrumResult, FockError> {
    match kind {
        HamiltonianKind::Oscillator => eigenspectrum(|s| Ok(oscillator_matrix(s, units)), k, spec, spec_larger),
        HamiltonianKind::Landau => {
            let window = spec.dim() / 4;
            if k == 0 || k > window {
                return Err(FockError::InvalidParameter(format!("k must lie in 1..={window}, got {k}")));
            }
            let full = eigenspectrum(|s| Ok(landau_system(s, units)?.1), window, spec, spec_larger)?;
            Ok(full.select_converged(k))
        }
    }
}

/// Analytic first-order slopes of one level group next to their central
/// finite differences.
#[derive(Clone, Debug, PartialEq)]
pub struct SlopeCheck {
    /// Index of the group's lowest level.
    pub first: usize,
    pub energy: f64,
    pub analytic: Vec<f64>,
    pub finite_difference: Vec<f64>,
}

impl SlopeCheck {
    /// `|a − fd| / max(|fd|, 1)` over the group. The floor is the level
    /// spacing `ħω = 1`, so vanishing slopes are compared absolutely.
    pub fn max_error(&self) -> f64 {
        self.analytic
            .iter()
            .zip(&self.finite_difference)
            .map(|(a, d)| (a - d).abs() / d.abs().max(1.0))
            .fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.max_error() <= SLOPE_TOL
    }
}

/// Unit direction of the perturbation `(η̄, θ̄) = ε·(d_eta, d_theta)` for
/// `units`; the tied direction `(1, 1)` at the commutative point.
pub fn perturbation_direction(units: &SimUnits) -> (f64, f64) {
    let m = units.eta_bar.max(units.theta_bar);
    if m == 0.0 {
        (1.0, 1.0)
    } else {
        (units.eta_bar / m, units.theta_bar / m)
    }
}

/// First-order slopes at `η̄ = θ̄ = 0` for every complete level group among
/// the lowest `k` oscillator levels, along `direction`.
pub fn oscillator_slopes(spec: &TruncationSpec, k: usize, direction: (f64, f64)) -> Result<Vec<SlopeCheck>, FockError> {
    let ops = build_phase_ops(spec);
    let h0 = hamiltonian_oscillator(&tilde_transform(&ops, &SimUnits::commutative()));
    let (energies, vectors) = eigh(&h0)?;
    if k == 0 || k >= energies.len() {
        return Err(FockError::InvalidParameter(format!("k must lie in 1..{}, got {k}", energies.len())));
    }
    let mut groups = group_levels(&energies[..k], DEGENERACY_TOL);
    // a group cut off by k is incomplete
    if let Some(last) = groups.last() {
        if (energies[k] - energies[last[0]]).abs() <= DEGENERACY_TOL {
            groups.pop();
        }
    }
    let v = oscillator_perturbation(&ops, direction.0, direction.1);
    let build = |eps: f64| {
        let t = tilde_with(&ops, TildeParams { eta: eps * direction.0, theta: eps * direction.1 });
        Ok(hamiltonian_oscillator(&t))
    };
    groups
        .iter()
        .map(|g| {
            let states: Vec<StateVector> = g.iter().map(|&i| vectors[i].clone()).collect();
            let e: Vec<f64> = g.iter().map(|&i| energies[i]).collect();
            Ok(SlopeCheck {
                first: g[0],
                energy: e[0],
                analytic: first_order_shift(&states, &e, &v)?,
                finite_difference: central_difference_slopes(build, g[0], g.len(), FD_STEP)?,
            })
        })
        .collect()
}

/// Deviations of the four tilde operators in one state, with the Robertson
/// data of the pairs `(x̃₁, x̃₂)`, `(p̃₁, p̃₂)` and `(x̃₁, p̃₁)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateUncertainty {
    pub label: String,
    /// `[Δx̃₁, Δx̃₂, Δp̃₁, Δp̃₂]`.
    pub deltas: [f64; 4],
    pub xx: UncertaintyPair,
    pub pp: UncertaintyPair,
    pub xp: UncertaintyPair,
}

impl StateUncertainty {
    pub fn measure(label: &str, state: &StateVector, t: &TildeOps) -> Result<Self, FockError> {
        let d = |a: &OperatorMatrix| variance(state, a).map(|v| v.max(0.0).sqrt());
        Ok(StateUncertainty {
            label: label.to_string(),
            deltas: [d(&t.tx1)?, d(&t.tx2)?, d(&t.tp1)?, d(&t.tp2)?],
            xx: uncertainty_pair(state, &t.tx1, &t.tx2)?,
            pp: uncertainty_pair(state, &t.tp1, &t.tp2)?,
            xp: uncertainty_pair(state, &t.tx1, &t.tp1)?,
        })
    }

    pub fn pairs(&self) -> [UncertaintyPair; 3] {
        [self.xx, self.pp, self.xp]
    }

    pub fn robertson_holds(&self) -> bool {
        self.pairs().iter().all(|p| p.product() >= p.bound - ROBERTSON_TOL)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct UncertaintyReport {
    /// Minimal `max(Δx̃₁, Δx̃₂)` over the trial family.
    pub min_dx: f64,
    /// Minimal `max(Δp̃₁, Δp̃₂)` over the trial family.
    pub min_dp: f64,
    /// The two minimizing states, then the Hamiltonian ground state.
    pub states: Vec<StateUncertainty>,
}

impl UncertaintyReport {
    pub fn robertson_holds(&self) -> bool {
        self.states.iter().all(StateUncertainty::robertson_holds)
    }
}

/// Minimal symmetric uncertainties of `(x̃₁, x̃₂)` and `(p̃₁, p̃₂)` over the
/// trial family on `family`, plus the ground state of the relevant
/// Hamiltonian: Landau when `θ̄ = 0 < η̄`, otherwise the oscillator.
pub fn uncertainty_point(
    units: &SimUnits,
    spec: &TruncationSpec,
    spec_larger: &TruncationSpec,
    family: &TruncationSpec,
) -> Result<UncertaintyReport, FockError> {
    let fam = GaussianFamilySpec::new(*family);
    let t = tilde_transform(&build_phase_ops(family), units);
    let mx = minimize_uncertainty(&t.tx1, &t.tx2, &fam)?;
    let mp = minimize_uncertainty(&t.tp1, &t.tp2, &fam)?;
    let ground = if units.theta_bar == 0.0 && units.eta_bar > 0.0 {
        let r = spectrum_point(units, HamiltonianKind::Landau, 1, spec, spec_larger)?;
        let (ops, _) = landau_system(spec, units)?;
        StateUncertainty::measure("landau_ground", &r.states[0], &ops)?
    } else {
        let ops = tilde_transform(&build_phase_ops(spec), units);
        let (_, vectors) = eigh(&hamiltonian_oscillator(&ops))?;
        StateUncertainty::measure("oscillator_ground", &vectors[0], &ops)?
    };
    Ok(UncertaintyReport {
        min_dx: mx.objective(),
        min_dp: mp.objective(),
        states: vec![
            StateUncertainty::measure("min_x", &mx.state, &t)?,
            StateUncertainty::measure("min_p", &mp.state, &t)?,
            ground,
        ],
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SweepTask {
    Spectrum { kind: HamiltonianKind, k: usize },
    Uncertainty,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepSettings {
    pub task: SweepTask,
    pub spec: TruncationSpec,
    pub spec_larger: TruncationSpec,
    /// Truncation for the trial-family search of the uncertainty task.
    pub family: TruncationSpec,
    pub impose_be: bool,
}

fn point_row(eta_bar: f64, theta_bar: f64, s: &SweepSettings) -> Row {
    let quantity = match s.task {
        SweepTask::Spectrum { kind, .. } => format!("{kind}_eigenvalues"),
        SweepTask::Uncertainty => "min_dx;min_dp".into(),
    };
    let mut row = Row::new(eta_bar, theta_bar, s.spec.n_per_mode(), &quantity);
    let units = match validate_units(eta_bar, theta_bar, s.impose_be) {
        Ok(u) => u,
        Err(e) => return row.failed(&e.to_string()),
    };
    row.theta_bar = units.theta_bar;
    match s.task {
        SweepTask::Spectrum { kind, k } => {
            match spectrum_point(&units, kind, k, &s.spec, &s.spec_larger) {
                Ok(r) => {
                    let status = if r.all_converged() { "ok" } else { "unconverged" };
                    row.with_values(r.eigenvalues, r.convergence_delta, status)
                }
                Err(e) => row.failed(&e.to_string()),
            }
        }
        SweepTask::Uncertainty => {
            match uncertainty_point(&units, &s.spec, &s.spec_larger, &s.family) {
                Ok(r) => {
                    let status = if r.robertson_holds() { "ok" } else { "robertson_violation" };
                    row.with_values(vec![r.min_dx, r.min_dp], Vec::new(), status)
                }
                Err(e) => row.failed(&e.to_string()),
            }
        }
    }
}

/// One row per grid point, in grid order. Points run in parallel; a failing
/// point is recorded in its row's status and the rest still run.
pub fn sweep(grid: &[(f64, f64)], settings: &SweepSettings) -> Vec<Row> {
    grid.par_iter().map(|&(e, t)| point_row(e, t, settings)).collect()
}
