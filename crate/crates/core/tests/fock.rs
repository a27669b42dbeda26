//! Truncated Fock-space numerics against closed forms, finite differences,
//! and brute-force uncertainty checks.

use ghq_core::fock::ops::angular_momentum;
use ghq_core::fock::perturbation::FD_STEP;
use ghq_core::fock::sweep::perturbation_direction;
use ghq_core::fock::{
    build_phase_ops, commutator_residual, eigenspectrum, eigh, hamiltonian_oscillator, landau_system,
    minimize_uncertainty, oscillator_slopes, spectrum_point, sweep, tilde_transform, tilde_with, uncertainty_pair,
    variance, GaussianFamilySpec, HamiltonianKind, OperatorMatrix, SimUnits, StateVector, SweepSettings, SweepTask,
    TildeOps, TildeParams, TruncationSpec,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn spec(n: usize, m: usize) -> TruncationSpec {
    TruncationSpec::new(n, m).unwrap()
}

fn tilde(s: &TruncationSpec, eta: f64, theta: f64) -> TildeOps {
    tilde_transform(&build_phase_ops(s), &SimUnits::new(eta, theta).unwrap())
}

/// Oscillator levels `Ω(n+1) − ξ²(η+θ)m/2` with `m ∈ {−n, −n+2, …, n}` and
/// `Ω = ξ²√((1+θ²/4)(1+η²/4))`, sorted.
fn closed_form_levels(eta: f64, theta: f64, count: usize) -> Vec<f64> {
    let xi2 = 1.0 / (1.0 + eta * theta / 4.0);
    let omega = xi2 * ((1.0 + theta * theta / 4.0) * (1.0 + eta * eta / 4.0)).sqrt();
    let mut out = Vec::new();
    for n in 0..12i32 {
        for k in 0..=n {
            let m = (2 * k - n) as f64;
            out.push(omega * (n + 1) as f64 - xi2 * (eta + theta) * m / 2.0);
        }
    }
    out.sort_by(f64::total_cmp);
    out.truncate(count);
    out
}

fn tilde_residuals(t: &TildeOps, s: &TruncationSpec) -> Vec<f64> {
    let xi2 = t.params.xi().powi(2);
    let cases = [
        (&t.tx1, &t.tp1, I),
        (&t.tx2, &t.tp2, I),
        (&t.tx1, &t.tp2, Complex64::default()),
        (&t.tx2, &t.tp1, Complex64::default()),
        (&t.tp1, &t.tp2, I * xi2 * t.params.eta),
        (&t.tx1, &t.tx2, I * xi2 * t.params.theta),
        (&t.tx1, &t.tx1, Complex64::default()),
        (&t.tp2, &t.tp2, Complex64::default()),
        (&t.tp1, &t.tp1, Complex64::default()),
    ];
    cases.iter().map(|(a, b, z)| commutator_residual(a, b, *z, s).unwrap()).collect()
}

#[test]
fn canonical_pairs_on_interior() {
    let s = spec(24, 4);
    let ops = build_phase_ops(&s);
    assert!(commutator_residual(&ops.x1, &ops.p1, I, &s).unwrap() < 1e-12);
    assert_eq!(ops.x1.commutator(&ops.p2).max_abs(), 0.0);
    assert_eq!(commutator_residual(&ops.x1, &ops.x1, Complex64::default(), &s).unwrap(), 0.0);
}

#[test]
fn two_level_position_matrix() {
    let s = spec(2, 1);
    let ops = build_phase_ops(&s);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for n2 in 0..2 {
        let (a, b) = (s.index(0, n2), s.index(1, n2));
        assert!((ops.x1.get(a, b) - h).norm() < 1e-15);
        assert!((ops.x1.get(b, a) - h).norm() < 1e-15);
        assert_eq!(ops.x1.get(a, a), Complex64::default());
    }
}

#[test]
fn deformed_algebra_on_interior() {
    let s = spec(24, 4);
    for r in tilde_residuals(&tilde(&s, 0.1, 0.1), &s) {
        assert!(r < 1e-9, "{r}");
    }
}

#[test]
fn landau_point_keeps_positions_commuting() {
    let s = spec(24, 4);
    let t = tilde(&s, 0.2, 0.0);
    assert_eq!(t.tx1.commutator(&t.tx2).max_abs(), 0.0);
    assert!(commutator_residual(&t.tp1, &t.tp2, I * 0.2, &s).unwrap() < 1e-12);
}

#[test]
fn commutative_point_is_identity_map() {
    let s = spec(8, 2);
    let ops = build_phase_ops(&s);
    let t = tilde(&s, 0.0, 0.0);
    assert_eq!(t.tx1, ops.x1);
    assert_eq!(t.tp2, ops.p2);
}

#[test]
fn commutative_spectrum() {
    let r = spectrum_point(&SimUnits::commutative(), HamiltonianKind::Oscillator, 6, &spec(24, 4), &spec(32, 4)).unwrap();
    for (e, want) in r.eigenvalues.iter().zip([1.0, 2.0, 2.0, 3.0, 3.0, 3.0]) {
        assert!((e - want).abs() < 1e-10, "{e}");
    }
    assert!(r.all_converged());
}

#[test]
fn deformed_spectrum_matches_closed_form() {
    for (eta, theta) in [(0.1, 0.1), (0.2, 0.0), (0.3, 0.05), (0.5, 0.5)] {
        let u = SimUnits::new(eta, theta).unwrap();
        let r = spectrum_point(&u, HamiltonianKind::Oscillator, 6, &spec(24, 4), &spec(32, 4)).unwrap();
        for (e, want) in r.eigenvalues.iter().zip(closed_form_levels(eta, theta, 6)) {
            assert!((e - want).abs() < 1e-9, "({eta}, {theta}): {e} vs {want}");
        }
        assert!(r.convergence_delta.iter().all(|d| *d < 1e-8), "{:?}", r.convergence_delta);
    }
}

#[test]
fn identity_spectrum() {
    let r = eigenspectrum(|t| Ok(OperatorMatrix::identity(t.dim())), 3, &spec(4, 1), &spec(6, 1)).unwrap();
    assert_eq!(r.eigenvalues, vec![1.0; 3]);
    assert_eq!(r.convergence_delta, vec![0.0; 3]);
}

#[test]
fn slopes_match_closed_form_and_differences() {
    let s = spec(20, 4);
    for dir in [(1.0, 1.0), (1.0, 0.0), (0.5, 1.0)] {
        let checks = oscillator_slopes(&s, 6, dir).unwrap();
        assert_eq!(checks.len(), 3);
        for c in &checks {
            assert!(c.passed(), "{c:?}");
            // dE/dε = −(d_eta + d_theta)m/2 at the commutative point
            let n = c.analytic.len() as i32 - 1;
            let mut want: Vec<f64> = (0..=n).map(|k| -(dir.0 + dir.1) * (2 * k - n) as f64 / 2.0).collect();
            want.sort_by(f64::total_cmp);
            for (a, w) in c.analytic.iter().zip(&want) {
                assert!((a - w).abs() < 1e-12, "{a} vs {w}");
            }
        }
    }
}

#[test]
fn forward_difference_of_tied_ground_level() {
    let s = spec(20, 4);
    let ops = build_phase_ops(&s);
    let ground = |eps: f64| {
        let h = hamiltonian_oscillator(&tilde_with(&ops, TildeParams { eta: eps, theta: eps }));
        eigh(&h).unwrap().0[0]
    };
    let fd = (ground(FD_STEP) - ground(0.0)) / FD_STEP;
    let analytic = oscillator_slopes(&s, 1, (1.0, 1.0)).unwrap()[0].analytic[0];
    assert!((fd - analytic).abs() < 1e-5, "{fd} vs {analytic}");
}

#[test]
fn doublet_splits_symmetrically() {
    let c = &oscillator_slopes(&spec(16, 4), 3, (1.0, 1.0)).unwrap()[1];
    assert_eq!(c.first, 1);
    assert!((c.analytic[0] + c.analytic[1]).abs() < 1e-12);
    assert!(c.analytic[1] > 0.5);
}

#[test]
fn angular_momentum_commutes_with_deformed_oscillator() {
    let s = spec(20, 4);
    let ops = build_phase_ops(&s);
    let h = hamiltonian_oscillator(&tilde_transform(&ops, &SimUnits::new(0.3, 0.1).unwrap()));
    let l = angular_momentum(&ops);
    assert!(commutator_residual(&h, &l, Complex64::default(), &s).unwrap() < 1e-12);
}

#[test]
fn landau_levels() {
    let u = SimUnits::new(0.2, 0.0).unwrap();
    let r = spectrum_point(&u, HamiltonianKind::Landau, 40, &spec(32, 4), &spec(40, 4)).unwrap();
    let conv = r.converged_values();
    assert!(conv.len() >= 10);
    for e in &conv {
        let n = (e / 0.2 - 0.5).round();
        assert!((e - 0.2 * (n + 0.5)).abs() < 1e-6, "{e}");
    }
    assert!((conv[0] - 0.1).abs() < 1e-6);
    let next = conv.iter().find(|e| **e > conv[0] + 0.1).unwrap();
    assert!((next - conv[0] - 0.2).abs() < 1e-6);
}

#[test]
fn vacuum_variances() {
    let s = spec(12, 2);
    let ops = build_phase_ops(&s);
    let v = StateVector::vacuum(&s);
    assert!((variance(&v, &ops.x1).unwrap() - 0.5).abs() < 1e-15);
    assert!((variance(&v, &ops.p1).unwrap() - 0.5).abs() < 1e-15);
    let p = uncertainty_pair(&v, &ops.x1, &ops.p1).unwrap();
    assert!((p.product() - 0.5).abs() < 1e-15 && (p.bound - 0.5).abs() < 1e-15);
}

#[test]
fn landau_ground_saturates() {
    let (s, l) = (spec(32, 4), spec(40, 4));
    let u = SimUnits::new(0.2, 0.0).unwrap();
    let r = spectrum_point(&u, HamiltonianKind::Landau, 1, &s, &l).unwrap();
    let (t, _) = landau_system(&s, &u).unwrap();
    let g = &r.states[0];
    assert!((variance(g, &t.tp1).unwrap() - 0.1).abs() < 1e-6);
    let pp = uncertainty_pair(g, &t.tp1, &t.tp2).unwrap();
    assert!((pp.product() - 0.1).abs() < 1e-6);
}

#[test]
fn robertson_on_random_interior_states() {
    let s = spec(24, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (eta, theta) in [(0.2, 0.0), (0.1, 0.1), (0.5, 0.3)] {
        let t = tilde(&s, eta, theta);
        let xi2 = t.params.xi().powi(2);
        for _ in 0..100 {
            let v = StateVector::random_interior(&s, &mut rng);
            let pp = uncertainty_pair(&v, &t.tp1, &t.tp2).unwrap();
            let xx = uncertainty_pair(&v, &t.tx1, &t.tx2).unwrap();
            assert!((pp.bound - xi2 * eta / 2.0).abs() < 1e-12);
            assert!(pp.product() >= xi2 * eta / 2.0 - 1e-9);
            assert!(xx.product() >= xi2 * theta / 2.0 - 1e-9);
        }
    }
}

#[test]
fn coherent_state_minimum() {
    let s = spec(16, 4);
    let ops = build_phase_ops(&s);
    let r = minimize_uncertainty(&ops.x1, &ops.p1, &GaussianFamilySpec::new(s)).unwrap();
    assert!((r.objective() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-6, "{}", r.objective());
}

fn sweep_settings() -> SweepSettings {
    SweepSettings {
        task: SweepTask::Spectrum { kind: HamiltonianKind::Oscillator, k: 6 },
        spec: spec(24, 4),
        spec_larger: spec(32, 4),
        family: spec(24, 4),
        impose_be: true,
    }
}

#[test]
fn tied_sweep_ground_level_is_flat() {
    let grid = [(0.05, 0.0), (0.1, 0.0), (0.2, 0.0)];
    let rows = sweep(&grid, &sweep_settings());
    let ground: Vec<f64> = rows.iter().map(|r| r.value[0]).collect();
    for (r, (eta, _)) in rows.iter().zip(grid) {
        assert_eq!(r.theta_bar, eta);
        assert_eq!(r.status, "ok");
    }
    for g in &ground {
        assert!((g - 1.0).abs() < 1e-12, "{g}");
    }
    for w in ground.windows(2) {
        assert!(w[1] >= w[0] - 1e-12);
    }
    let slope = oscillator_slopes(&spec(16, 4), 1, perturbation_direction(&SimUnits::with_be_condition(0.1).unwrap()))
        .unwrap()[0]
        .analytic[0];
    assert!(slope.abs() < 1e-12);
}

#[test]
fn momentum_only_sweep_ground_level_rises() {
    let grid = [(0.05, 0.0), (0.1, 0.0), (0.2, 0.0)];
    let rows = sweep(&grid, &SweepSettings { impose_be: false, ..sweep_settings() });
    let ground: Vec<f64> = rows.iter().map(|r| r.value[0]).collect();
    for (g, (eta, _)) in ground.iter().zip(grid) {
        assert!((g - closed_form_levels(eta, 0.0, 1)[0]).abs() < 1e-10);
    }
    assert!(ground.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn sweep_output_is_order_preserving_and_repeatable() {
    let grid: Vec<(f64, f64)> = [0.3, 0.0, 0.15, 0.45].iter().map(|&e| (e, e / 3.0)).collect();
    let s = SweepSettings { impose_be: false, spec: spec(16, 4), spec_larger: spec(20, 4), ..sweep_settings() };
    let a = sweep(&grid, &s);
    let b = sweep(&grid, &s);
    assert_eq!(a, b);
    for (r, (e, t)) in a.iter().zip(&grid) {
        assert_eq!((r.eta_bar, r.theta_bar), (*e, *t));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn interior_exactness(eta in 0.0..=0.5f64, theta in 0.0..=0.5f64) {
        let s = spec(16, 4);
        for r in tilde_residuals(&tilde(&s, eta, theta), &s) {
            prop_assert!(r < 1e-9);
        }
    }

    #[test]
    fn operators_are_hermitian(eta in 0.0..=0.5f64, theta in 0.0..=0.5f64) {
        let s = spec(10, 2);
        let t = tilde(&s, eta, theta);
        for m in [&t.tx1, &t.tx2, &t.tp1, &t.tp2, &hamiltonian_oscillator(&t)] {
            prop_assert!(m.is_hermitian());
        }
        let (lt, lh) = landau_system(&s, &SimUnits::new(eta, 0.0).unwrap()).unwrap();
        prop_assert!(lh.is_hermitian() && lt.tp1.is_hermitian());
    }

    #[test]
    fn robertson_for_any_interior_state(seed in any::<u64>(), eta in 0.0..=0.5f64, theta in 0.0..=0.5f64) {
        let s = spec(12, 3);
        let t = tilde(&s, eta, theta);
        let v = StateVector::random_interior(&s, &mut ChaCha8Rng::seed_from_u64(seed));
        for (a, b) in [(&t.tx1, &t.tx2), (&t.tp1, &t.tp2), (&t.tx1, &t.tp1), (&t.tx2, &t.tp1)] {
            let p = uncertainty_pair(&v, a, b).unwrap();
            prop_assert!(p.product() >= p.bound - 1e-12);
        }
    }
}
