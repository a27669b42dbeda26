//! Minimal symmetric uncertainty over two-mode squeezed coherent states.

use num_complex::Complex64;
use rayon::prelude::*;

use super::error::FockError;
use super::matrix::{OperatorMatrix, TruncationSpec};
use super::state::{uncertainty_pair, StateVector, UncertaintyPair};

/// Number of family parameters: `[r1, φ1, r2, φ2, α1, α2]`.
pub const NPARAMS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamRange {
    pub lo: f64,
    pub hi: f64,
}

impl ParamRange {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "empty range [{lo}, {hi}]");
        ParamRange { lo, hi }
    }

    pub fn fixed(v: f64) -> Self {
        ParamRange { lo: v, hi: v }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    fn clamp(&self, v: f64) -> f64 {
        v.clamp(self.lo, self.hi)
    }
}

/// Product states `D(α₁)S(r₁e^{iφ₁})|0⟩ ⊗ D(α₂)S(r₂e^{iφ₂})|0⟩` with real
/// displacements, truncated to the interior band of the operator basis so
/// that operators act on them without boundary error.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianFamilySpec {
    pub spec: TruncationSpec,
    /// Ranges for `[r1, φ1, r2, φ2, α1, α2]`.
    pub ranges: [ParamRange; NPARAMS],
    /// Grid points per squeezing parameter in the coarse search.
    pub grid_points: usize,
    /// Refinement stops once every step is below this.
    pub step_floor: f64,
}

impl GaussianFamilySpec {
    /// `r ∈ [0, 2]`, `φ ∈ [0, 2π]`, `α ∈ [−1, 1]`, 11 grid points, step floor `1e-4`.
    pub fn new(spec: TruncationSpec) -> Self {
        let r = ParamRange::new(0.0, 2.0);
        let phi = ParamRange::new(0.0, std::f64::consts::TAU);
        let alpha = ParamRange::new(-1.0, 1.0);
        GaussianFamilySpec { spec, ranges: [r, phi, r, phi, alpha, alpha], grid_points: 11, step_floor: 1e-4 }
    }

    pub fn is_degenerate(&self) -> bool {
        self.ranges.iter().all(|r| r.width() == 0.0)
    }

    fn clamp(&self, p: [f64; NPARAMS]) -> [f64; NPARAMS] {
        std::array::from_fn(|k| self.ranges[k].clamp(p[k]))
    }

    /// The trial state for `params`, normalized after truncation.
    pub fn state(&self, params: &[f64; NPARAMS]) -> StateVector {
        let n = self.spec.n_per_mode();
        let inner = n - self.spec.margin();
        let m1 = mode_amplitudes(inner, params[0], params[1], params[4]);
        let m2 = mode_amplitudes(inner, params[2], params[3], params[5]);
        let mut amps = vec![Complex64::default(); self.spec.dim()];
        for (n1, a) in m1.iter().enumerate() {
            for (n2, b) in m2.iter().enumerate() {
                amps[self.spec.index(n1, n2)] = a * b;
            }
        }
        StateVector::normalized(amps).expect("vacuum amplitude keeps the state nonzero")
    }
}

/// Fock amplitudes of the eigenstate of `cosh(r)·a + e^{iφ}sinh(r)·a†`,
/// i.e. a squeezed coherent state, from the three-term recurrence.
fn mode_amplitudes(n: usize, r: f64, phi: f64, alpha: f64) -> Vec<Complex64> {
    let mu = r.cosh();
    let nu = Complex64::from_polar(r.sinh(), phi);
    let gamma = alpha * (mu + nu);
    let mut c = vec![Complex64::default(); n];
    c[0] = Complex64::new(1.0, 0.0);
    for k in 0..n - 1 {
        let prev = if k > 0 { nu * (k as f64).sqrt() * c[k - 1] } else { Complex64::default() };
        c[k + 1] = (gamma * c[k] - prev) / (mu * ((k + 1) as f64).sqrt());
    }
    c
}

#[derive(Clone, Debug)]
pub struct MinimizeResult {
    pub state: StateVector,
    pub params: [f64; NPARAMS],
    pub pair: UncertaintyPair,
    pub evaluations: usize,
}

impl MinimizeResult {
    pub fn objective(&self) -> f64 {
        self.pair.delta_a.max(self.pair.delta_b)
    }
}

fn objective(a: &OperatorMatrix, b: &OperatorMatrix, fam: &GaussianFamilySpec, p: &[f64; NPARAMS]) -> f64 {
    let u = uncertainty_pair(&fam.state(p), a, b).expect("family states are normalized");
    u.delta_a.max(u.delta_b)
}

/// Minimizes `max(ΔA, ΔB)` over the family: a coarse grid over the
/// squeezing parameters with displacements at zero (clamped into range), then a
/// compass search along coordinate axes and pairwise diagonals with step
/// halving down to the step floor.
pub fn minimize_uncertainty(a: &OperatorMatrix, b: &OperatorMatrix, fam: &GaussianFamilySpec) -> Result<MinimizeResult, FockError> {
    if fam.is_degenerate() {
        return Err(FockError::DegenerateFamily);
    }
    for m in [a, b] {
        if m.dim() != fam.spec.dim() {
            return Err(FockError::DimensionMismatch { left: m.dim(), right: fam.spec.dim() });
        }
        let d = m.hermiticity_defect();
        if d >= 1e-12 {
            return Err(FockError::NotHermitian(d));
        }
    }
    let g = fam.grid_points.max(1);
    let axis = |k: usize, i: usize| {
        let r = fam.ranges[k];
        if g == 1 || r.width() == 0.0 {
            r.lo + r.width() / 2.0
        } else {
            r.lo + r.width() * i as f64 / (g - 1) as f64
        }
    };
    let grid: Vec<[f64; NPARAMS]> = (0..g.pow(4))
        .map(|flat| {
            let idx = [flat % g, flat / g % g, flat / g / g % g, flat / g / g / g];
            let mid = |k: usize| fam.ranges[k].clamp(0.0);
            [axis(0, idx[0]), axis(1, idx[1]), axis(2, idx[2]), axis(3, idx[3]), mid(4), mid(5)]
        })
        .collect();
    let scores: Vec<f64> = grid.par_iter().map(|p| objective(a, b, fam, p)).collect();
    let mut evaluations = grid.len();
    let best_k = (0..grid.len()).fold(0, |best, k| if scores[k] < scores[best] { k } else { best });
    let (mut best, mut best_f) = (grid[best_k], scores[best_k]);

    let mut dirs: Vec<[f64; NPARAMS]> = Vec::new();
    for i in 0..NPARAMS {
        for s in [1.0, -1.0] {
            let mut d = [0.0; NPARAMS];
            d[i] = s;
            dirs.push(d);
        }
        for j in i + 1..NPARAMS {
            for (si, sj) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                let mut d = [0.0; NPARAMS];
                d[i] = si;
                d[j] = sj;
                dirs.push(d);
            }
        }
    }
    let base: [f64; NPARAMS] = std::array::from_fn(|k| fam.ranges[k].width() / (g.max(2) - 1) as f64);
    let mut t = 1.0;
    while base.iter().any(|w| w * t >= fam.step_floor) {
        let cands: Vec<[f64; NPARAMS]> = dirs
            .iter()
            .map(|d| fam.clamp(std::array::from_fn(|k| best[k] + d[k] * base[k] * t)))
            .filter(|p| *p != best)
            .collect();
        let f: Vec<f64> = cands.par_iter().map(|p| objective(a, b, fam, p)).collect();
        evaluations += cands.len();
        match (0..cands.len()).filter(|&k| f[k] < best_f).min_by(|&x, &y| f[x].total_cmp(&f[y]).then(x.cmp(&y))) {
            Some(k) => {
                best = cands[k];
                best_f = f[k];
            }
            None => t /= 2.0,
        }
    }
    let state = fam.state(&best);
    let pair = uncertainty_pair(&state, a, b)?;
    Ok(MinimizeResult { state, params: best, pair, evaluations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::ops::build_phase_ops;

    #[test]
    fn vacuum_is_the_zero_parameter_member() {
        let s = TruncationSpec::new(6, 2).unwrap();
        let fam = GaussianFamilySpec::new(s);
        assert_eq!(fam.state(&[0.0; NPARAMS]), StateVector::vacuum(&s));
    }

    #[test]
    fn squeezed_vacuum_variance() {
        let s = TruncationSpec::new(48, 4).unwrap();
        let o = build_phase_ops(&s);
        let fam = GaussianFamilySpec::new(s);
        let psi = fam.state(&[0.5, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let v = crate::fock::state::variance(&psi, &o.x1).unwrap();
        assert!((v - (-1.0f64).exp() / 2.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn degenerate_family_rejected() {
        let s = TruncationSpec::new(4, 1).unwrap();
        let o = build_phase_ops(&s);
        let mut fam = GaussianFamilySpec::new(s);
        fam.ranges = [ParamRange::fixed(0.0); NPARAMS];
        assert!(matches!(minimize_uncertainty(&o.x1, &o.p1, &fam), Err(FockError::DegenerateFamily)));
    }

    #[test]
    fn coherent_state_saturates() {
        let s = TruncationSpec::new(12, 2).unwrap();
        let o = build_phase_ops(&s);
        let mut fam = GaussianFamilySpec::new(s);
        fam.grid_points = 5;
        let r = minimize_uncertainty(&o.x1, &o.p1, &fam).unwrap();
        assert!((r.objective() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-6, "{}", r.objective());
    }
}
