//! Phase-space operators, the tilde map, and Hamiltonians in oscillator
//! units `ħ = μ = ω = 1`.

use num_complex::Complex64;

use super::error::FockError;
use super::matrix::{OperatorMatrix, TruncationSpec};

/// Dimensionless deformation parameters `η̄ = η/(ħμω)`, `θ̄ = θμω/ħ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimUnits {
    pub eta_bar: f64,
    pub theta_bar: f64,
    /// Whether `θ̄ = η̄` was imposed rather than chosen.
    pub be_imposed: bool,
}

impl SimUnits {
    pub fn new(eta_bar: f64, theta_bar: f64) -> Result<Self, FockError> {
        for (name, v) in [("eta_bar", eta_bar), ("theta_bar", theta_bar)] {
            if !v.is_finite() || v < 0.0 {
                return Err(FockError::InvalidParameter(format!("{name} must be finite and non-negative, got {v}")));
            }
        }
        Ok(SimUnits { eta_bar, theta_bar, be_imposed: false })
    }

    /// `θ̄ = η̄`, the creation operators commute.
    pub fn with_be_condition(eta_bar: f64) -> Result<Self, FockError> {
        Ok(SimUnits { be_imposed: true, ..Self::new(eta_bar, eta_bar)? })
    }

    pub fn commutative() -> Self {
        SimUnits { eta_bar: 0.0, theta_bar: 0.0, be_imposed: false }
    }

    pub fn xi(&self) -> f64 {
        TildeParams::from(*self).xi()
    }
}

/// Signed deformation parameters; negative values are allowed so that
/// derivatives can be taken by central differences around zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TildeParams {
    pub eta: f64,
    pub theta: f64,
}

impl From<SimUnits> for TildeParams {
    fn from(u: SimUnits) -> Self {
        TildeParams { eta: u.eta_bar, theta: u.theta_bar }
    }
}

impl TildeParams {
    /// `ξ = (1 + θη/4)^(-1/2)`.
    pub fn xi(&self) -> f64 {
        (1.0 + self.theta * self.eta / 4.0).powf(-0.5)
    }
}

#[derive(Clone, Debug)]
pub struct PhaseOps {
    pub spec: TruncationSpec,
    /// Basis length `ℓ`: `x = ℓ(a + a†)/√2`, `p = (a − a†)/(iℓ√2)`.
    pub length: f64,
    pub x1: OperatorMatrix,
    pub x2: OperatorMatrix,
    pub p1: OperatorMatrix,
    pub p2: OperatorMatrix,
}

#[derive(Clone, Debug)]
pub struct TildeOps {
    pub spec: TruncationSpec,
    pub params: TildeParams,
    pub tx1: OperatorMatrix,
    pub tx2: OperatorMatrix,
    pub tp1: OperatorMatrix,
    pub tp2: OperatorMatrix,
}

/// Annihilation operator of `mode` (1 or 2) on the two-mode basis.
pub fn annihilation(spec: &TruncationSpec, mode: u8) -> OperatorMatrix {
    let n = spec.n_per_mode();
    let mut entries = Vec::new();
    for n1 in 0..n {
        for n2 in 0..n {
            let (k, to) = match mode {
                1 if n1 > 0 => (n1, spec.index(n1 - 1, n2)),
                2 if n2 > 0 => (n2, spec.index(n1, n2 - 1)),
                _ => continue,
            };
            entries.push((to, spec.index(n1, n2), Complex64::new((k as f64).sqrt(), 0.0)));
        }
    }
    OperatorMatrix::from_triplets(spec.dim(), entries)
}

/// `x = (a + a†)/√2`, `p = (a − a†)/(i√2)` for both modes.
pub fn build_phase_ops(spec: &TruncationSpec) -> PhaseOps {
    build_phase_ops_scaled(spec, 1.0)
}

/// Phase-space operators in a Fock basis of length `ℓ`. Every `ℓ > 0` gives
/// the same algebra; `ℓ` only controls which states a truncation captures.
pub fn build_phase_ops_scaled(spec: &TruncationSpec, length: f64) -> PhaseOps {
    assert!(length > 0.0 && length.is_finite(), "basis length must be positive");
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let make = |mode| {
        let a = annihilation(spec, mode);
        let ad = a.adjoint();
        let x = a.add(&ad).scale_re(s * length);
        let p = a.sub(&ad).scale(Complex64::new(0.0, -s / length));
        (x, p)
    };
    let (x1, p1) = make(1);
    let (x2, p2) = make(2);
    PhaseOps { spec: *spec, length, x1, x2, p1, p2 }
}

/// Basis length `√(2/η̄)` in which lowest-Landau-level states have finitely
/// many Fock components; 1 when `η̄ = 0`.
pub fn landau_length(eta_bar: f64) -> f64 {
    if eta_bar > 0.0 {
        (2.0 / eta_bar).sqrt()
    } else {
        1.0
    }
}

/// `(p̃₁² + p̃₂²)/2` built in the basis of length [`landau_length`].
pub fn landau_system(spec: &TruncationSpec, units: &SimUnits) -> Result<(TildeOps, OperatorMatrix), FockError> {
    let ops = build_phase_ops_scaled(spec, landau_length(units.eta_bar));
    let t = tilde_transform(&ops, units);
    let h = hamiltonian_landau(&t)?;
    Ok((t, h))
}

/// Matrix form of `x̃_i = ξ(x_i − θε_ij p_j/2)`, `p̃_i = ξ(p_i + ηε_ij x_j/2)`.
pub fn tilde_transform(ops: &PhaseOps, units: &SimUnits) -> TildeOps {
    tilde_with(ops, TildeParams::from(*units))
}

/// As [`tilde_transform`] for signed parameters.
///
/// # Panics
/// If `1 + θη/4 ≤ 0`.
pub fn tilde_with(ops: &PhaseOps, params: TildeParams) -> TildeOps {
    assert!(1.0 + params.theta * params.eta / 4.0 > 0.0, "1 + theta*eta/4 must be positive");
    let xi = params.xi();
    let (h_eta, h_theta) = (params.eta / 2.0, params.theta / 2.0);
    let comb = |a: &OperatorMatrix, b: &OperatorMatrix, c: f64| a.add(&b.scale_re(c)).scale_re(xi);
    TildeOps {
        spec: ops.spec,
        params,
        tx1: comb(&ops.x1, &ops.p2, -h_theta),
        tx2: comb(&ops.x2, &ops.p1, h_theta),
        tp1: comb(&ops.p1, &ops.x2, h_eta),
        tp2: comb(&ops.p2, &ops.x1, -h_eta),
    }
}

fn half_sum_of_squares(ops: &[&OperatorMatrix]) -> OperatorMatrix {
    let dim = ops[0].dim();
    ops.iter().fold(OperatorMatrix::zeros(dim), |acc, o| acc.add(&o.mul(o))).scale_re(0.5)
}

/// `(p̃₁² + p̃₂² + x̃₁² + x̃₂²)/2`.
pub fn hamiltonian_oscillator(t: &TildeOps) -> OperatorMatrix {
    half_sum_of_squares(&[&t.tp1, &t.tp2, &t.tx1, &t.tx2])
}

/// `(p̃₁² + p̃₂²)/2`; requires `θ̄ = 0`.
pub fn hamiltonian_landau(t: &TildeOps) -> Result<OperatorMatrix, FockError> {
    if t.params.theta != 0.0 {
        return Err(FockError::Precondition(format!(
            "the Landau Hamiltonian needs theta_bar = 0, got {}",
            t.params.theta
        )));
    }
    Ok(half_sum_of_squares(&[&t.tp1, &t.tp2]))
}

/// `dH/dε` at `η = θ = 0` for the oscillator Hamiltonian along
/// `(η, θ) = ε·(d_eta, d_theta)`.
pub fn oscillator_perturbation(ops: &PhaseOps, d_eta: f64, d_theta: f64) -> OperatorMatrix {
    // ξ is stationary at the origin, so only the linear shifts contribute.
    let pairs = [
        (&ops.p1, ops.x2.scale_re(d_eta / 2.0)),
        (&ops.p2, ops.x1.scale_re(-d_eta / 2.0)),
        (&ops.x1, ops.p2.scale_re(-d_theta / 2.0)),
        (&ops.x2, ops.p1.scale_re(d_theta / 2.0)),
    ];
    let dim = ops.spec.dim();
    pairs
        .iter()
        .fold(OperatorMatrix::zeros(dim), |acc, (o, d)| acc.add(&o.mul(d)).add(&d.mul(o)))
        .scale_re(0.5)
}

/// Orbital angular momentum `L = x₁p₂ − x₂p₁`.
pub fn angular_momentum(ops: &PhaseOps) -> OperatorMatrix {
    ops.x1.mul(&ops.p2).sub(&ops.x2.mul(&ops.p1))
}
