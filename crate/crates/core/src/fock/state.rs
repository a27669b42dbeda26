//! States, variances, and the Robertson bound.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::error::FockError;
use super::matrix::{OperatorMatrix, TruncationSpec};

/// Tolerance on `|‖ψ‖ − 1|` for expectation values.
pub const NORM_TOL: f64 = 1e-12;
/// Negative variances above this are rounding and are clamped to zero.
pub const VARIANCE_CLAMP: f64 = -1e-14;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

impl StateVector {
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Self {
        StateVector { amps }
    }

    /// Scales `amps` to unit norm; `None` for the zero vector.
    pub fn normalized(amps: Vec<Complex64>) -> Option<Self> {
        let n = dot(&amps, &amps).re.sqrt();
        (n > 0.0).then(|| StateVector { amps: amps.into_iter().map(|a| a / n).collect() })
    }

    /// `|n1, n2⟩`.
    pub fn fock(spec: &TruncationSpec, n1: usize, n2: usize) -> Self {
        let mut amps = vec![Complex64::default(); spec.dim()];
        amps[spec.index(n1, n2)] = Complex64::new(1.0, 0.0);
        StateVector { amps }
    }

    pub fn vacuum(spec: &TruncationSpec) -> Self {
        Self::fock(spec, 0, 0)
    }

    /// Gaussian random amplitudes on the interior band, normalized.
    pub fn random_interior<R: Rng + ?Sized>(spec: &TruncationSpec, rng: &mut R) -> Self {
        let amps = (0..spec.dim())
            .map(|i| {
                if spec.is_interior(i) {
                    Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
                } else {
                    Complex64::default()
                }
            })
            .collect();
        Self::normalized(amps).expect("random vector is nonzero")
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm(&self) -> f64 {
        dot(&self.amps, &self.amps).re.sqrt()
    }

    pub fn inner(&self, o: &StateVector) -> Complex64 {
        dot(&self.amps, &o.amps)
    }

    fn check(&self, a: &OperatorMatrix) -> Result<(), FockError> {
        if a.dim() != self.dim() {
            return Err(FockError::DimensionMismatch { left: a.dim(), right: self.dim() });
        }
        let n = self.norm();
        if (n - 1.0).abs() > NORM_TOL {
            return Err(FockError::NotNormalized(n));
        }
        Ok(())
    }

    /// `⟨ψ|A|ψ⟩`.
    pub fn expectation(&self, a: &OperatorMatrix) -> Result<Complex64, FockError> {
        self.check(a)?;
        Ok(dot(&self.amps, &a.apply(&self.amps)))
    }
}

fn variance_of(psi: &StateVector, a_psi: &[Complex64]) -> f64 {
    let mean = dot(&psi.amps, a_psi).re;
    let v = dot(a_psi, a_psi).re - mean * mean;
    if (VARIANCE_CLAMP..0.0).contains(&v) {
        0.0
    } else {
        v
    }
}

/// `⟨A²⟩ − ⟨A⟩²` for Hermitian `A`, computed as `‖Aψ‖² − ⟨A⟩²`.
pub fn variance(state: &StateVector, a: &OperatorMatrix) -> Result<f64, FockError> {
    state.check(a)?;
    Ok(variance_of(state, &a.apply(&state.amps)))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UncertaintyPair {
    pub delta_a: f64,
    pub delta_b: f64,
    /// `|⟨[A, B]⟩|/2`.
    pub bound: f64,
}

impl UncertaintyPair {
    pub fn product(&self) -> f64 {
        self.delta_a * self.delta_b
    }

    /// `ΔA·ΔB / bound`; infinite when the bound vanishes.
    pub fn saturation(&self) -> f64 {
        self.product() / self.bound
    }
}

pub fn uncertainty_pair(state: &StateVector, a: &OperatorMatrix, b: &OperatorMatrix) -> Result<UncertaintyPair, FockError> {
    state.check(a)?;
    state.check(b)?;
    let (ap, bp) = (a.apply(&state.amps), b.apply(&state.amps));
    // ⟨[A,B]⟩ = ⟨Aψ,Bψ⟩ − ⟨Bψ,Aψ⟩ = 2i·Im⟨Aψ,Bψ⟩
    let bound = dot(&ap, &bp).im.abs();
    Ok(UncertaintyPair {
        delta_a: variance_of(state, &ap).max(0.0).sqrt(),
        delta_b: variance_of(state, &bp).max(0.0).sqrt(),
        bound,
    })
}
