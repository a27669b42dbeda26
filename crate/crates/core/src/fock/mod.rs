//! Truncated two-mode Fock-space numerics.
//!
//! Basis index of `|n1, n2⟩` is `n1·N + n2`; oscillator units `ħ = μ = ω = 1`.

pub mod eigen;
pub mod error;
pub mod expr;
pub mod matrix;
pub mod minimize;
pub mod ops;
pub mod perturbation;
pub mod state;
pub mod sweep;

pub use eigen::{eigenspectrum, eigh, SpectrumResult};
pub use error::FockError;
pub use matrix::{commutator_residual, OperatorMatrix, TruncationSpec};
pub use minimize::{minimize_uncertainty, GaussianFamilySpec, MinimizeResult};
pub use ops::{
    build_phase_ops, build_phase_ops_scaled, hamiltonian_landau, hamiltonian_oscillator, landau_length, landau_system,
    oscillator_perturbation, tilde_transform, tilde_with, PhaseOps, SimUnits, TildeOps, TildeParams,
};
pub use perturbation::{central_difference_slopes, first_order_shift};
pub use state::{uncertainty_pair, variance, StateVector, UncertaintyPair};
pub use sweep::{
    oscillator_slopes, spectrum_point, sweep, uncertainty_point, validate_units, HamiltonianKind, SlopeCheck, StateUncertainty,
    SweepSettings, SweepTask, UncertaintyReport,
};
