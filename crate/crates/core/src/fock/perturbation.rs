//! First-order (degenerate) perturbation theory and its finite-difference check.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::eigen::{eigenvalues, DEGENERACY_TOL};
use super::error::FockError;
use super::matrix::OperatorMatrix;
use super::state::StateVector;

/// Step used for central-difference slopes.
pub const FD_STEP: f64 = 1e-4;

/// First-order slopes `dE/dε` of a degenerate level group: the eigenvalues
/// of `V` restricted to the group's eigenvectors, ascending.
pub fn first_order_shift(group: &[StateVector], energies: &[f64], v: &OperatorMatrix) -> Result<Vec<f64>, FockError> {
    if group.is_empty() || group.len() != energies.len() {
        return Err(FockError::InvalidParameter("level group needs one energy per eigenvector".into()));
    }
    let lo = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = energies.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi - lo > DEGENERACY_TOL {
        return Err(FockError::NotDegenerate { spread: hi - lo, tolerance: DEGENERACY_TOL });
    }
    for s in group {
        if s.dim() != v.dim() {
            return Err(FockError::DimensionMismatch { left: v.dim(), right: s.dim() });
        }
    }
    let g = group.len();
    let applied: Vec<Vec<Complex64>> = group.iter().map(|s| v.apply(s.amplitudes())).collect();
    let mut w = DMatrix::<Complex64>::zeros(g, g);
    for i in 0..g {
        for j in 0..g {
            w[(i, j)] = group[i].amplitudes().iter().zip(&applied[j]).map(|(a, b)| a.conj() * b).sum();
        }
    }
    // symmetrize against rounding
    let w = (&w + w.adjoint()) * Complex64::new(0.5, 0.0);
    let mut slopes: Vec<f64> = SymmetricEigen::new(w).eigenvalues.iter().copied().collect();
    slopes.sort_by(f64::total_cmp);
    Ok(slopes)
}

/// Central-difference slopes of the levels `first..first + count` of
/// `build(ε)`, ascending.
///
/// Levels split linearly out of a degeneracy swap order between `−h` and
/// `+h`, so the `k`-th lowest level at `+h` is paired with the `k`-th highest
/// of the group at `−h`.
pub fn central_difference_slopes<F>(build: F, first: usize, count: usize, h: f64) -> Result<Vec<f64>, FockError>
where
    F: Fn(f64) -> Result<OperatorMatrix, FockError>,
{
    let plus = eigenvalues(&build(h)?)?;
    let minus = eigenvalues(&build(-h)?)?;
    if first + count > plus.len() {
        return Err(FockError::InvalidParameter(format!("level group {first}..{} out of range", first + count)));
    }
    let mut slopes: Vec<f64> =
        (0..count).map(|k| (plus[first + k] - minus[first + count - 1 - k]) / (2.0 * h)).collect();
    slopes.sort_by(f64::total_cmp);
    Ok(slopes)
}
