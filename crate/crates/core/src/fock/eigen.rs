//! Hermitian eigensolver and convergence-checked spectra.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::error::FockError;
use super::matrix::{OperatorMatrix, TruncationSpec};
use super::state::StateVector;

/// Absolute tolerance for grouping eigenvalues into degenerate levels.
pub const DEGENERACY_TOL: f64 = 1e-6;
/// Largest convergence delta for an eigenvalue to count as converged.
pub const CONVERGENCE_TOL: f64 = 1e-6;

const HERMITIAN_TOL: f64 = 1e-12;

/// Connected components of the nonzero pattern, each sorted ascending.
fn components(h: &OperatorMatrix) -> Vec<Vec<usize>> {
    let dim = h.dim();
    let mut label = vec![usize::MAX; dim];
    let mut out = Vec::new();
    let csr = h.csr();
    for start in 0..dim {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        label[start] = id;
        let mut members = vec![start];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            if let Some(row) = csr.outer_view(i) {
                for (j, _) in row.iter() {
                    if label[j] == usize::MAX {
                        label[j] = id;
                        members.push(j);
                        stack.push(j);
                    }
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Fixes the global phase so the first component of largest magnitude is
/// real and positive.
fn fix_phase(v: &mut [Complex64]) {
    let mut best = 0;
    for (k, z) in v.iter().enumerate() {
        if z.norm() > v[best].norm() * (1.0 + 1e-9) {
            best = k;
        }
    }
    let n = v[best].norm();
    if n > 0.0 {
        let ph = v[best].conj() / n;
        for z in v.iter_mut() {
            *z *= ph;
        }
    }
}

/// Full eigendecomposition of a Hermitian matrix, ascending.
pub fn eigh(h: &OperatorMatrix) -> Result<(Vec<f64>, Vec<StateVector>), FockError> {
    let dim = h.dim();
    let mut pairs: Vec<(f64, usize, usize, Vec<Complex64>)> = Vec::with_capacity(dim);
    for (b, (members, m)) in blocks(h)?.into_iter().enumerate() {
        let eig = SymmetricEigen::new(m);
        for c in 0..members.len() {
            let mut v = vec![Complex64::default(); dim];
            for (local, &g) in members.iter().enumerate() {
                v[g] = eig.eigenvectors[(local, c)];
            }
            fix_phase(&mut v);
            pairs.push((eig.eigenvalues[c], b, c, v));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let values = pairs.iter().map(|p| p.0).collect();
    let vectors = pairs.into_iter().map(|p| StateVector::from_amplitudes(p.3)).collect();
    Ok((values, vectors))
}

type Block = (Vec<usize>, DMatrix<Complex64>);

/// Dense blocks of the connected components of `h`, with their basis indices.
fn blocks(h: &OperatorMatrix) -> Result<Vec<Block>, FockError> {
    let defect = h.hermiticity_defect();
    if defect >= HERMITIAN_TOL {
        return Err(FockError::NotHermitian(defect));
    }
    let mut pos = vec![usize::MAX; h.dim()];
    Ok(components(h)
        .into_iter()
        .map(|members| {
            let k = members.len();
            for (local, &g) in members.iter().enumerate() {
                pos[g] = local;
            }
            let mut m = DMatrix::<Complex64>::zeros(k, k);
            for (local, &g) in members.iter().enumerate() {
                if let Some(row) = h.csr().outer_view(g) {
                    for (j, &v) in row.iter() {
                        m[(local, pos[j])] = v;
                    }
                }
            }
            (members, m)
        })
        .collect())
}

/// All eigenvalues, ascending.
pub fn eigenvalues(h: &OperatorMatrix) -> Result<Vec<f64>, FockError> {
    let mut values: Vec<f64> = blocks(h)?.into_iter().flat_map(|(_, m)| m.symmetric_eigenvalues().data.as_vec().clone()).collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Splits an ascending list into runs whose neighbours differ by at most `tol`.
pub fn group_levels(values: &[f64], tol: f64) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (k, v) in values.iter().enumerate() {
        match groups.last_mut() {
            Some(g) if (v - values[*g.last().unwrap()]).abs() <= tol => g.push(k),
            _ => groups.push(vec![k]),
        }
    }
    groups
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumResult {
    pub n_per_mode: usize,
    pub n_larger: usize,
    pub eigenvalues: Vec<f64>,
    /// Per eigenvalue, the larger of its distance to the nearest eigenvalue
    /// of the larger truncation and the residual `‖H'v − Ev‖` of its
    /// eigenvector embedded in that truncation.
    pub convergence_delta: Vec<f64>,
    /// Indices into `eigenvalues` grouped by [`DEGENERACY_TOL`].
    pub groups: Vec<Vec<usize>>,
    /// Eigenvectors of the `N` truncation, one per eigenvalue.
    pub states: Vec<StateVector>,
}

impl SpectrumResult {
    pub fn is_converged(&self, k: usize) -> bool {
        self.convergence_delta[k] < CONVERGENCE_TOL
    }

    pub fn all_converged(&self) -> bool {
        (0..self.eigenvalues.len()).all(|k| self.is_converged(k))
    }

    /// Eigenvalues whose delta is below [`CONVERGENCE_TOL`].
    pub fn converged_values(&self) -> Vec<f64> {
        (0..self.eigenvalues.len()).filter(|&k| self.is_converged(k)).map(|k| self.eigenvalues[k]).collect()
    }

    /// Keeps the `k` lowest converged entries, topped up with the lowest
    /// unconverged ones when fewer than `k` converged.
    pub fn select_converged(&self, k: usize) -> SpectrumResult {
        let n = self.eigenvalues.len();
        let mut keep: Vec<usize> = (0..n).filter(|&i| self.is_converged(i)).take(k).collect();
        if keep.len() < k {
            keep.extend((0..n).filter(|&i| !self.is_converged(i)).take(k - keep.len()));
            keep.sort_unstable();
        }
        let eigenvalues: Vec<f64> = keep.iter().map(|&i| self.eigenvalues[i]).collect();
        SpectrumResult {
            n_per_mode: self.n_per_mode,
            n_larger: self.n_larger,
            groups: group_levels(&eigenvalues, DEGENERACY_TOL),
            convergence_delta: keep.iter().map(|&i| self.convergence_delta[i]).collect(),
            states: keep.iter().map(|&i| self.states[i].clone()).collect(),
            eigenvalues,
        }
    }
}

fn nearest_distance(x: f64, sorted: &[f64]) -> f64 {
    let i = sorted.partition_point(|v| *v < x);
    [i.checked_sub(1), Some(i)]
        .into_iter()
        .flatten()
        .filter_map(|j| sorted.get(j))
        .map(|v| (v - x).abs())
        .fold(f64::INFINITY, f64::min)
}

/// Zero-pads a state of `from` into the basis of the larger `to`.
pub fn embed(v: &StateVector, from: &TruncationSpec, to: &TruncationSpec) -> StateVector {
    let mut out = vec![Complex64::default(); to.dim()];
    for (i, a) in v.amplitudes().iter().enumerate() {
        let (n1, n2) = from.levels(i);
        out[to.index(n1, n2)] = *a;
    }
    StateVector::from_amplitudes(out)
}

fn residual_norm(h: &OperatorMatrix, v: &StateVector, e: f64) -> f64 {
    let hv = h.apply(v.amplitudes());
    hv.iter().zip(v.amplitudes()).map(|(a, b)| (a - b * e).norm_sqr()).sum::<f64>().sqrt()
}

/// Lowest `k` eigenvalues of `build(spec)` with convergence deltas against
/// `build(spec_larger)`.
///
/// The residual term is a certified bound: a Hermitian matrix always has an
/// eigenvalue within `‖H'v − Ev‖` of `E` for unit `v`. It rejects states
/// localized at the truncation boundary whose values happen to lie close to
/// some eigenvalue of the larger truncation.
pub fn eigenspectrum<F>(
    build: F,
    k: usize,
    spec: &TruncationSpec,
    spec_larger: &TruncationSpec,
) -> Result<SpectrumResult, FockError>
where
    F: Fn(&TruncationSpec) -> Result<OperatorMatrix, FockError>,
{
    if spec_larger.n_per_mode() <= spec.n_per_mode() {
        return Err(FockError::InvalidTruncation(format!(
            "larger truncation {} must exceed {}",
            spec_larger.n_per_mode(),
            spec.n_per_mode()
        )));
    }
    if k == 0 || k > spec.dim() / 4 {
        return Err(FockError::InvalidParameter(format!("k must lie in 1..={}, got {k}", spec.dim() / 4)));
    }
    let (small, mut vectors) = eigh(&build(spec)?)?;
    vectors.truncate(k);
    let h_large = build(spec_larger)?;
    let large = eigenvalues(&h_large)?;
    let eigenvalues: Vec<f64> = small[..k].to_vec();
    let convergence_delta = eigenvalues
        .iter()
        .zip(&vectors)
        .map(|(&e, v)| nearest_distance(e, &large).max(residual_norm(&h_large, &embed(v, spec, spec_larger), e)))
        .collect();
    let groups = group_levels(&eigenvalues, DEGENERACY_TOL);
    Ok(SpectrumResult {
        n_per_mode: spec.n_per_mode(),
        n_larger: spec_larger.n_per_mode(),
        eigenvalues,
        convergence_delta,
        groups,
        states: vectors,
    })
}
