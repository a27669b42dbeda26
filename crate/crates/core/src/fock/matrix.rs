//! Sparse complex operators on the truncated two-mode Fock basis.

use num_complex::Complex64;
use sprs::{CsMat, TriMat};

use super::error::FockError;

/// Largest supported number of levels per mode.
pub const MAX_LEVELS: usize = 1000;

/// `N` Fock levels per mode and the width `m` of the boundary band excluded
/// from residual checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TruncationSpec {
    n: usize,
    margin: usize,
}

impl TruncationSpec {
    pub fn new(n_per_mode: usize, margin: usize) -> Result<Self, FockError> {
        if n_per_mode < 2 {
            return Err(FockError::InvalidTruncation(format!("need at least 2 levels per mode, got {n_per_mode}")));
        }
        if n_per_mode > MAX_LEVELS {
            return Err(FockError::Resource(format!("{n_per_mode} levels per mode exceeds the limit of {MAX_LEVELS}")));
        }
        if margin >= n_per_mode {
            return Err(FockError::InvalidTruncation(format!("margin {margin} must be below N = {n_per_mode}")));
        }
        Ok(TruncationSpec { n: n_per_mode, margin })
    }

    pub fn n_per_mode(&self) -> usize {
        self.n
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    /// Basis index of `|n1, n2⟩`.
    pub fn index(&self, n1: usize, n2: usize) -> usize {
        n1 * self.n + n2
    }

    pub fn levels(&self, idx: usize) -> (usize, usize) {
        (idx / self.n, idx % self.n)
    }

    /// Whether `idx` lies in the interior band `n1, n2 < N − m`.
    pub fn is_interior(&self, idx: usize) -> bool {
        let (a, b) = self.levels(idx);
        a < self.n - self.margin && b < self.n - self.margin
    }

    pub fn interior_rank(&self) -> usize {
        (self.n - self.margin).pow(2)
    }
}

const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    mat: CsMat<Complex64>,
}

impl OperatorMatrix {
    pub fn from_csr(mat: CsMat<Complex64>) -> Self {
        OperatorMatrix { mat }
    }

    /// Builds a `dim × dim` matrix from `(row, col, value)` entries;
    /// duplicates are summed.
    pub fn from_triplets(dim: usize, entries: impl IntoIterator<Item = (usize, usize, Complex64)>) -> Self {
        let mut t = TriMat::new((dim, dim));
        for (i, j, v) in entries {
            t.add_triplet(i, j, v);
        }
        let mut m = OperatorMatrix { mat: t.to_csr() };
        m.prune();
        m
    }

    pub fn zeros(dim: usize) -> Self {
        OperatorMatrix { mat: CsMat::zero((dim, dim)) }
    }

    pub fn identity(dim: usize) -> Self {
        OperatorMatrix { mat: CsMat::eye(dim) }
    }

    pub fn scalar(dim: usize, c: Complex64) -> Self {
        Self::identity(dim).scale(c)
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn nnz(&self) -> usize {
        self.mat.nnz()
    }

    pub fn csr(&self) -> &CsMat<Complex64> {
        &self.mat
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.mat.get(i, j).copied().unwrap_or_default()
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.mat
            .outer_iterator()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, &v)| (i, j, v)).collect::<Vec<_>>())
    }

    fn prune(&mut self) {
        if self.mat.data().iter().any(|v| *v == Complex64::default()) {
            let dim = self.dim();
            let kept: Vec<_> = self.entries().filter(|(_, _, v)| *v != Complex64::default()).collect();
            let mut t = TriMat::new((dim, dim));
            for (i, j, v) in kept {
                t.add_triplet(i, j, v);
            }
            self.mat = t.to_csr();
        }
    }

    fn check_dim(&self, o: &OperatorMatrix) -> Result<(), FockError> {
        if self.dim() != o.dim() {
            return Err(FockError::DimensionMismatch { left: self.dim(), right: o.dim() });
        }
        Ok(())
    }

    pub fn try_add(&self, o: &OperatorMatrix) -> Result<OperatorMatrix, FockError> {
        self.check_dim(o)?;
        let mut m = OperatorMatrix { mat: &self.mat + &o.mat };
        m.prune();
        Ok(m)
    }

    pub fn try_sub(&self, o: &OperatorMatrix) -> Result<OperatorMatrix, FockError> {
        self.try_add(&o.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn try_mul(&self, o: &OperatorMatrix) -> Result<OperatorMatrix, FockError> {
        self.check_dim(o)?;
        let mut m = OperatorMatrix { mat: &self.mat * &o.mat };
        m.prune();
        Ok(m)
    }

    /// `AB − BA`.
    pub fn try_commutator(&self, o: &OperatorMatrix) -> Result<OperatorMatrix, FockError> {
        self.try_mul(o)?.try_sub(&o.try_mul(self)?)
    }

    /// # Panics
    /// On dimension mismatch.
    pub fn add(&self, o: &OperatorMatrix) -> OperatorMatrix {
        self.try_add(o).expect("dimensions agree")
    }

    /// # Panics
    /// On dimension mismatch.
    pub fn sub(&self, o: &OperatorMatrix) -> OperatorMatrix {
        self.try_sub(o).expect("dimensions agree")
    }

    /// # Panics
    /// On dimension mismatch.
    pub fn mul(&self, o: &OperatorMatrix) -> OperatorMatrix {
        self.try_mul(o).expect("dimensions agree")
    }

    /// # Panics
    /// On dimension mismatch.
    pub fn commutator(&self, o: &OperatorMatrix) -> OperatorMatrix {
        self.try_commutator(o).expect("dimensions agree")
    }

    pub fn scale(&self, c: Complex64) -> OperatorMatrix {
        if c == Complex64::default() {
            return Self::zeros(self.dim());
        }
        OperatorMatrix { mat: self.mat.map(|v| v * c) }
    }

    pub fn scale_re(&self, c: f64) -> OperatorMatrix {
        self.scale(Complex64::new(c, 0.0))
    }

    pub fn adjoint(&self) -> OperatorMatrix {
        Self::from_triplets(self.dim(), self.entries().map(|(i, j, v)| (j, i, v.conj())))
    }

    /// `max |M − M†|` over all entries.
    pub fn hermiticity_defect(&self) -> f64 {
        self.sub(&self.adjoint()).max_abs()
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_defect() < HERMITIAN_TOL
    }

    pub fn max_abs(&self) -> f64 {
        self.mat.data().iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `max |M_ij|` over interior rows and columns.
    pub fn interior_max_abs(&self, spec: &TruncationSpec) -> f64 {
        self.entries()
            .filter(|(i, j, _)| spec.is_interior(*i) && spec.is_interior(*j))
            .map(|(_, _, v)| v.norm())
            .fold(0.0, f64::max)
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim(), "vector length must match operator dimension");
        self.mat
            .outer_iterator()
            .map(|row| row.iter().map(|(j, &a)| a * v[j]).sum())
            .collect()
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<Complex64> {
        let mut m = nalgebra::DMatrix::zeros(self.dim(), self.dim());
        for (i, j, v) in self.entries() {
            m[(i, j)] = v;
        }
        m
    }
}

/// `‖P(AB − BA − target·1)P‖_max` with `P` the interior projector of `spec`.
pub fn commutator_residual(
    a: &OperatorMatrix,
    b: &OperatorMatrix,
    target: Complex64,
    spec: &TruncationSpec,
) -> Result<f64, FockError> {
    if a.dim() != spec.dim() {
        return Err(FockError::DimensionMismatch { left: a.dim(), right: spec.dim() });
    }
    let c = a.try_commutator(b)?;
    let r = c.try_sub(&OperatorMatrix::scalar(a.dim(), target))?;
    Ok(r.interior_max_abs(spec))
}
