use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FockError {
    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not Hermitian (max |M - M^+| = {0:e})")]
    NotHermitian(f64),
    #[error("state is not normalized (norm = {0})")]
    NotNormalized(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("trial family is degenerate: every parameter range is a single point")]
    DegenerateFamily,
    #[error("level group is not degenerate: spread {spread:e} exceeds tolerance {tolerance:e}")]
    NotDegenerate { spread: f64, tolerance: f64 },
    #[error("numeric evaluation: {0}")]
    Evaluation(String),
}
