use thiserror::Error;

use super::parse::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero: denominator {denominator} vanishes under the bindings")]
    DivisionByZero { denominator: String },
    #[error("circular binding: value of {symbol} refers to bound symbol {refers_to}")]
    CircularBinding { symbol: String, refers_to: String },
    #[error("binding for {symbol} must be free of xi and sigma")]
    GradedBinding { symbol: String },
    #[error("binding {symbol} -> {value} is inconsistent: its square must equal {expected}")]
    InconsistentRoot { symbol: String, value: String, expected: String },
    #[error("expression degree {degree} exceeds the limit of {limit}")]
    DegreeLimit { degree: u32, limit: u32 },
    #[error("division by a non-scalar operator")]
    NonScalarDivisor,
    #[error("expected a scalar expression without generators")]
    NotScalar,
    #[error(transparent)]
    Parse(#[from] ParseError),
}
