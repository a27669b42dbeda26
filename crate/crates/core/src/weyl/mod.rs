//! Exact symbolic algebra of the two-mode Heisenberg-Weyl generators and
//! their noncommutative (tilde) counterparts.

pub mod error;
pub mod field;
pub mod gauss;
pub mod generators;
pub mod ncpoly;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod subst;
pub mod verify;

pub use error::AlgebraError;
pub use field::{CoeffField, Grade, Rules};
pub use gauss::GaussRat;
pub use generators::{ladder_operator, tilde_generator, GeneratorKind};
pub use ncpoly::{commutator, normal_order_product, poly_mul, NCMonomial, NCPolynomial};
pub use parse::{parse_binding, parse_coefficient, parse_expression, parse_operator_expression, Expr, ParseError};
pub use poly::{Poly, Symbol};
pub use ratfunc::RatFunc;
pub use subst::{substitute, Bindings, Param};
pub use verify::{derive_be_condition, verify_ghq_algebra, verify_ghq_algebra_with, AlgebraReport, DerivationReport};
