//! Exact and numerical tools for quantum mechanics on a noncommutative plane.
//!
//! - [`weyl`]: exact operator algebra with rational-function coefficients.
//! - [`fock`]: the same operators as sparse matrices on a truncated basis.
//! - [`scenario`]: SI scales of the deformation for a physical system.
//! - [`table`]: CSV/JSON result tables.

pub mod weyl;
pub mod fock;
pub mod scenario;
pub mod table;
