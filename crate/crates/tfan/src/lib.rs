//! Groebner fans of x-homogeneous ideals in Z[[t]][x1..xn].
//!
//! The crate computes standard bases for t-local monomial orderings, initially
//! reduced standard bases, Groebner cones with exact polyhedral geometry, and
//! the full fan by flipping across facets.

pub mod cone;
pub mod division;
pub mod error;
pub mod exact;
pub mod fan;
pub mod inred;
pub mod poly;

pub use error::{Error, Result};
