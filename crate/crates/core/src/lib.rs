//! Exact symbolic kernel for graded symplectic calculus on the algebra of
//! differential forms of a coordinate chart.

pub mod error;
pub mod exterior;
pub mod geometry;
pub mod graded;
pub mod hamiltonian;
pub mod harness;
pub mod scalar;

pub use error::{Error, Result};
