//! Exact scalar coefficient functions on a chart.

pub mod poly;
mod rational_function;

pub use poly::{Monomial, Polynomial, MAX_VARS};
pub use rational_function::RationalFunction;
