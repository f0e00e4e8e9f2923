//! Graded differential forms on the graded manifold `(M, Ω(M))`.

mod construct;
mod forms;
mod space;

pub use construct::{
    lambda_g, lambda_omega, nondegeneracy, theta, theta_closed_lie, theta_closed_nabla, theta_ks, theta_omega,
    ThetaVariant,
};
pub use forms::{GradedOneForm, GradedTwoForm};
pub use space::{Basis, BasisSet, GradedSpace};

#[cfg(test)]
mod tests;
