//! Graded Hamiltonian vector fields and the brackets they induce.

mod brackets;
mod cache;
mod defect;
mod fastpath;
mod recursion;
mod solver;

pub use brackets::{
    even_bracket, insert_bivector, koszul_operator, ks_bracket, ks_bracket_generator, ks_bracket_hamiltonian, KsMethod,
    KS_GENERATOR_SIGN,
};
pub use cache::Hamiltonians;
pub use defect::{d_defect, d_defect_vector_fields, defect_terms, DefectSides, DefectSigns};
pub use fastpath::{
    bracket_fastpath, curvature_pairing, fastpath_arguments, inverse_metric_pairing, metric_pairing, omega_pairing,
    FastpathKind,
};
pub use recursion::{assemble_d_df, assemble_d_f, curvature_step, k_even, k_odd, k_one, OddRecursionSign};
pub use solver::{inverse_apply, solve_hamiltonian, solve_one_form, HamiltonianSolution};

#[cfg(test)]
mod tests;
