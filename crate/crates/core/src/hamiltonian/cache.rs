use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::solver::{solve_hamiltonian, HamiltonianSolution};
use crate::error::Result;
use crate::exterior::{Derivation, Form};
use crate::graded::{Basis, GradedTwoForm};

/// Memoized Hamiltonian solves against one graded 2-form. The form is kept
/// in the `{∇, i}` basis so each solve skips the basis change. Safe to share
/// between threads.
#[derive(Debug)]
pub struct Hamiltonians {
    theta: GradedTwoForm,
    cache: Mutex<HashMap<Form, Arc<HamiltonianSolution>>>,
}

impl Hamiltonians {
    pub fn new(theta: &GradedTwoForm) -> Self {
        Hamiltonians {
            theta: theta.to_basis(Basis::Nabla),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn theta(&self) -> &GradedTwoForm {
        &self.theta
    }

    pub fn solve(&self, alpha: &Form) -> Result<Arc<HamiltonianSolution>> {
        if let Some(hit) = self.cache.lock().expect("cache lock").get(alpha) {
            return Ok(hit.clone());
        }
        let sol = Arc::new(solve_hamiltonian(&self.theta, alpha)?);
        self.cache.lock().expect("cache lock").insert(alpha.clone(), sol.clone());
        Ok(sol)
    }

    pub fn derivation(&self, alpha: &Form) -> Result<Derivation> {
        Ok(self.solve(alpha)?.derivation.clone())
    }

    /// `D_α(β)`.
    pub fn bracket(&self, alpha: &Form, beta: &Form) -> Result<Form> {
        Ok(self.solve(alpha)?.derivation.apply(beta))
    }
}
