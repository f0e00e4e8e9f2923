use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exterior::{Derivation, Form, VectorValuedForm};
use crate::geometry::linalg;
use crate::graded::{Basis, GradedOneForm, GradedSpace, GradedTwoForm};

/// A graded Hamiltonian vector field `D_α` with `ι_{D_α}Θ = d^Gα`, together
/// with its coefficients in the `{∇, i}` basis split by form degree.
#[derive(Clone, Debug)]
pub struct HamiltonianSolution {
    pub source: Form,
    pub derivation: Derivation,
    /// `u_A` with `D = Σ u_A E_A`, slots `0..n` on `∇_a`, `n..2n` on `i_a`.
    pub coefficients: Vec<Form>,
    /// `K^p`: the `∇`-coefficients of form degree `p`, so `D ⊇ ∇_{K^p}`.
    pub nabla_components: BTreeMap<usize, VectorValuedForm>,
    /// The insertion coefficients of form degree `p`, so `D ⊇ i_{L^p}`.
    pub insertion_components: BTreeMap<usize, VectorValuedForm>,
}

impl HamiltonianSolution {
    pub fn dim(&self) -> usize {
        self.derivation.dim()
    }

    /// `K^p`, zero when that degree does not occur.
    pub fn k(&self, p: usize) -> VectorValuedForm {
        self.nabla_components
            .get(&p)
            .cloned()
            .unwrap_or_else(|| VectorValuedForm::zero(self.dim(), p))
    }

    pub fn l(&self, p: usize) -> VectorValuedForm {
        self.insertion_components
            .get(&p)
            .cloned()
            .unwrap_or_else(|| VectorValuedForm::zero(self.dim(), p))
    }
}

/// Splits coefficient forms `u_0..u_{n-1}` into vector-valued forms by degree.
pub(crate) fn split_by_degree(n: usize, coeffs: &[Form]) -> BTreeMap<usize, VectorValuedForm> {
    let mut degrees: Vec<usize> = coeffs.iter().flat_map(|u| u.parts().into_keys()).collect();
    degrees.sort_unstable();
    degrees.dedup();
    degrees
        .into_iter()
        .map(|p| (p, VectorValuedForm::new(p, coeffs.iter().map(|u| u.part(p)).collect())))
        .filter(|(_, k)| !k.is_zero())
        .map(|(p, k)| {
            debug_assert_eq!(k.dim(), n);
            (p, k)
        })
        .collect()
}

/// Solves `ι_DΘ = λ` for `D`, returning its coefficients in the basis of `λ`.
///
/// Degree by degree: `Σ_B T₀[A,B] u_B^m = (−1)^{m|E_A|}(λ_A − Σ_B ũ_B ∧ T[A,B])^{(m)}`,
/// where `ũ_B` collects the components of degree below `m` and carries the
/// twist by `|E_A|`. The degree-0 block `T₀` is inverted once.
pub fn solve_one_form(theta: &GradedTwoForm, rhs: &GradedOneForm) -> Result<Vec<Form>> {
    let space = theta.space().clone();
    let n = space.dim();
    let basis = rhs.basis();
    let theta = theta.to_basis(basis);
    let degrees = &space.basis(basis).degrees;
    let m = 2 * n;
    let t0_inv = linalg::inverse(&theta.degree_zero_block())
        .ok_or_else(|| Error::Domain("graded 2-form is degenerate".into()))?;
    let mut u = vec![Form::zero(n); m];
    for deg in 0..=n {
        let reduced: Vec<Form> = (0..m)
            .map(|a| {
                let mut acc = rhs.values()[a].part(deg);
                for b in 0..m {
                    if u[b].is_zero() || theta.entry(a, b).is_zero() {
                        continue;
                    }
                    let lower = u[b].twist(degrees[a] as i64).wedge(theta.entry(a, b)).part(deg);
                    acc = acc - lower;
                }
                acc.twist(degrees[a] as i64)
            })
            .collect();
        for (b, ub) in u.iter_mut().enumerate() {
            for (a, r) in reduced.iter().enumerate() {
                if !r.is_zero() && !t0_inv[b][a].is_zero() {
                    *ub = &*ub + &r.scale(&t0_inv[b][a]);
                }
            }
        }
    }
    let check = theta.iota(&space.recompose(&u, basis));
    let residual = check.differences(rhs);
    if let Some((slot, defect)) = residual.first() {
        return Err(Error::Internal(format!(
            "Hamiltonian solve left a residual on {}: {}",
            rhs.slot_label(*slot),
            space.chart().display(defect)
        )));
    }
    Ok(u)
}

/// The derivation `D` with `ι_DΘ = λ`.
pub fn inverse_apply(theta: &GradedTwoForm, rhs: &GradedOneForm) -> Result<Derivation> {
    let coeffs = solve_one_form(theta, rhs)?;
    Ok(rhs.space().recompose(&coeffs, rhs.basis()))
}

/// The Hamiltonian vector field `D_α` of `α` with respect to `Θ`.
pub fn solve_hamiltonian(theta: &GradedTwoForm, alpha: &Form) -> Result<HamiltonianSolution> {
    let space: Arc<GradedSpace> = theta.space().clone();
    let n = space.dim();
    if alpha.dim() != n {
        return Err(Error::Usage(format!(
            "form lives in dimension {} but the chart has dimension {n}",
            alpha.dim()
        )));
    }
    let rhs = GradedOneForm::exact(space.clone(), Basis::Nabla, alpha);
    let coefficients = solve_one_form(theta, &rhs)?;
    let derivation = space.recompose(&coefficients, Basis::Nabla);
    Ok(HamiltonianSolution {
        source: alpha.clone(),
        nabla_components: split_by_degree(n, &coefficients[..n]),
        insertion_components: split_by_degree(n, &coefficients[n..]),
        coefficients,
        derivation,
    })
}
