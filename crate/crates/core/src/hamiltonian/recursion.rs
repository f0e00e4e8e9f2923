//! Closed-form recursions for the Hamiltonian vector fields of functions and
//! of their differentials.

use crate::exterior::{Derivation, Form, VectorValuedForm};
use crate::geometry::ChartGeometry;
use crate::scalar::RationalFunction;

/// Sign used in the odd recursion `K^{m+2} = ±J^{-1}(R(_,_)K^m)` at a given
/// starting degree `m`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OddRecursionSign {
    /// `K^{2(i+1)+1} = J^{-1}(R(_,_)K^{2i+1})` exactly as displayed for `i > 0`,
    /// with the first step `K³` taken from the even-degree rule.
    AsDisplayed,
    /// The even-degree rule `K^{m+2} = −J^{-1}(R(_,_)K^m)` at every step.
    Minus,
}

/// `−J^{-1}(R(_,_)K)`: curvature acts on the vector slot with its 2-form
/// wedged on the left, then `J^{-1}` acts componentwise.
pub fn curvature_step(chart: &ChartGeometry, k: &VectorValuedForm) -> VectorValuedForm {
    let rk = k.apply_endomorphism(&chart.curvature_forms(), 2);
    -&rk.apply_matrix(chart.j_inverse_matrix())
}

/// `K_f^0 = X_f, K_f^2, …` up to the chart dimension.
pub fn k_even(chart: &ChartGeometry, f: &RationalFunction) -> Vec<VectorValuedForm> {
    let n = chart.dim();
    let mut out = vec![chart.hamiltonian_vector_field(f).to_vvf()];
    while out.len() * 2 <= n {
        let next = curvature_step(chart, out.last().expect("nonempty"));
        out.push(next);
    }
    out
}

/// `K_f^1`, solved from `ω(Y, K_f^1(U)) = (∇_Y df)(U)`.
pub fn k_one(chart: &ChartGeometry, f: &RationalFunction) -> VectorValuedForm {
    let n = chart.dim();
    let hess = |y: usize, u: usize| {
        let mut h = f.partial(u).partial(y);
        for m in 0..n {
            h = h - chart.christoffel(m, y, u) * &f.partial(m);
        }
        h
    };
    let w_inv = chart.poisson_bivector();
    let comps = (0..n)
        .map(|b| {
            (0..n).fold(Form::zero(n), |acc, u| {
                let c = (0..n).fold(RationalFunction::zero(), |c, y| c + &w_inv[b][y] * &hess(y, u));
                acc + Form::dx(n, u).scale(&c)
            })
        })
        .collect();
    VectorValuedForm::new(1, comps)
}

/// `K_f^1, K_f^3, …` up to the chart dimension.
pub fn k_odd(chart: &ChartGeometry, f: &RationalFunction, sign: OddRecursionSign) -> Vec<VectorValuedForm> {
    let n = chart.dim();
    let mut out = vec![k_one(chart, f)];
    while out.len() * 2 < n {
        let prev = out.last().expect("nonempty");
        let step = curvature_step(chart, prev);
        let next = match sign {
            OddRecursionSign::AsDisplayed if prev.degree() > 1 => -&step,
            _ => step,
        };
        out.push(next);
    }
    out
}

/// `D_{df} = i_{♮df} + Σ ∇_{K^{2i+1}}` from the closed forms.
pub fn assemble_d_df(chart: &ChartGeometry, f: &RationalFunction, sign: OddRecursionSign) -> Derivation {
    let n = chart.dim();
    let df = chart.function(f.clone()).d();
    let sharp = chart.sharp(&df).expect("1-form");
    let mut d = Derivation::insertion(&sharp);
    for k in k_odd(chart, f, sign) {
        d = &d + &chart.nabla_of(&k);
    }
    debug_assert_eq!(d.dim(), n);
    d
}

/// `D_f = Σ ∇_{K^{2i}}` from the closed forms.
pub fn assemble_d_f(chart: &ChartGeometry, f: &RationalFunction) -> Derivation {
    k_even(chart, f)
        .iter()
        .fold(Derivation::zero(chart.dim()), |acc, k| &acc + &chart.nabla_of(k))
}
