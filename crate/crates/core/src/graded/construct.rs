//! The distinguished graded forms built from `ω`, `g` and `L`.

use std::sync::Arc;

use super::forms::{GradedOneForm, GradedTwoForm};
use super::space::{Basis, GradedSpace};
use crate::error::{Error, Result};
use crate::exterior::{Form, VectorField};
use crate::geometry::ChartGeometry;
use crate::scalar::RationalFunction;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ThetaVariant {
    OmegaOnly,
    OmegaG,
    OmegaGL,
}

/// The 2-form `Σ_{u<v} b(∂_u,∂_v) dx^u∧dx^v` of an antisymmetric bilinear map.
fn two_form_from(n: usize, b: impl Fn(usize, usize) -> RationalFunction) -> Form {
    let mut out = Form::zero(n);
    for u in 0..n {
        for v in u + 1..n {
            out = out + Form::monomial(n, &[u, v], b(u, v));
        }
    }
    out
}

fn one_form_from(n: usize, b: impl Fn(usize) -> RationalFunction) -> Form {
    (0..n)
        .map(|u| Form::dx(n, u).scale(&b(u)))
        .fold(Form::zero(n), |acc, f| acc + f)
}

/// `λ_g` (or `λ_{g,L}` when `include_l`): `⟨i_X;λ⟩ = ♭X`,
/// `⟨L_X;λ⟩ = d♭X (+ L(X;_,_))`.
pub fn lambda_g(space: &Arc<GradedSpace>, include_l: bool) -> Result<GradedOneForm> {
    let chart = space.chart();
    if include_l && chart.l_tensor().is_none() {
        return Err(Error::Usage(format!("chart '{}' carries no L tensor", chart.name())));
    }
    let n = chart.dim();
    let mut values = vec![Form::zero(n); 2 * n];
    for a in 0..n {
        let e = chart.coordinate_field(a);
        let flat = chart.flat(&e);
        let mut lie_value = flat.d();
        if include_l {
            lie_value = lie_value + chart.l_slice(&e);
        }
        values[a] = lie_value;
        values[n + a] = flat;
    }
    Ok(GradedOneForm::new(space.clone(), Basis::Lie, values, 2))
}

/// `λ_ω`: `⟨i_X;λ_ω⟩ = 0`, `⟨L_X;λ_ω⟩ = ω(X,_)`.
pub fn lambda_omega(space: &Arc<GradedSpace>) -> GradedOneForm {
    let chart = space.chart();
    let n = chart.dim();
    let mut values = vec![Form::zero(n); 2 * n];
    for (a, v) in values.iter_mut().enumerate().take(n) {
        *v = one_form_from(n, |b| chart.omega()[a][b].clone());
    }
    GradedOneForm::new(space.clone(), Basis::Lie, values, 1)
}

/// `Θ_ω`: `⟨L_X,L_Y⟩ = ω(X,Y)`, zero when an insertion is involved.
pub fn theta_omega(space: &Arc<GradedSpace>) -> GradedTwoForm {
    let chart = space.chart();
    let n = chart.dim();
    let mut table = vec![vec![Form::zero(n); 2 * n]; 2 * n];
    for a in 0..n {
        for b in 0..n {
            table[a][b] = Form::function(n, chart.omega()[a][b].clone());
        }
    }
    GradedTwoForm::new(space.clone(), Basis::Lie, table, 0)
}

/// `Θ_ω + ½d^Gλ` for the requested variant.
pub fn theta(space: &Arc<GradedSpace>, variant: ThetaVariant) -> Result<GradedTwoForm> {
    let base = theta_omega(space);
    match variant {
        ThetaVariant::OmegaOnly => Ok(base),
        ThetaVariant::OmegaG => Ok(base.add(&lambda_g(space, false)?.d().scale_ratio(1, 2))),
        ThetaVariant::OmegaGL => Ok(base.add(&lambda_g(space, true)?.d().scale_ratio(1, 2))),
    }
}

/// `Θ_KS = d^Gλ_ω`.
pub fn theta_ks(space: &Arc<GradedSpace>) -> GradedTwoForm {
    lambda_omega(space).d()
}

/// `Θ_{ω,g}` from the closed forms in the `{L, i}` basis:
/// `⟨L_X,L_Y⟩ = ω(X,Y) + α(X,Y)`, `⟨L_X,i_Y⟩ = g(∇_X, Y)`, `⟨i_X,i_Y⟩ = g(X,Y)`.
pub fn theta_closed_lie(space: &Arc<GradedSpace>) -> GradedTwoForm {
    let chart = space.chart();
    let n = chart.dim();
    let e: Vec<VectorField> = (0..n).map(|a| chart.coordinate_field(a)).collect();
    let nab = |u: usize, x: usize| chart.covariant_derivative(&e[u], &e[x]);
    let mut table = vec![vec![Form::zero(n); 2 * n]; 2 * n];
    for a in 0..n {
        for b in 0..n {
            let alpha = two_form_from(n, |u, v| {
                let t1 = chart.metric_on(&nab(u, b), &nab(v, a));
                let t2 = chart.metric_on(&nab(u, a), &nab(v, b));
                &(&t1 - &t2) - &chart.riemann4(&e[a], &e[b], &e[u], &e[v])
            });
            table[a][b] = Form::function(n, chart.omega()[a][b].clone()) + alpha;
            // U ↦ g(∇_U X, Y)
            let mixed = one_form_from(n, |u| chart.metric_on(&nab(u, a), &e[b]));
            table[b + n][a] = -&mixed;
            table[a][b + n] = mixed;
            table[a + n][b + n] = Form::function(n, chart.metric()[a][b].clone());
        }
    }
    GradedTwoForm::new(space.clone(), Basis::Lie, table, 0)
}

/// `Θ_{ω,g}` from the closed forms in the `{∇, i}` basis:
/// `⟨∇_X,∇_Y⟩ = ω(X,Y) − R(X,Y,_,_)`, `⟨∇_X,i_Y⟩ = 0`, `⟨i_X,i_Y⟩ = g(X,Y)`.
pub fn theta_closed_nabla(space: &Arc<GradedSpace>) -> GradedTwoForm {
    let chart = space.chart();
    let n = chart.dim();
    let e: Vec<VectorField> = (0..n).map(|a| chart.coordinate_field(a)).collect();
    let mut table = vec![vec![Form::zero(n); 2 * n]; 2 * n];
    for a in 0..n {
        for b in 0..n {
            let curv = two_form_from(n, |u, v| chart.riemann4(&e[a], &e[b], &e[u], &e[v]));
            table[a][b] = Form::function(n, chart.omega()[a][b].clone()) - curv;
            table[a + n][b + n] = Form::function(n, chart.metric()[a][b].clone());
        }
    }
    GradedTwoForm::new(space.clone(), Basis::Nabla, table, 0)
}

/// `det Θ̃` and `det ω · det g`.
pub fn nondegeneracy(theta: &GradedTwoForm) -> (RationalFunction, RationalFunction) {
    let chart: &ChartGeometry = theta.space().chart();
    let lhs = crate::geometry::linalg::det(&theta.degree_zero_block());
    let rhs = crate::geometry::linalg::det(chart.omega()) * crate::geometry::linalg::det(chart.metric());
    (lhs, rhs)
}
