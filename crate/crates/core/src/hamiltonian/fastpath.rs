//! Closed-form brackets of functions and exact 1-forms, assembled from the
//! recursions instead of the generic solver.

use super::recursion::{k_even, k_odd, OddRecursionSign};
use crate::exterior::{Form, VectorValuedForm};
use crate::geometry::ChartGeometry;
use crate::scalar::RationalFunction;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FastpathKind {
    /// `[[f,h]]`
    FunctionFunction,
    /// `[[f,dh]]`
    FunctionDifferential,
    /// `[[df,dh]]`
    DifferentialDifferential,
}

impl FastpathKind {
    pub fn label(self) -> &'static str {
        match self {
            FastpathKind::FunctionFunction => "ff",
            FastpathKind::FunctionDifferential => "f_dh",
            FastpathKind::DifferentialDifferential => "df_dh",
        }
    }
}

fn pair(a: &VectorValuedForm, b: &VectorValuedForm, entry: impl Fn(usize, usize) -> Form) -> Form {
    let n = a.dim();
    let mut out = Form::zero(n);
    for c in 0..n {
        if a.component(c).is_zero() {
            continue;
        }
        for e in 0..n {
            if b.component(e).is_zero() {
                continue;
            }
            let v = entry(c, e);
            if !v.is_zero() {
                out = out + a.component(c).wedge(b.component(e)).wedge(&v);
            }
        }
    }
    out
}

/// `R(A, B, _, _) = Σ A^c ∧ B^e ∧ R(∂_c, ∂_e, _, _)`.
pub fn curvature_pairing(chart: &ChartGeometry, a: &VectorValuedForm, b: &VectorValuedForm) -> Form {
    let n = chart.dim();
    pair(a, b, |c, e| {
        let (ec, ee) = (chart.coordinate_field(c), chart.coordinate_field(e));
        let mut f = Form::zero(n);
        for u in 0..n {
            for v in u + 1..n {
                let r = chart.riemann4(&ec, &ee, &chart.coordinate_field(u), &chart.coordinate_field(v));
                f = f + Form::monomial(n, &[u, v], r);
            }
        }
        f
    })
}

/// `ω(A, B) = Σ A^c ∧ B^e ω_{ce}`.
pub fn omega_pairing(chart: &ChartGeometry, a: &VectorValuedForm, b: &VectorValuedForm) -> Form {
    pair(a, b, |c, e| chart.function(chart.omega()[c][e].clone()))
}

/// `g(A, B) = Σ A^c ∧ B^e g_{ce}`.
pub fn metric_pairing(chart: &ChartGeometry, a: &VectorValuedForm, b: &VectorValuedForm) -> Form {
    pair(a, b, |c, e| chart.function(chart.metric()[c][e].clone()))
}

/// `g^{-1}(df, dh)`.
pub fn inverse_metric_pairing(chart: &ChartGeometry, f: &RationalFunction, h: &RationalFunction) -> RationalFunction {
    let n = chart.dim();
    let gi = chart.metric_inverse();
    let mut out = RationalFunction::zero();
    for a in 0..n {
        for b in 0..n {
            out = out + &gi[a][b] * &(f.partial(a) * h.partial(b));
        }
    }
    out
}

/// The closed-form even bracket of the requested kind, evaluated term by term.
pub fn bracket_fastpath(kind: FastpathKind, f: &RationalFunction, h: &RationalFunction, chart: &ChartGeometry) -> Form {
    let xh = chart.hamiltonian_vector_field(h).to_vvf();
    let pb = chart.function(chart.poisson_bracket(f, h));
    match kind {
        FastpathKind::FunctionFunction => k_even(chart, f)
            .iter()
            .fold(pb, |acc, k| acc + curvature_pairing(chart, k, &xh)),
        FastpathKind::FunctionDifferential => {
            let dxh = chart.dnabla(&xh);
            let mut out = pb.d();
            for k in k_even(chart, f) {
                let dk = chart.dnabla(&k);
                out = out - omega_pairing(chart, &dk, &xh);
                out = out + curvature_pairing(chart, &dk, &xh) + curvature_pairing(chart, &k, &dxh);
            }
            out
        }
        FastpathKind::DifferentialDifferential => {
            let dxh = chart.dnabla(&xh);
            let df = chart.function(f.clone()).d();
            let sharp = chart.sharp(&df).expect("1-form").to_vvf();
            let mut out = chart.function(inverse_metric_pairing(chart, f, h));
            out = out + metric_pairing(chart, &chart.dnabla(&sharp), &dxh);
            out = out + curvature_pairing(chart, &sharp, &xh);
            for k in k_odd(chart, f, OddRecursionSign::AsDisplayed) {
                let dk = chart.dnabla(&k);
                out = out + omega_pairing(chart, &xh, &dk);
                out = out + curvature_pairing(chart, &dk, &xh) + curvature_pairing(chart, &k, &dxh);
            }
            out
        }
    }
}

/// The arguments `(α, β)` the fastpath kind stands for.
pub fn fastpath_arguments(kind: FastpathKind, f: &RationalFunction, h: &RationalFunction, chart: &ChartGeometry) -> (Form, Form) {
    let (ff, hf) = (chart.function(f.clone()), chart.function(h.clone()));
    match kind {
        FastpathKind::FunctionFunction => (ff, hf),
        FastpathKind::FunctionDifferential => (ff, hf.d()),
        FastpathKind::DifferentialDifferential => (ff.d(), hf.d()),
    }
}
