use std::sync::{Arc, OnceLock};

use crate::exterior::{Derivation, Form};
use crate::geometry::ChartGeometry;
use crate::scalar::RationalFunction;

/// Which degree-0 derivations complete the insertions `i_{∂_a}` to a basis.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Basis {
    /// `{L_{∂_a}, i_{∂_a}}`.
    Lie,
    /// `{∇_{∂_a}, i_{∂_a}}`.
    Nabla,
}

impl Basis {
    pub fn label(self) -> &'static str {
        match self {
            Basis::Lie => "L",
            Basis::Nabla => "nabla",
        }
    }
}

/// The basic derivations of one basis. Slots `0..n` hold the degree-0
/// derivations, slots `n..2n` the insertions.
#[derive(Debug)]
pub struct BasisSet {
    pub kind: Basis,
    pub derivations: Vec<Derivation>,
    pub degrees: Vec<i32>,
    commutators: OnceLock<Vec<Vec<Derivation>>>,
}

impl BasisSet {
    fn new(chart: &ChartGeometry, kind: Basis) -> Self {
        let n = chart.dim();
        let mut derivations = Vec::with_capacity(2 * n);
        for a in 0..n {
            let e = chart.coordinate_field(a);
            derivations.push(match kind {
                Basis::Lie => Derivation::lie(&e),
                Basis::Nabla => chart.nabla_derivation(&e),
            });
        }
        for a in 0..n {
            derivations.push(Derivation::insertion(&chart.coordinate_field(a)));
        }
        let degrees = (0..2 * n).map(|s| if s < n { 0 } else { -1 }).collect();
        BasisSet {
            kind,
            derivations,
            degrees,
            commutators: OnceLock::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.derivations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.derivations.is_empty()
    }

    /// `[E_A, E_B]` for all basis pairs, computed once.
    pub fn commutators(&self) -> &Vec<Vec<Derivation>> {
        self.commutators.get_or_init(|| {
            let m = self.len();
            let mut out = vec![vec![Derivation::zero(m / 2); m]; m];
            for a in 0..m {
                for b in a..m {
                    let c = self.derivations[a].commutator(&self.derivations[b]);
                    let sign_flip = (self.degrees[a] * self.degrees[b]) % 2 == 0;
                    out[b][a] = if sign_flip { -&c } else { c.clone() };
                    out[a][b] = c;
                }
            }
            out
        })
    }
}

/// A chart together with both bases of its derivation module.
#[derive(Debug)]
pub struct GradedSpace {
    chart: ChartGeometry,
    lie: BasisSet,
    nabla: BasisSet,
}

impl GradedSpace {
    pub fn new(chart: ChartGeometry) -> Arc<Self> {
        let lie = BasisSet::new(&chart, Basis::Lie);
        let nabla = BasisSet::new(&chart, Basis::Nabla);
        Arc::new(GradedSpace { chart, lie, nabla })
    }

    pub fn chart(&self) -> &ChartGeometry {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn basis(&self, kind: Basis) -> &BasisSet {
        match kind {
            Basis::Lie => &self.lie,
            Basis::Nabla => &self.nabla,
        }
    }

    /// Coefficients `u_A` with `D = Σ_A u_A · E_A` in the given basis:
    /// `u_a = D(x^a)` and `u_{n+b} = D(dx^b) − Σ_a u_a ∧ E_a(dx^b)`.
    pub fn decompose(&self, d: &Derivation, kind: Basis) -> Vec<Form> {
        let n = self.dim();
        let basis = self.basis(kind);
        let mut coeffs: Vec<Form> = (0..n)
            .map(|a| d.apply(&Form::function(n, RationalFunction::var(a))))
            .collect();
        for b in 0..n {
            let dxb = Form::dx(n, b);
            let mut rest = d.apply(&dxb);
            for a in 0..n {
                if coeffs[a].is_zero() {
                    continue;
                }
                rest = rest - coeffs[a].wedge(&basis.derivations[a].apply(&dxb));
            }
            coeffs.push(rest);
        }
        coeffs
    }

    /// `Σ_A u_A · E_A` as a derivation in normal form.
    pub fn recompose(&self, coeffs: &[Form], kind: Basis) -> Derivation {
        let n = self.dim();
        let basis = self.basis(kind);
        Derivation::from_operator(n, |alpha| {
            let mut out = Form::zero(n);
            for (u, e) in coeffs.iter().zip(&basis.derivations) {
                if !u.is_zero() {
                    out = out + u.wedge(&e.apply(alpha));
                }
            }
            out
        })
    }
}
