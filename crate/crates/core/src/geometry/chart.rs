use std::fmt;

use super::linalg::{self, Matrix};
use crate::error::{Error, Result};
use crate::exterior::{Derivation, Form, VectorField, VectorValuedForm};
use crate::scalar::{RationalFunction, MAX_VARS};

/// Components `L[i][j][k] = L_{i;jk}`, antisymmetric in `(j, k)`.
pub type LTensor = Vec<Vec<Vec<RationalFunction>>>;

/// A coordinate chart carrying a pseudoriemannian metric `g` and a
/// symplectic form `ω`, with the Levi-Civita data and `J` precomputed.
#[derive(Clone, Debug)]
pub struct ChartGeometry {
    name: String,
    coords: Vec<String>,
    metric: Matrix,
    omega: Matrix,
    l_tensor: Option<LTensor>,
    kahler_expected: Option<bool>,
    metric_inv: Matrix,
    omega_inv: Matrix,
    /// `gamma[i][j][k] = Γ^i_{jk}`.
    gamma: Vec<Vec<Vec<RationalFunction>>>,
    /// `riemann[i][j][k][l] = R^i_{jkl}`, so `R(∂_k,∂_l)∂_j = R^i_{jkl}∂_i`.
    riemann: Vec<Vec<Vec<Vec<RationalFunction>>>>,
    /// `j[b][c] = J^b_c`, so `J∂_c = J^b_c ∂_b`.
    j: Matrix,
    j_inv: Matrix,
    omega_form: Form,
}

impl ChartGeometry {
    /// Builds and validates a chart: symmetry of `g`, antisymmetry of `ω`
    /// and `L`, non-degeneracy of both, and `dω = 0`.
    pub fn new(
        name: impl Into<String>,
        coords: Vec<String>,
        metric: Matrix,
        omega: Matrix,
        l_tensor: Option<LTensor>,
    ) -> Result<Self> {
        let name = name.into();
        let n = coords.len();
        if n == 0 || n % 2 == 1 {
            return Err(Error::Construction(format!(
                "chart dimension must be a positive even integer, got {n}"
            )));
        }
        if n > MAX_VARS {
            return Err(Error::Construction(format!(
                "chart dimension {n} exceeds the supported maximum {MAX_VARS}"
            )));
        }
        let square = |m: &Matrix| m.len() == n && m.iter().all(|r| r.len() == n);
        if !square(&metric) || !square(&omega) {
            return Err(Error::Construction("metric and symplectic matrices must be n×n".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if metric[i][j] != metric[j][i] {
                    return Err(Error::Construction(format!(
                        "metric is not symmetric: g[{}][{}] ≠ g[{}][{}]",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
                if omega[i][j] != -&omega[j][i] {
                    return Err(Error::Construction(format!(
                        "symplectic form is not antisymmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        if let Some(l) = &l_tensor {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        if l[i][j][k] != -&l[i][k][j] {
                            return Err(Error::Construction(format!(
                                "L tensor is not antisymmetric in its last pair at ({}; {}, {})",
                                i + 1,
                                j + 1,
                                k + 1
                            )));
                        }
                    }
                }
            }
        }
        let metric_inv = linalg::inverse(&metric)
            .ok_or_else(|| Error::Construction("metric is degenerate: det g = 0".into()))?;
        let omega_inv = linalg::inverse(&omega)
            .ok_or_else(|| Error::Construction("symplectic form is degenerate: det ω = 0".into()))?;
        let mut omega_form = Form::zero(n);
        for a in 0..n {
            for b in a + 1..n {
                omega_form = omega_form + Form::monomial(n, &[a, b], omega[a][b].clone());
            }
        }
        let domega = omega_form.d();
        if !domega.is_zero() {
            return Err(Error::Construction(format!(
                "symplectic form is not closed: dω has component {}",
                domega.display_with(&coords)
            )));
        }
        let gamma = christoffel_symbols(&metric, &metric_inv);
        let riemann = riemann_components(&gamma);
        let j: Matrix = (0..n)
            .map(|b| {
                (0..n)
                    .map(|c| {
                        (0..n).fold(RationalFunction::zero(), |acc, l| {
                            acc + &metric_inv[b][l] * &omega[c][l]
                        })
                    })
                    .collect()
            })
            .collect();
        let j_inv = linalg::inverse(&j).ok_or_else(|| Error::Internal("J is singular".into()))?;
        Ok(ChartGeometry {
            name,
            coords,
            metric,
            omega,
            l_tensor,
            kahler_expected: None,
            metric_inv,
            omega_inv,
            gamma,
            riemann,
            j,
            j_inv,
            omega_form,
        })
    }

    pub fn with_kahler_expected(mut self, flag: bool) -> Self {
        self.kahler_expected = Some(flag);
        self
    }

    /// The same chart carrying the tensor `L`.
    pub fn with_l_tensor(&self, l: LTensor) -> Result<Self> {
        let mut c = ChartGeometry::new(
            self.name.clone(),
            self.coords.clone(),
            self.metric.clone(),
            self.omega.clone(),
            Some(l),
        )?;
        c.kahler_expected = self.kahler_expected;
        Ok(c)
    }

    pub fn without_l_tensor(&self) -> Self {
        let mut c = self.clone();
        c.l_tensor = None;
        c
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn kahler_expected(&self) -> Option<bool> {
        self.kahler_expected
    }

    pub fn metric(&self) -> &Matrix {
        &self.metric
    }

    pub fn metric_inverse(&self) -> &Matrix {
        &self.metric_inv
    }

    pub fn omega(&self) -> &Matrix {
        &self.omega
    }

    /// The Poisson bivector `Λ = ω^{-1}`.
    pub fn poisson_bivector(&self) -> &Matrix {
        &self.omega_inv
    }

    pub fn omega_form(&self) -> &Form {
        &self.omega_form
    }

    pub fn l_tensor(&self) -> Option<&LTensor> {
        self.l_tensor.as_ref()
    }

    /// `Γ^i_{jk}`.
    pub fn christoffel(&self, i: usize, j: usize, k: usize) -> &RationalFunction {
        &self.gamma[i][j][k]
    }

    /// `R^i_{jkl}` with `R(∂_k,∂_l)∂_j = R^i_{jkl}∂_i`.
    pub fn riemann(&self, i: usize, j: usize, k: usize, l: usize) -> &RationalFunction {
        &self.riemann[i][j][k][l]
    }

    pub fn j_matrix(&self) -> &Matrix {
        &self.j
    }

    pub fn j_inverse_matrix(&self) -> &Matrix {
        &self.j_inv
    }

    pub fn metric_on(&self, x: &VectorField, y: &VectorField) -> RationalFunction {
        bilinear(&self.metric, x, y)
    }

    pub fn omega_on(&self, x: &VectorField, y: &VectorField) -> RationalFunction {
        bilinear(&self.omega, x, y)
    }

    pub fn zero_form(&self) -> Form {
        Form::zero(self.dim())
    }

    pub fn function(&self, f: RationalFunction) -> Form {
        Form::function(self.dim(), f)
    }

    pub fn coordinate_field(&self, a: usize) -> VectorField {
        VectorField::coordinate(self.dim(), a)
    }

    /// `∇_X Y`.
    pub fn covariant_derivative(&self, x: &VectorField, y: &VectorField) -> VectorField {
        let n = self.dim();
        VectorField::new(
            (0..n)
                .map(|i| {
                    let mut acc = x.apply(y.component(i));
                    for j in 0..n {
                        if x.component(j).is_zero() {
                            continue;
                        }
                        for k in 0..n {
                            if y.component(k).is_zero() || self.gamma[i][j][k].is_zero() {
                                continue;
                            }
                            acc = acc + &self.gamma[i][j][k] * &(x.component(j) * y.component(k));
                        }
                    }
                    acc
                })
                .collect(),
        )
    }

    /// `R(X,Y)Z`.
    pub fn curvature_on(&self, x: &VectorField, y: &VectorField, z: &VectorField) -> VectorField {
        let n = self.dim();
        VectorField::new(
            (0..n)
                .map(|i| {
                    let mut acc = RationalFunction::zero();
                    for j in 0..n {
                        for k in 0..n {
                            for l in 0..n {
                                let r = &self.riemann[i][j][k][l];
                                if r.is_zero() {
                                    continue;
                                }
                                let c = z.component(j) * &(x.component(k) * y.component(l));
                                acc = acc + r * &c;
                            }
                        }
                    }
                    acc
                })
                .collect(),
        )
    }

    /// The 4-tensor `R(U,V,W,Z) = −g(R(U,V)W, Z)`.
    pub fn riemann4(&self, u: &VectorField, v: &VectorField, w: &VectorField, z: &VectorField) -> RationalFunction {
        -self.metric_on(&self.curvature_on(u, v, w), z)
    }

    /// The endomorphism-valued 2-form `R^i_j = Σ_{k<l} R^i_{jkl} dx^k∧dx^l`.
    pub fn curvature_forms(&self) -> Vec<Vec<Form>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut f = Form::zero(n);
                        for k in 0..n {
                            for l in k + 1..n {
                                f = f + Form::monomial(n, &[k, l], self.riemann[i][j][k][l].clone());
                            }
                        }
                        f
                    })
                    .collect()
            })
            .collect()
    }

    /// `J` as a vector-valued 1-form.
    pub fn j_tensor(&self) -> VectorValuedForm {
        VectorValuedForm::from_matrix(&self.j)
    }

    pub fn apply_j(&self, x: &VectorField) -> VectorField {
        apply_matrix(&self.j, x)
    }

    /// `♭X = g(X, _)`.
    pub fn flat(&self, x: &VectorField) -> Form {
        let n = self.dim();
        (0..n)
            .map(|j| {
                let c = (0..n).fold(RationalFunction::zero(), |acc, i| acc + x.component(i) * &self.metric[i][j]);
                Form::dx(n, j).scale(&c)
            })
            .fold(Form::zero(n), |acc, f| acc + f)
    }

    /// `♯α`, the inverse of [`ChartGeometry::flat`] on 1-forms.
    pub fn sharp(&self, alpha: &Form) -> Result<VectorField> {
        if !alpha.is_homogeneous_of(1) {
            return Err(Error::Usage("sharp needs a 1-form".into()));
        }
        let n = self.dim();
        Ok(VectorField::new(
            (0..n)
                .map(|i| {
                    (0..n).fold(RationalFunction::zero(), |acc, j| {
                        acc + &self.metric_inv[i][j] * &alpha.coefficient(1 << j)
                    })
                })
                .collect(),
        ))
    }

    /// Exterior covariant derivative `(d^∇S)^i = dS^i + Γ^i_{jk} dx^j ∧ S^k`.
    pub fn dnabla(&self, s: &VectorValuedForm) -> VectorValuedForm {
        let n = self.dim();
        let comps = (0..n)
            .map(|i| {
                let mut acc = s.component(i).d();
                for j in 0..n {
                    for k in 0..n {
                        let g = &self.gamma[i][j][k];
                        if g.is_zero() || s.component(k).is_zero() {
                            continue;
                        }
                        acc = acc + Form::dx(n, j).wedge(s.component(k)).scale(g);
                    }
                }
                acc
            })
            .collect();
        VectorValuedForm::new(s.degree() + 1, comps)
    }

    /// The covariant derivative `∇_X` acting on forms, assembled from
    /// `∇_X f = X(f)` and `∇_X dx^a = −X^c Γ^a_{cb} dx^b`.
    pub fn nabla_derivation(&self, x: &VectorField) -> Derivation {
        let n = self.dim();
        let on_dx: Vec<Form> = (0..n)
            .map(|a| {
                let mut acc = Form::zero(n);
                for b in 0..n {
                    let c = (0..n).fold(RationalFunction::zero(), |acc, c| {
                        acc + x.component(c) * &self.gamma[a][c][b]
                    });
                    acc = acc - Form::dx(n, b).scale(&c);
                }
                acc
            })
            .collect();
        Derivation::from_operator(n, |alpha| {
            let mut out = Form::zero(n);
            for (m, c) in alpha.terms() {
                let idx = crate::exterior::mask_indices(m);
                out = out + Form::monomial(n, &idx, x.apply(c));
                for s in 0..idx.len() {
                    let prefix = Form::monomial(n, &idx[..s], c.clone());
                    let suffix = Form::monomial(n, &idx[s + 1..], RationalFunction::one());
                    out = out + prefix.wedge(&on_dx[idx[s]]).wedge(&suffix);
                }
            }
            out
        })
    }

    /// `∇_K = Σ_c K^c ∧ ∇_{∂_c}` for a vector-valued form `K`.
    pub fn nabla_of(&self, k: &VectorValuedForm) -> Derivation {
        let n = self.dim();
        let mut out = Derivation::zero(n);
        for c in 0..n {
            if k.component(c).is_zero() {
                continue;
            }
            let base = self.nabla_derivation(&self.coordinate_field(c));
            out = &out + &base.left_multiply(k.component(c));
        }
        out
    }

    /// Hamiltonian vector field with `ω(Y, X_f) = df(Y)`.
    pub fn hamiltonian_vector_field(&self, f: &RationalFunction) -> VectorField {
        let n = self.dim();
        VectorField::new(
            (0..n)
                .map(|b| {
                    (0..n).fold(RationalFunction::zero(), |acc, a| {
                        acc + &self.omega_inv[b][a] * &f.partial(a)
                    })
                })
                .collect(),
        )
    }

    /// `{f, h} = ω(X_f, X_h)`.
    pub fn poisson_bracket(&self, f: &RationalFunction, h: &RationalFunction) -> RationalFunction {
        self.omega_on(&self.hamiltonian_vector_field(f), &self.hamiltonian_vector_field(h))
    }

    /// The 2-form `L(X; _, _)`.
    pub fn l_slice(&self, x: &VectorField) -> Form {
        let n = self.dim();
        let Some(l) = &self.l_tensor else {
            return Form::zero(n);
        };
        let mut out = Form::zero(n);
        for j in 0..n {
            for k in j + 1..n {
                let c = (0..n).fold(RationalFunction::zero(), |acc, i| acc + x.component(i) * &l[i][j][k]);
                out = out + Form::monomial(n, &[j, k], c);
            }
        }
        out
    }

    /// `L(X; Y, Z)`.
    pub fn l_on(&self, x: &VectorField, y: &VectorField, z: &VectorField) -> RationalFunction {
        let n = self.dim();
        let Some(l) = &self.l_tensor else {
            return RationalFunction::zero();
        };
        let mut acc = RationalFunction::zero();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if l[i][j][k].is_zero() {
                        continue;
                    }
                    acc = acc + &l[i][j][k] * &(x.component(i) * &(y.component(j) * z.component(k)));
                }
            }
        }
        acc
    }

    /// `(∇_{∂_c}J)[b][a]`, the matrix of `∇_{∂_c}J`.
    pub fn covariant_j(&self, c: usize) -> Matrix {
        let n = self.dim();
        (0..n)
            .map(|b| {
                (0..n)
                    .map(|a| {
                        let mut acc = self.j[b][a].partial(c);
                        for m in 0..n {
                            acc = acc + &self.gamma[b][c][m] * &self.j[m][a];
                            acc = acc - &self.gamma[m][c][a] * &self.j[b][m];
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    /// Whether `∇J = 0`, equivalently `∇ω = 0`.
    pub fn is_kahler(&self) -> bool {
        (0..self.dim()).all(|c| self.covariant_j(c).iter().flatten().all(RationalFunction::is_zero))
    }

    pub fn display(&self, f: &Form) -> String {
        f.display_with(&self.coords)
    }
}

impl fmt::Display for ChartGeometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {}, coords {})", self.name, self.dim(), self.coords.join(","))
    }
}

pub(crate) fn apply_matrix(a: &Matrix, x: &VectorField) -> VectorField {
    let n = x.dim();
    VectorField::new(
        (0..n)
            .map(|i| (0..n).fold(RationalFunction::zero(), |acc, j| acc + &a[i][j] * x.component(j)))
            .collect(),
    )
}

fn bilinear(m: &Matrix, x: &VectorField, y: &VectorField) -> RationalFunction {
    let n = x.dim();
    let mut acc = RationalFunction::zero();
    for i in 0..n {
        if x.component(i).is_zero() {
            continue;
        }
        for j in 0..n {
            if m[i][j].is_zero() || y.component(j).is_zero() {
                continue;
            }
            acc = acc + &m[i][j] * &(x.component(i) * y.component(j));
        }
    }
    acc
}

/// `Γ^i_{jk} = ½ g^{im}(∂_j g_{mk} + ∂_k g_{mj} − ∂_m g_{jk})`.
pub(crate) fn christoffel_symbols(g: &Matrix, ginv: &Matrix) -> Vec<Vec<Vec<RationalFunction>>> {
    let n = g.len();
    let half = RationalFunction::from_ratio(1, 2);
    let mut lowered = vec![vec![vec![RationalFunction::zero(); n]; n]; n];
    for m in 0..n {
        for j in 0..n {
            for k in j..n {
                let v = &(&g[m][k].partial(j) + &g[m][j].partial(k)) - &g[j][k].partial(m);
                lowered[m][j][k] = v.clone();
                lowered[m][k][j] = v;
            }
        }
    }
    let mut gamma = vec![vec![vec![RationalFunction::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in j..n {
                let mut acc = RationalFunction::zero();
                for m in 0..n {
                    if !ginv[i][m].is_zero() && !lowered[m][j][k].is_zero() {
                        acc = acc + &ginv[i][m] * &lowered[m][j][k];
                    }
                }
                let v = &acc * &half;
                gamma[i][j][k] = v.clone();
                gamma[i][k][j] = v;
            }
        }
    }
    gamma
}

fn riemann_components(gamma: &[Vec<Vec<RationalFunction>>]) -> Vec<Vec<Vec<Vec<RationalFunction>>>> {
    let n = gamma.len();
    let mut r = vec![vec![vec![vec![RationalFunction::zero(); n]; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in k + 1..n {
                    let mut acc = &gamma[i][l][j].partial(k) - &gamma[i][k][j].partial(l);
                    for m in 0..n {
                        acc = acc + &gamma[i][k][m] * &gamma[m][l][j];
                        acc = acc - &gamma[i][l][m] * &gamma[m][k][j];
                    }
                    r[i][j][l][k] = -&acc;
                    r[i][j][k][l] = acc;
                }
            }
        }
    }
    r
}
