use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::form::{mask_indices, Form};
use crate::scalar::RationalFunction;

/// A vector field `Σ X^a ∂_a`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VectorField {
    comps: Vec<RationalFunction>,
}

impl VectorField {
    pub fn new(comps: Vec<RationalFunction>) -> Self {
        VectorField { comps }
    }

    pub fn zero(dim: usize) -> Self {
        VectorField {
            comps: vec![RationalFunction::zero(); dim],
        }
    }

    /// The coordinate field `∂_a`.
    pub fn coordinate(dim: usize, a: usize) -> Self {
        let mut v = Self::zero(dim);
        v.comps[a] = RationalFunction::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[RationalFunction] {
        &self.comps
    }

    pub fn component(&self, a: usize) -> &RationalFunction {
        &self.comps[a]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    /// `X(f)`.
    pub fn apply(&self, f: &RationalFunction) -> RationalFunction {
        let mut acc = RationalFunction::zero();
        for (a, c) in self.comps.iter().enumerate() {
            if !c.is_zero() {
                acc = acc + c * &f.partial(a);
            }
        }
        acc
    }

    /// Lie bracket `[X, Y]`.
    pub fn bracket(&self, other: &VectorField) -> VectorField {
        VectorField {
            comps: (0..self.dim())
                .map(|a| self.apply(&other.comps[a]) - other.apply(&self.comps[a]))
                .collect(),
        }
    }

    pub fn scale(&self, f: &RationalFunction) -> VectorField {
        VectorField {
            comps: self.comps.iter().map(|c| c * f).collect(),
        }
    }

    /// The same field viewed as a vector-valued 0-form.
    pub fn to_vvf(&self) -> VectorValuedForm {
        let dim = self.dim();
        VectorValuedForm::new(
            0,
            self.comps
                .iter()
                .map(|c| Form::function(dim, c.clone()))
                .collect(),
        )
    }

    /// Interior product `i_X α` into the first slot.
    pub fn insert(&self, alpha: &Form) -> Form {
        let dim = alpha.dim();
        let mut out = Form::zero(dim);
        for (m, c) in alpha.terms() {
            for (s, i) in mask_indices(m).into_iter().enumerate() {
                if self.comps[i].is_zero() {
                    continue;
                }
                let coeff = c * &self.comps[i];
                let coeff = if s % 2 == 1 { -coeff } else { coeff };
                out.accumulate(m & !(1 << i), coeff);
            }
        }
        out
    }

    /// Lie derivative via Cartan's formula.
    pub fn lie(&self, alpha: &Form) -> Form {
        self.insert(&alpha.d()) + self.insert(alpha).d()
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let pieces: Vec<String> = self
            .comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| {
                let name = names.get(a).cloned().unwrap_or_else(|| format!("x{a}"));
                format!("({})*d/d{}", c.display_with(names), name)
            })
            .collect();
        if pieces.is_empty() {
            "0".into()
        } else {
            pieces.join(" + ")
        }
    }
}

impl Add<&VectorField> for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        VectorField {
            comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&VectorField> for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        VectorField {
            comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        VectorField {
            comps: self.comps.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

/// A vector-valued form `Σ_c K^c ⊗ ∂_c` whose components are homogeneous
/// forms of a common degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VectorValuedForm {
    degree: usize,
    comps: Vec<Form>,
}

impl VectorValuedForm {
    pub fn new(degree: usize, comps: Vec<Form>) -> Self {
        let dim = comps.len();
        for c in &comps {
            assert_eq!(c.dim(), dim, "component on a different chart");
            assert!(
                c.is_homogeneous_of(degree),
                "component is not homogeneous of degree {degree}"
            );
        }
        VectorValuedForm { degree, comps }
    }

    pub fn zero(dim: usize, degree: usize) -> Self {
        VectorValuedForm {
            degree,
            comps: vec![Form::zero(dim); dim],
        }
    }

    /// `Id = Σ dx^c ⊗ ∂_c`.
    pub fn identity(dim: usize) -> Self {
        VectorValuedForm {
            degree: 1,
            comps: (0..dim).map(|c| Form::dx(dim, c)).collect(),
        }
    }

    /// The endomorphism with matrix `A[b][j]`, i.e. `A ∂_j = Σ_b A[b][j] ∂_b`.
    pub fn from_matrix(a: &[Vec<RationalFunction>]) -> Self {
        let dim = a.len();
        VectorValuedForm {
            degree: 1,
            comps: (0..dim)
                .map(|b| {
                    (0..dim)
                        .map(|j| Form::dx(dim, j).scale(&a[b][j]))
                        .fold(Form::zero(dim), |acc, f| acc + f)
                })
                .collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Form] {
        &self.comps
    }

    pub fn component(&self, c: usize) -> &Form {
        &self.comps[c]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Form::is_zero)
    }

    /// For a degree-0 value, the underlying vector field.
    pub fn as_vector_field(&self) -> Option<VectorField> {
        (self.degree == 0).then(|| VectorField::new(self.comps.iter().map(Form::function_part).collect()))
    }

    /// `β ∧ K`, wedging on the left of every component.
    pub fn wedge_left(&self, beta: &Form) -> VectorValuedForm {
        let comps: Vec<Form> = self.comps.iter().map(|c| beta.wedge(c)).collect();
        let degree = comps
            .iter()
            .find_map(Form::degree)
            .unwrap_or(self.degree + beta.degree().unwrap_or(0));
        VectorValuedForm::new(degree, comps)
    }

    pub fn map_components(&self, degree: usize, f: impl Fn(&Form) -> Form) -> VectorValuedForm {
        VectorValuedForm::new(degree, self.comps.iter().map(f).collect())
    }

    /// Applies the endomorphism-valued form `E^i_j` to the vector slot:
    /// `(E·K)^i = Σ_j E^i_j ∧ K^j`, with `E` of form degree `e`.
    pub fn apply_endomorphism(&self, e: &[Vec<Form>], e_degree: usize) -> VectorValuedForm {
        let dim = self.dim();
        let comps = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| e[i][j].wedge(&self.comps[j]))
                    .fold(Form::zero(dim), |acc, f| acc + f)
            })
            .collect();
        VectorValuedForm::new(self.degree + e_degree, comps)
    }

    /// `(A·K)^i = Σ_j A[i][j] K^j` for a function matrix `A`.
    pub fn apply_matrix(&self, a: &[Vec<RationalFunction>]) -> VectorValuedForm {
        let dim = self.dim();
        let comps = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| self.comps[j].scale(&a[i][j]))
                    .fold(Form::zero(dim), |acc, f| acc + f)
            })
            .collect();
        VectorValuedForm::new(self.degree, comps)
    }

    /// Evaluates a vector-valued 1-form on a vector field.
    pub fn on_vector(&self, x: &VectorField) -> VectorValuedForm {
        assert_eq!(self.degree, 1, "evaluation on a vector needs a 1-form");
        VectorValuedForm::new(0, self.comps.iter().map(|c| x.insert(c)).collect())
    }

    /// The algebraic derivation `i_K` of degree `deg K − 1`.
    pub fn insert(&self, alpha: &Form) -> Form {
        let dim = alpha.dim();
        let odd_shift = (self.degree + 1) % 2 == 1;
        let mut out = Form::zero(dim);
        for (m, c) in alpha.terms() {
            let idx = mask_indices(m);
            for (s, &i) in idx.iter().enumerate() {
                if self.comps[i].is_zero() {
                    continue;
                }
                let prefix = Form::monomial(dim, &idx[..s], c.clone());
                let suffix = Form::monomial(dim, &idx[s + 1..], RationalFunction::one());
                let piece = prefix.wedge(&self.comps[i]).wedge(&suffix);
                if odd_shift && s % 2 == 1 {
                    out = out - piece;
                } else {
                    out = out + piece;
                }
            }
        }
        out
    }

    /// `L_K = [i_K, d] = i_K∘d − (−1)^{k−1} d∘i_K`.
    pub fn lie(&self, alpha: &Form) -> Form {
        let first = self.insert(&alpha.d());
        let second = self.insert(alpha).d();
        if self.degree % 2 == 1 {
            first - second
        } else {
            first + second
        }
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let pieces: Vec<String> = self
            .comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| {
                let name = names.get(a).cloned().unwrap_or_else(|| format!("x{a}"));
                format!("({})(x)d/d{}", c.display_with(names), name)
            })
            .collect();
        if pieces.is_empty() {
            "0".into()
        } else {
            pieces.join(" + ")
        }
    }
}

impl Add<&VectorValuedForm> for &VectorValuedForm {
    type Output = VectorValuedForm;
    fn add(self, rhs: &VectorValuedForm) -> VectorValuedForm {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        assert_eq!(self.degree, rhs.degree, "sum of vector-valued forms of different degree");
        VectorValuedForm {
            degree: self.degree,
            comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&VectorValuedForm> for &VectorValuedForm {
    type Output = VectorValuedForm;
    fn sub(self, rhs: &VectorValuedForm) -> VectorValuedForm {
        self + &(-rhs)
    }
}

impl Neg for &VectorValuedForm {
    type Output = VectorValuedForm;
    fn neg(self) -> VectorValuedForm {
        VectorValuedForm {
            degree: self.degree,
            comps: self.comps.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for VectorValuedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> RationalFunction {
        RationalFunction::var(0)
    }

    #[test]
    fn insertion_examples() {
        let dxdy = Form::monomial(2, &[0, 1], RationalFunction::one());
        assert_eq!(VectorField::coordinate(2, 0).insert(&dxdy), Form::dx(2, 1));
        assert!(VectorField::coordinate(2, 0).insert(&Form::function(2, x())).is_zero());
        let xdy = VectorField::new(vec![RationalFunction::zero(), x()]);
        assert_eq!(xdy.insert(&Form::dx(2, 1)), Form::function(2, x()));
    }

    #[test]
    fn lie_derivative_example() {
        let xdy = Form::function(2, x()).wedge(&Form::dx(2, 1));
        assert_eq!(VectorField::coordinate(2, 0).lie(&xdy), Form::dx(2, 1));
    }

    #[test]
    fn identity_insertion_counts_degree() {
        let id = VectorValuedForm::identity(3);
        let a = Form::monomial(3, &[0, 2], x()) + Form::monomial(3, &[1, 2], RationalFunction::from_int(5));
        assert_eq!(id.insert(&a), a.scale_int(2));
        assert!(id.insert(&Form::function(3, x())).is_zero());
        assert_eq!(id.lie(&a), a.d());
    }
}
