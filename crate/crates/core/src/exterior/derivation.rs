//! Derivations of the algebra of forms in Frölicher–Nijenhuis normal form.
//!
//! Every derivation of degree `k` is uniquely `L_K + i_{L'}` with `K` a
//! vector-valued `k`-form and `L'` a vector-valued `(k+1)`-form. A derivation
//! without a fixed degree is kept as a finite sum of homogeneous pieces.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::form::Form;
use super::vector::{VectorField, VectorValuedForm};

/// One homogeneous piece `L_K + i_{L'}` of degree `k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DerivationPart {
    /// `K`, of form degree `k`; always zero when `k = −1`.
    pub lie: VectorValuedForm,
    /// `L'`, of form degree `k + 1`.
    pub alg: VectorValuedForm,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Derivation {
    dim: usize,
    parts: BTreeMap<i32, DerivationPart>,
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl Derivation {
    pub fn zero(dim: usize) -> Self {
        Derivation {
            dim,
            parts: BTreeMap::new(),
        }
    }

    /// `L_K + i_{L'}` with `deg L' = deg K + 1`.
    pub fn from_parts(lie: VectorValuedForm, alg: VectorValuedForm) -> Self {
        let k = lie.degree() as i32;
        let mut d = Self::zero(lie.dim());
        d.insert_part(k, lie, alg);
        d
    }

    fn insert_part(&mut self, k: i32, lie: VectorValuedForm, alg: VectorValuedForm) {
        let lie = if lie.is_zero() {
            VectorValuedForm::zero(self.dim, k.max(0) as usize)
        } else {
            assert_eq!(lie.degree() as i32, k, "lie part degree mismatch");
            lie
        };
        let alg = if alg.is_zero() {
            VectorValuedForm::zero(self.dim, (k + 1) as usize)
        } else {
            assert_eq!(alg.degree() as i32, k + 1, "algebraic part degree mismatch");
            alg
        };
        let entry = self.parts.entry(k).or_insert_with(|| DerivationPart {
            lie: VectorValuedForm::zero(self.dim, k.max(0) as usize),
            alg: VectorValuedForm::zero(self.dim, (k + 1) as usize),
        });
        entry.lie = &entry.lie + &lie;
        entry.alg = &entry.alg + &alg;
        if entry.lie.is_zero() && entry.alg.is_zero() {
            self.parts.remove(&k);
        }
    }

    /// The Lie derivative `L_K`.
    pub fn lie_of(k: VectorValuedForm) -> Self {
        let dim = k.dim();
        let deg = k.degree() + 1;
        Self::from_parts(k, VectorValuedForm::zero(dim, deg))
    }

    /// The algebraic derivation `i_L` of degree `deg L − 1`.
    pub fn insertion_of(l: VectorValuedForm) -> Self {
        let dim = l.dim();
        let k = l.degree() as i32 - 1;
        let mut d = Self::zero(dim);
        d.insert_part(k, VectorValuedForm::zero(dim, k.max(0) as usize), l);
        d
    }

    /// `L_X`.
    pub fn lie(x: &VectorField) -> Self {
        Self::lie_of(x.to_vvf())
    }

    /// `i_X`.
    pub fn insertion(x: &VectorField) -> Self {
        Self::insertion_of(x.to_vvf())
    }

    /// The exterior derivative as `L_{Id}`.
    pub fn exterior_derivative(dim: usize) -> Self {
        Self::lie_of(VectorValuedForm::identity(dim))
    }

    /// Reconstructs the normal form of the derivation acting as `op`, reading
    /// `K` off the coordinate functions and `L'` off the exact 1-forms `dx^c`.
    pub fn from_operator(dim: usize, op: impl Fn(&Form) -> Form) -> Self {
        let mut lie_comps: BTreeMap<usize, Vec<Form>> = BTreeMap::new();
        let images: Vec<Form> = (0..dim)
            .map(|c| op(&Form::function(dim, crate::scalar::RationalFunction::var(c))))
            .collect();
        for (c, img) in images.iter().enumerate() {
            for (p, part) in img.parts() {
                lie_comps.entry(p).or_insert_with(|| vec![Form::zero(dim); dim])[c] = part;
            }
        }
        let mut out = Self::zero(dim);
        let lies: Vec<VectorValuedForm> = lie_comps
            .into_iter()
            .map(|(p, comps)| VectorValuedForm::new(p, comps))
            .collect();
        let mut alg_comps: BTreeMap<usize, Vec<Form>> = BTreeMap::new();
        for c in 0..dim {
            let dxc = Form::dx(dim, c);
            let mut rest = op(&dxc);
            for k in &lies {
                rest = rest - k.lie(&dxc);
            }
            for (q, part) in rest.parts() {
                alg_comps.entry(q).or_insert_with(|| vec![Form::zero(dim); dim])[c] = part;
            }
        }
        for k in lies {
            let deg = k.degree() as i32;
            out.insert_part(deg, k, VectorValuedForm::zero(dim, (deg + 1) as usize));
        }
        for (q, comps) in alg_comps {
            let k = q as i32 - 1;
            out.insert_part(
                k,
                VectorValuedForm::zero(dim, k.max(0) as usize),
                VectorValuedForm::new(q, comps),
            );
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &BTreeMap<i32, DerivationPart> {
        &self.parts
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.parts.keys().copied().collect()
    }

    /// The degree when the derivation is homogeneous and nonzero.
    pub fn degree(&self) -> Option<i32> {
        (self.parts.len() == 1).then(|| *self.parts.keys().next().unwrap())
    }

    /// The homogeneous piece of degree `k`.
    pub fn component(&self, k: i32) -> Derivation {
        let mut out = Self::zero(self.dim);
        if let Some(p) = self.parts.get(&k) {
            out.parts.insert(k, p.clone());
        }
        out
    }

    /// `K` of the degree-`k` piece, zero if absent.
    pub fn lie_part(&self, k: i32) -> VectorValuedForm {
        self.parts
            .get(&k)
            .map(|p| p.lie.clone())
            .unwrap_or_else(|| VectorValuedForm::zero(self.dim, k.max(0) as usize))
    }

    /// `L'` of the degree-`k` piece, zero if absent.
    pub fn alg_part(&self, k: i32) -> VectorValuedForm {
        self.parts
            .get(&k)
            .map(|p| p.alg.clone())
            .unwrap_or_else(|| VectorValuedForm::zero(self.dim, (k + 1) as usize))
    }

    /// The Lie-type pieces only, `Σ_k L_{K_k}`.
    pub fn lie_only(&self) -> Derivation {
        let mut out = Self::zero(self.dim);
        for (k, p) in &self.parts {
            out.insert_part(*k, p.lie.clone(), VectorValuedForm::zero(self.dim, (k + 1) as usize));
        }
        out
    }

    /// The algebraic pieces only, `Σ_k i_{L'_k}`.
    pub fn alg_only(&self) -> Derivation {
        let mut out = Self::zero(self.dim);
        for (k, p) in &self.parts {
            out.insert_part(*k, VectorValuedForm::zero(self.dim, (*k).max(0) as usize), p.alg.clone());
        }
        out
    }

    pub fn apply(&self, alpha: &Form) -> Form {
        let mut out = Form::zero(alpha.dim());
        for p in self.parts.values() {
            if !p.lie.is_zero() {
                out = out + p.lie.lie(alpha);
            }
            if !p.alg.is_zero() {
                out = out + p.alg.insert(alpha);
            }
        }
        out
    }

    /// Graded commutator `[D, E] = Σ D_p E_q − (−1)^{pq} E_q D_p`.
    pub fn commutator(&self, other: &Derivation) -> Derivation {
        let dim = self.dim;
        Self::from_operator(dim, |alpha| {
            let mut out = Form::zero(dim);
            for (p, dp) in &self.parts {
                for (q, eq) in &other.parts {
                    let dp = Self::single(dim, *p, dp);
                    let eq = Self::single(dim, *q, eq);
                    let de = dp.apply(&eq.apply(alpha));
                    let ed = eq.apply(&dp.apply(alpha));
                    out = out + de;
                    out = if sign(*p as i64 * *q as i64) > 0 { out - ed } else { out + ed };
                }
            }
            out
        })
    }

    fn single(dim: usize, k: i32, part: &DerivationPart) -> Derivation {
        let mut d = Self::zero(dim);
        d.parts.insert(k, part.clone());
        d
    }

    /// `β·D : α ↦ β ∧ D(α)`.
    pub fn left_multiply(&self, beta: &Form) -> Derivation {
        if beta.is_zero() {
            return Self::zero(self.dim);
        }
        if beta.degree() == Some(0) {
            let f = beta.function_part();
            let mut out = Self::zero(self.dim);
            for (k, p) in &self.parts {
                let lie = p.lie.map_components(p.lie.degree(), |c| c.scale(&f));
                // L_{fK} = f L_K + (−1)^k df ∧ i_K
                let correction = p.lie.wedge_left(&beta.d());
                let correction = if k % 2 == 0 { correction } else { -&correction };
                let alg = p.alg.map_components(p.alg.degree(), |c| c.scale(&f));
                out.insert_part(*k, lie, &alg - &correction);
            }
            return out;
        }
        let dim = self.dim;
        Self::from_operator(dim, |alpha| beta.wedge(&self.apply(alpha)))
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.parts.is_empty() {
            return "0".into();
        }
        self.parts
            .iter()
            .map(|(k, p)| {
                format!(
                    "[deg {k}: L_{{{}}} + i_{{{}}}]",
                    p.lie.display_with(names),
                    p.alg.display_with(names)
                )
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

impl Add<&Derivation> for &Derivation {
    type Output = Derivation;
    fn add(self, rhs: &Derivation) -> Derivation {
        let mut out = self.clone();
        for (k, p) in &rhs.parts {
            out.insert_part(*k, p.lie.clone(), p.alg.clone());
        }
        out
    }
}

impl Neg for &Derivation {
    type Output = Derivation;
    fn neg(self) -> Derivation {
        Derivation {
            dim: self.dim,
            parts: self
                .parts
                .iter()
                .map(|(k, p)| {
                    (
                        *k,
                        DerivationPart {
                            lie: -&p.lie,
                            alg: -&p.alg,
                        },
                    )
                })
                .collect(),
        }
    }
}

impl Sub<&Derivation> for &Derivation {
    type Output = Derivation;
    fn sub(self, rhs: &Derivation) -> Derivation {
        self + &(-rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::RationalFunction;

    fn x() -> RationalFunction {
        RationalFunction::var(0)
    }

    #[test]
    fn d_as_lie_of_identity() {
        let d = Derivation::exterior_derivative(2);
        let xdy = Form::function(2, x()).wedge(&Form::dx(2, 1));
        assert_eq!(d.apply(&xdy), Form::monomial(2, &[0, 1], RationalFunction::one()));
        assert_eq!(d.degree(), Some(1));
    }

    #[test]
    fn insertion_as_derivation() {
        let ix = Derivation::insertion(&VectorField::coordinate(2, 0));
        let dxdy = Form::monomial(2, &[0, 1], RationalFunction::one());
        assert_eq!(ix.apply(&dxdy), Form::dx(2, 1));
        assert_eq!(ix.degree(), Some(-1));
    }

    #[test]
    fn basic_commutators() {
        let lx = Derivation::lie(&VectorField::coordinate(2, 0));
        let iy = Derivation::insertion(&VectorField::coordinate(2, 1));
        assert!(lx.commutator(&iy).is_zero());
        let d = Derivation::exterior_derivative(3);
        assert!(d.commutator(&d).is_zero());
    }

    #[test]
    fn from_operator_round_trips_d() {
        let d = Derivation::exterior_derivative(3);
        assert_eq!(Derivation::from_operator(3, |a| a.d()), d);
    }

    #[test]
    fn function_multiple_matches_operator() {
        let lx = Derivation::lie(&VectorField::new(vec![x(), RationalFunction::one()]));
        let f = Form::function(2, x() * x());
        let direct = lx.left_multiply(&f);
        let via_op = Derivation::from_operator(2, |a| f.wedge(&lx.apply(a)));
        assert_eq!(direct, via_op);
    }
}
