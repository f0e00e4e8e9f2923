use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::RationalFunction;

/// Bitmask of the differentials in a wedge monomial; bit `i` stands for `dx^i`.
pub type WedgeMask = u32;

/// Sign of `dx^A ∧ dx^B` relative to the sorted monomial `dx^{A∪B}`, or
/// `None` when the two monomials share a differential.
pub fn wedge_sign(a: WedgeMask, b: WedgeMask) -> Option<i32> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (a >> (j + 1)).count_ones();
    }
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

/// Indices of the differentials in a mask, increasing.
pub fn mask_indices(mask: WedgeMask) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    out
}

/// A differential form on a chart of dimension `dim`, possibly a sum of
/// parts of different degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Form {
    dim: usize,
    terms: BTreeMap<WedgeMask, RationalFunction>,
}

impl Form {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= 16, "chart dimension {dim} too large");
        Form {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn function(dim: usize, f: RationalFunction) -> Self {
        Self::term(dim, 0, f)
    }

    pub fn constant(dim: usize, c: i64) -> Self {
        Self::function(dim, RationalFunction::from_int(c))
    }

    /// The exact differential `dx^i`.
    pub fn dx(dim: usize, i: usize) -> Self {
        assert!(i < dim, "coordinate index {i} out of range");
        Self::term(dim, 1 << i, RationalFunction::one())
    }

    pub fn term(dim: usize, mask: WedgeMask, coeff: RationalFunction) -> Self {
        let mut f = Self::zero(dim);
        assert!(mask >> dim == 0, "differential outside the chart");
        if !coeff.is_zero() {
            f.terms.insert(mask, coeff);
        }
        f
    }

    /// `coeff · dx^{i₁}∧…∧dx^{i_p}` for indices in any order.
    pub fn monomial(dim: usize, indices: &[usize], coeff: RationalFunction) -> Self {
        let mut mask = 0;
        let mut sign = 1;
        for &i in indices {
            assert!(i < dim, "coordinate index {i} out of range");
            match wedge_sign(mask, 1 << i) {
                Some(s) => sign *= s,
                None => return Self::zero(dim),
            }
            mask |= 1 << i;
        }
        let coeff = if sign < 0 { -coeff } else { coeff };
        Self::term(dim, mask, coeff)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (WedgeMask, &RationalFunction)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, mask: WedgeMask) -> RationalFunction {
        self.terms.get(&mask).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The degree when the form is homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|m| m.count_ones() as usize);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, p: usize) -> bool {
        self.terms.keys().all(|m| m.count_ones() as usize == p)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.count_ones() as usize).max()
    }

    /// The degree-`p` homogeneous part.
    pub fn part(&self, p: usize) -> Form {
        Form {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.count_ones() as usize == p)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Nonzero homogeneous parts keyed by degree.
    pub fn parts(&self) -> BTreeMap<usize, Form> {
        let mut out: BTreeMap<usize, Form> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.count_ones() as usize)
                .or_insert_with(|| Form::zero(self.dim))
                .terms
                .insert(*m, c.clone());
        }
        out
    }

    /// The 0-degree coefficient.
    pub fn function_part(&self) -> RationalFunction {
        self.coefficient(0)
    }

    /// Multiplies the degree-`p` part by `(−1)^{p·e}`.
    pub fn twist(&self, e: i64) -> Form {
        if e.rem_euclid(2) == 0 {
            return self.clone();
        }
        Form {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, if m.count_ones() % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    pub fn scale(&self, f: &RationalFunction) -> Form {
        if f.is_zero() {
            return Form::zero(self.dim);
        }
        if f.is_one() {
            return self.clone();
        }
        Form {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (*m, c * f)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Form {
        self.scale(&RationalFunction::from_int(k))
    }

    fn check_same_chart(&self, other: &Form) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Usage(format!(
                "forms live on charts of dimension {} and {}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }

    pub fn try_wedge(&self, other: &Form) -> Result<Form> {
        self.check_same_chart(other)?;
        Ok(self.wedge(other))
    }

    /// Exterior product; panics on a chart mismatch (see [`Form::try_wedge`]).
    pub fn wedge(&self, other: &Form) -> Form {
        assert_eq!(self.dim, other.dim, "wedge of forms on different charts");
        let mut out = Form::zero(self.dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(s) = wedge_sign(*ma, *mb) {
                    let prod = ca * cb;
                    let prod = if s < 0 { -prod } else { prod };
                    out.accumulate(ma | mb, prod);
                }
            }
        }
        out
    }

    pub(crate) fn accumulate(&mut self, mask: WedgeMask, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mask) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.terms.remove(&mask);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(mask, c);
            }
        }
    }

    /// Exterior derivative.
    pub fn d(&self) -> Form {
        let mut out = Form::zero(self.dim);
        for (m, c) in &self.terms {
            for i in 0..self.dim {
                if m & (1 << i) != 0 {
                    continue;
                }
                let dc = c.partial(i);
                if dc.is_zero() {
                    continue;
                }
                let s = wedge_sign(1 << i, *m).expect("disjoint");
                out.accumulate(m | (1 << i), if s < 0 { -dc } else { dc });
            }
        }
        out
    }

    /// Applies `f` to every coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> Form {
        let mut out = Form::zero(self.dim);
        for (m, c) in &self.terms {
            out.accumulate(*m, f(c));
        }
        out
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|m| (m.count_ones(), m.reverse_bits()));
        let mut pieces = Vec::new();
        for m in keys {
            let c = &self.terms[&m];
            let wedge = mask_indices(m)
                .into_iter()
                .map(|i| format!("d{}", names.get(i).cloned().unwrap_or_else(|| format!("x{i}"))))
                .collect::<Vec<_>>()
                .join("^");
            let coeff = c.display_with(names);
            let piece = if m == 0 {
                coeff
            } else if c.is_one() {
                wedge
            } else if (-c).is_one() {
                format!("-{wedge}")
            } else if c.is_polynomial() && c.numerator().terms().len() == 1 {
                format!("{coeff}*{wedge}")
            } else {
                format!("({coeff})*{wedge}")
            };
            pieces.push(piece);
        }
        let mut out = pieces[0].clone();
        for p in &pieces[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
        }
        out
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

impl Add<&Form> for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        assert_eq!(self.dim, rhs.dim, "sum of forms on different charts");
        let (mut out, other) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &other.terms {
            out.accumulate(*m, c.clone());
        }
        out
    }
}

impl Sub<&Form> for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        self + &(-rhs)
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        Form {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Form {
    type Output = Form;
    fn neg(self) -> Form {
        -&self
    }
}

impl Add for Form {
    type Output = Form;
    fn add(self, rhs: Form) -> Form {
        &self + &rhs
    }
}

impl Sub for Form {
    type Output = Form;
    fn sub(self, rhs: Form) -> Form {
        &self - &rhs
    }
}

impl Add<&Form> for Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        &self + rhs
    }
}

impl Sub<&Form> for Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        &self - rhs
    }
}

impl std::iter::Sum for Form {
    fn sum<I: Iterator<Item = Form>>(mut iter: I) -> Form {
        let first = iter.next().expect("sum of an empty sequence of forms has no chart");
        iter.fold(first, |acc, f| acc + f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> RationalFunction {
        RationalFunction::var(0)
    }
    fn y() -> RationalFunction {
        RationalFunction::var(1)
    }

    #[test]
    fn wedge_examples() {
        let dx = Form::dx(2, 0);
        let dy = Form::dx(2, 1);
        assert!(dx.wedge(&dx).is_zero());
        assert_eq!(dx.wedge(&dy), -dy.wedge(&dx));
        let a = Form::function(2, x()).wedge(&dy);
        let b = Form::function(2, y()).wedge(&dx);
        assert_eq!(a.wedge(&b), Form::monomial(2, &[0, 1], -(x() * y())));
        assert!(Form::dx(3, 0).try_wedge(&dx).is_err());
    }

    #[test]
    fn derivative_examples() {
        let xdy = Form::function(2, x()).wedge(&Form::dx(2, 1));
        assert_eq!(xdy.d(), Form::monomial(2, &[0, 1], RationalFunction::one()));
        let r2 = RationalFunction::one() + x() * x() + y() * y();
        let c = RationalFunction::from_int(4).checked_div(&(&r2 * &r2)).unwrap();
        assert!(Form::monomial(2, &[0, 1], c).d().is_zero());
    }

    #[test]
    fn wedge_sign_counts_inversions() {
        assert_eq!(wedge_sign(0b10, 0b01), Some(-1));
        assert_eq!(wedge_sign(0b01, 0b10), Some(1));
        assert_eq!(wedge_sign(0b110, 0b001), Some(1));
        assert_eq!(wedge_sign(0b011, 0b011), None);
    }

    #[test]
    fn monomial_sorts_with_sign() {
        let f = Form::monomial(3, &[2, 0], RationalFunction::one());
        assert_eq!(f, -Form::monomial(3, &[0, 2], RationalFunction::one()));
        assert_eq!(f.display_with(&["x".into(), "y".into(), "z".into()]), "-dx^dz");
    }

    #[test]
    fn twist_flips_odd_parts() {
        let f = Form::constant(2, 3) + Form::dx(2, 0);
        assert_eq!(f.twist(1), Form::constant(2, 3) - Form::dx(2, 0));
        assert_eq!(f.twist(2), f);
    }
}
