//! Sparse multivariate polynomials over the rationals.
//!
//! Monomials pack up to [`MAX_VARS`] exponents of at most 255 into a `u64`,
//! variable 0 in the most significant byte. Terms are kept sorted by
//! descending graded-lexicographic order with no zero coefficients, so two
//! polynomials are equal exactly when their term vectors are equal.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

/// Maximum number of chart coordinates a polynomial can carry.
pub const MAX_VARS: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    fn shift(var: usize) -> u32 {
        assert!(var < MAX_VARS, "variable index {var} exceeds {MAX_VARS}");
        (8 * (MAX_VARS - 1 - var)) as u32
    }

    pub fn var(var: usize) -> Self {
        Monomial(1u64 << Self::shift(var))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut m = 0u64;
        for (v, &e) in exps.iter().enumerate() {
            assert!(e < 256, "exponent {e} too large");
            m |= (e as u64) << Self::shift(v);
        }
        Monomial(m)
    }

    pub fn exponent(self, var: usize) -> u32 {
        ((self.0 >> Self::shift(var)) & 0xff) as u32
    }

    pub fn degree(self) -> u32 {
        (0..MAX_VARS).map(|v| self.exponent(v)).sum()
    }

    pub fn mul(self, other: Monomial) -> Monomial {
        for v in 0..MAX_VARS {
            assert!(
                self.exponent(v) + other.exponent(v) < 256,
                "monomial exponent overflow"
            );
        }
        Monomial(self.0 + other.0)
    }

    pub fn divides(self, other: Monomial) -> bool {
        (0..MAX_VARS).all(|v| self.exponent(v) <= other.exponent(v))
    }

    /// `other / self`; caller guarantees divisibility.
    fn quotient_of(self, other: Monomial) -> Monomial {
        Monomial(other.0 - self.0)
    }

    fn min(self, other: Monomial) -> Monomial {
        let mut m = 0u64;
        for v in 0..MAX_VARS {
            m |= (self.exponent(v).min(other.exponent(v)) as u64) << Self::shift(v);
        }
        Monomial(m)
    }

    fn with_exponent(self, var: usize, e: u32) -> Monomial {
        let s = Self::shift(var);
        Monomial((self.0 & !(0xffu64 << s)) | ((e as u64) << s))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Polynomial {
    // descending grlex, nonzero coefficients
    terms: Vec<(Monomial, BigRational)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial {
                terms: vec![(Monomial::ONE, c)],
            }
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(v: usize) -> Self {
        Polynomial {
            terms: vec![(Monomial::var(v), BigRational::one())],
        }
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(it: I) -> Self {
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in it {
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        Polynomial {
            terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE)
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(m, c)] if *m == Monomial::ONE => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.first()
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.terms
            .first()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(v) > 0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (*m, -a)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { terms: out }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(*mb);
                let p = ca * cb;
                match acc.get_mut(&m) {
                    Some(c) => *c += p,
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        Polynomial {
            terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        // multiplying by a monomial preserves the grlex order of terms
        Polynomial {
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = divisor.terms[0].clone();
        let lc_inv = lc.recip();
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = &c * &lc_inv;
            rem = rem.sub(&divisor.mul_monomial(qm, &qc));
            quotient.push((qm, qc));
        }
        // quotient terms are produced in descending order
        Some(Polynomial { terms: quotient })
    }

    pub fn partial(&self, v: usize) -> Self {
        Polynomial::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(v);
            if e == 0 {
                None
            } else {
                Some((m.with_exponent(v, e - 1), c * BigRational::from_integer(e.into())))
            }
        }))
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, x) in point.iter().enumerate() {
                let e = m.exponent(v);
                if e > 0 {
                    t *= num::pow::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Scale so the grlex-leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => Self::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Coefficients of `self` viewed as a polynomial in `v`, indexed by exponent.
    fn coefficients_in(&self, v: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            buckets[m.exponent(v) as usize].push((m.with_exponent(v, 0), c.clone()));
        }
        buckets.into_iter().map(Polynomial::from_terms).collect()
    }

    fn from_coefficients_in(v: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut out = Polynomial::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&c.mul_monomial(Monomial::ONE.with_exponent(v, k as u32), &BigRational::one()));
            }
        }
        out
    }

    fn lowest_var(&self) -> Option<usize> {
        (0..MAX_VARS).find(|&v| self.uses_var(v))
    }

    /// Greatest common divisor, normalized monic (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Self::one();
        }
        if self.terms.len() == 1 {
            return monomial_gcd(self.terms[0].0, other);
        }
        if other.terms.len() == 1 {
            return monomial_gcd(other.terms[0].0, self);
        }
        if self == other {
            return self.monic();
        }
        // a variable only one side uses can be eliminated through the content
        for w in 0..MAX_VARS {
            match (self.uses_var(w), other.uses_var(w)) {
                (true, false) => return other.gcd(&content_in(self, w)),
                (false, true) => return self.gcd(&content_in(other, w)),
                _ => {}
            }
        }
        let v = match self.lowest_var() {
            Some(a) => a,
            None => return Self::one(),
        };
        let ca = content_in(self, v);
        let cb = content_in(other, v);
        let content = ca.gcd(&cb);
        let mut a = self.div_exact(&ca).expect("content divides");
        let mut b = other.div_exact(&cb).expect("content divides");
        if a.degree_in(v) < b.degree_in(v) {
            std::mem::swap(&mut a, &mut b);
        }
        let g = loop {
            let r = pseudo_remainder(&a, &b, v);
            if r.is_zero() {
                break b;
            }
            if r.degree_in(v) == 0 {
                break Polynomial::one();
            }
            a = b;
            b = primitive_part_in(&r, v);
        };
        content.mul(&primitive_part_in(&g, v)).monic()
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for v in 0..MAX_VARS {
                let e = m.exponent(v);
                if e == 0 {
                    continue;
                }
                let name = names.get(v).cloned().unwrap_or_else(|| format!("x{v}"));
                if e == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

fn monomial_gcd(m: Monomial, p: &Polynomial) -> Polynomial {
    let g = p.terms.iter().fold(m, |acc, (t, _)| acc.min(*t));
    Polynomial::monomial(g, BigRational::one())
}

fn content_in(p: &Polynomial, v: usize) -> Polynomial {
    let mut g = Polynomial::zero();
    for c in p.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        g = g.gcd(&c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part_in(p: &Polynomial, v: usize) -> Polynomial {
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").monic()
}

fn pseudo_remainder(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let db = b.degree_in(v);
    let bc = b.coefficients_in(v);
    let lb = bc[db as usize].clone();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.coefficients_in(v)[dr as usize].clone();
        let shift = Monomial::ONE.with_exponent(v, dr - db);
        let t = Polynomial::from_coefficients_in(v, &[lr]).mul_monomial(shift, &BigRational::one());
        r = r.mul(&lb).sub(&t.mul(b));
    }
    r
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Polynomial {
        Polynomial::var(0)
    }
    fn y() -> Polynomial {
        Polynomial::var(1)
    }
    fn c(n: i64) -> Polynomial {
        Polynomial::from_int(n)
    }

    #[test]
    fn grlex_orders_by_degree_then_lex() {
        let a = Monomial::from_exponents(&[0, 2]);
        let b = Monomial::from_exponents(&[1, 0]);
        let d = Monomial::from_exponents(&[1, 1]);
        assert!(a > b);
        assert!(Monomial::from_exponents(&[2, 0]) > d);
        assert!(d > Monomial::from_exponents(&[0, 2]));
    }

    #[test]
    fn exact_division_and_remainder_detection() {
        let p = x().add(&y()).mul(&x().sub(&y()));
        assert_eq!(p.div_exact(&x().add(&y())), Some(x().sub(&y())));
        assert_eq!(p.div_exact(&x().add(&c(1))), None);
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let common = x().mul(&y()).add(&c(1));
        let a = common.mul(&x().sub(&c(2)));
        let b = common.mul(&y().add(&x().pow(2)));
        assert_eq!(a.gcd(&b), common.monic());
        assert!(x().add(&c(1)).gcd(&x().sub(&c(1))).is_one());
    }

    #[test]
    fn gcd_of_sphere_denominators() {
        let s = c(1).add(&x().pow(2)).add(&y().pow(2));
        let a = s.pow(3).mul(&x());
        let b = s.pow(2).mul(&y().add(&c(3)));
        assert_eq!(a.gcd(&b), s.pow(2).monic());
    }

    #[test]
    fn partial_and_eval() {
        let p = x().pow(2).mul(&y());
        assert_eq!(p.partial(0), x().mul(&y()).scale(&BigRational::from_integer(2.into())));
        let pt = [BigRational::from_integer(2.into()), BigRational::from_integer(3.into())];
        assert_eq!(p.eval(&pt), BigRational::from_integer(12.into()));
    }
}
