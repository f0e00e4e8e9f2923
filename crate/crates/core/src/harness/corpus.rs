//! Seeded random samples of functions, forms and `L` tensors.

use std::collections::BTreeMap;

use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exterior::Form;
use crate::geometry::{ChartGeometry, LTensor};
use crate::scalar::{Monomial, Polynomial, RationalFunction};

pub const MAX_COEFFICIENT: i64 = 3;
pub const MAX_TOTAL_DEGREE: u32 = 4;
pub const MAX_MONOMIALS: usize = 4;

/// A deterministic sample set for one chart.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub seed: u64,
    pub functions: Vec<RationalFunction>,
    /// Forms of positive degree, cycling through degrees `1..=max_form_degree`.
    pub forms: Vec<Form>,
}

fn random_exponents(rng: &mut ChaCha8Rng, dim: usize, vars: usize) -> Vec<u32> {
    let total = rng.gen_range(0..=MAX_TOTAL_DEGREE);
    let mut e = vec![0u32; dim];
    for _ in 0..total {
        e[rng.gen_range(0..vars)] += 1;
    }
    e
}

/// A polynomial with at most four monomials, coefficients in `[−3,3]`,
/// total degree at most four, in the first `vars` coordinates.
pub fn random_polynomial(rng: &mut ChaCha8Rng, dim: usize, vars: usize) -> RationalFunction {
    loop {
        let count = rng.gen_range(1..=MAX_MONOMIALS);
        let mut terms: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
        for _ in 0..count {
            let e = random_exponents(rng, dim, vars);
            let mut c = 0;
            while c == 0 {
                c = rng.gen_range(-MAX_COEFFICIENT..=MAX_COEFFICIENT);
            }
            terms.entry(e).or_insert(c);
        }
        let p = Polynomial::from_terms(
            terms
                .into_iter()
                .map(|(e, c)| (Monomial::from_exponents(&e), BigRational::from_integer(c.into()))),
        );
        if !p.is_constant() {
            return RationalFunction::from_poly(p);
        }
    }
}

fn random_subset(rng: &mut ChaCha8Rng, dim: usize, size: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..dim).collect();
    for i in (1..idx.len()).rev() {
        let j = rng.gen_range(0..=i);
        idx.swap(i, j);
    }
    let mut out = idx[..size].to_vec();
    out.sort_unstable();
    out
}

/// A `p`-form with one or two terms.
pub fn random_form(rng: &mut ChaCha8Rng, dim: usize, vars: usize, p: usize) -> Form {
    loop {
        let mut out = Form::zero(dim);
        for _ in 0..rng.gen_range(1..=2) {
            let idx = random_subset(rng, dim, p);
            out = out + Form::monomial(dim, &idx, random_polynomial(rng, dim, vars));
        }
        if !out.is_zero() {
            return out;
        }
    }
}

impl Corpus {
    /// `samples` functions and `samples` forms of positive degree.
    pub fn generate(chart: &ChartGeometry, seed: u64, samples: usize, max_form_degree: usize) -> Corpus {
        let dim = chart.dim();
        let vars = dim;
        let max_p = max_form_degree.clamp(1, dim);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let functions = (0..samples).map(|_| random_polynomial(&mut rng, dim, vars)).collect();
        let forms = (0..samples)
            .map(|i| random_form(&mut rng, dim, vars, 1 + i % max_p))
            .collect();
        Corpus { seed, functions, forms }
    }

    pub fn one_forms(&self) -> Vec<&Form> {
        self.forms.iter().filter(|f| f.is_homogeneous_of(1)).collect()
    }

    /// Every sample as a form: functions first, then the forms.
    pub fn all_forms(&self, chart: &ChartGeometry) -> Vec<Form> {
        self.functions
            .iter()
            .map(|f| chart.function(f.clone()))
            .chain(self.forms.iter().cloned())
            .collect()
    }
}

/// Nonzero `L` tensors for a chart: `L(∂_a; ∂_1, ∂_2) = c` for a few simple
/// coefficients, extended by antisymmetry in the last two slots.
pub fn l_samples(chart: &ChartGeometry) -> Vec<LTensor> {
    let n = chart.dim();
    let coeffs = [
        (0, RationalFunction::one()),
        (1 % n, RationalFunction::var(0)),
        (0, RationalFunction::var(1) + RationalFunction::from_int(2)),
    ];
    coeffs
        .into_iter()
        .map(|(a, c)| {
            let mut l = vec![vec![vec![RationalFunction::zero(); n]; n]; n];
            l[a][0][1] = c.clone();
            l[a][1][0] = -&c;
            l
        })
        .collect()
}

/// On a four-dimensional chart, `L = dx^a ⊗ β` for 2-forms `β` that do or do
/// not satisfy `β(JY, Z) = −β(Y, JZ)`.
pub fn l_with_two_form(chart: &ChartGeometry, a: usize, beta: &Form) -> LTensor {
    let n = chart.dim();
    let mut l = vec![vec![vec![RationalFunction::zero(); n]; n]; n];
    for j in 0..n {
        for k in 0..n {
            let v = chart.coordinate_field(k).insert(&chart.coordinate_field(j).insert(beta));
            l[a][j][k] = v.function_part();
        }
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::library;

    #[test]
    fn corpus_is_deterministic_and_bounded() {
        let c = library::sphere2();
        let a = Corpus::generate(&c, 42, 8, 1);
        let b = Corpus::generate(&c, 42, 8, 1);
        assert_eq!(a.functions, b.functions);
        assert_eq!(a.forms, b.forms);
        assert_ne!(a.functions, Corpus::generate(&c, 43, 8, 1).functions);
        for f in &a.functions {
            let p = f.numerator();
            assert!(f.is_polynomial());
            assert!(p.total_degree() <= MAX_TOTAL_DEGREE);
            assert!(p.terms().len() <= MAX_MONOMIALS);
            assert!(p.terms().iter().all(|(_, c)| c.numer().magnitude() <= &3u8.into()));
        }
        assert_eq!(a.one_forms().len(), 8);
        let d = Corpus::generate(&library::flat4(), 1, 6, 3);
        let degrees: Vec<_> = d.forms.iter().map(|f| f.degree().unwrap()).collect();
        assert_eq!(degrees, vec![1, 2, 3, 1, 2, 3]);
    }
}
