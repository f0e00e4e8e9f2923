use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Zero};

use super::poly::{Polynomial, MAX_VARS};
use crate::error::{Error, Result};

/// Quotient of two polynomials over the rationals in the chart coordinates.
///
/// Always stored reduced: numerator and denominator are coprime and the
/// denominator is monic in graded-lex order, so structural equality is
/// equality of rational functions. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(Polynomial::from_int(n))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::from_poly(Polynomial::constant(q))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn var(v: usize) -> Self {
        Self::from_poly(Polynomial::var(v))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    /// Builds `num/den`, reducing to canonical form.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.constant_value() {
            return RationalFunction {
                num: num.scale(&c.recip()),
                den: Polynomial::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coefficient().recip();
        RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::Domain("division by the zero rational function".into()));
        }
        let inv = RationalFunction {
            num: other.den.clone(),
            den: other.num.clone(),
        };
        // other.num may carry a non-monic leading coefficient; mul renormalizes
        Ok(self.mul_raw(&inv))
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        if e < 0 {
            return self.recip()?.pow(-e);
        }
        Ok(RationalFunction {
            num: self.num.pow(e as u32),
            den: self.den.pow(e as u32),
        })
    }

    fn add_raw(&self, other: &Self, negate: bool) -> Self {
        let rhs = if negate { other.num.neg() } else { other.num.clone() };
        if self.den == other.den {
            if self.den.is_one() {
                return Self::from_poly(self.num.add(&rhs));
            }
            return Self::normalized(self.num.add(&rhs), self.den.clone());
        }
        if self.den.is_one() || other.den.is_one() {
            // a reduced fraction plus a polynomial stays reduced
            let num = self.num.mul(&other.den).add(&rhs.mul(&self.den));
            let den = self.den.mul(&other.den);
            let lc = den.leading_coefficient().recip();
            return RationalFunction {
                num: num.scale(&lc),
                den: den.scale(&lc),
            };
        }
        // Henrici: only factors of gcd(d1, d2) can cancel
        let g = self.den.gcd(&other.den);
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = other.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d2).add(&rhs.mul(&d1));
        if num.is_zero() {
            return Self::zero();
        }
        let e = if g.is_one() { g.clone() } else { num.gcd(&g) };
        let num = num.div_exact(&e).expect("gcd divides");
        let den = d1.mul(&g.div_exact(&e).expect("gcd divides")).mul(&d2);
        let lc = den.leading_coefficient().recip();
        RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    fn mul_raw(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        // cross-cancel so the product of reduced fractions stays reduced
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lc = den.leading_coefficient().recip();
        RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    /// Partial derivative with respect to coordinate `v` (quotient rule).
    pub fn partial(&self, v: usize) -> Self {
        assert!(v < MAX_VARS, "coordinate index {v} out of range");
        if self.den.is_one() {
            return Self::from_poly(self.num.partial(v));
        }
        let dn = self.num.partial(v);
        let dd = self.den.partial(v);
        if dd.is_zero() {
            return Self::normalized(dn, self.den.clone());
        }
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        Self::normalized(num, self.den.mul(&self.den))
    }

    /// Partial derivative checked against a chart of dimension `dim`.
    pub fn try_partial(&self, v: usize, dim: usize) -> Result<Self> {
        if v >= dim {
            return Err(Error::Usage(format!(
                "coordinate index {v} out of range for a chart of dimension {dim}"
            )));
        }
        Ok(self.partial(v))
    }

    /// Exact substitution of a rational point.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::Evaluation("denominator vanishes at the point".into()));
        }
        Ok(self.num.eval(point) / d)
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let n = self.num.display_with(names);
        if self.den.is_one() {
            return n;
        }
        let d = self.den.display_with(names);
        let wrap = |s: String, p: &Polynomial| {
            if p.terms().len() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(n, &self.num), wrap(d, &self.den))
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

impl From<i64> for RationalFunction {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                let f: fn(&RationalFunction, &RationalFunction) -> RationalFunction = $body;
                f(self, rhs)
            }
        }
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$method(rhs)
            }
        }
        impl $tr<RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_raw(b, false));
forward_binop!(Sub, sub, |a, b| a.add_raw(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_raw(b));

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x() -> RationalFunction {
        RationalFunction::var(0)
    }
    fn y() -> RationalFunction {
        RationalFunction::var(1)
    }
    fn c(n: i64) -> RationalFunction {
        RationalFunction::from_int(n)
    }
    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn cancellation_in_products() {
        let a = x().checked_div(&(c(1) + y())).unwrap();
        assert_eq!(a * (c(1) + y()), x());
    }

    #[test]
    fn sum_of_reciprocals() {
        let inv = c(1).checked_div(&x()).unwrap();
        assert_eq!(&inv + &inv, c(2).checked_div(&x()).unwrap());
    }

    #[test]
    fn division_by_zero_is_a_domain_error() {
        assert!(matches!(c(1).checked_div(&c(0)), Err(Error::Domain(_))));
        assert!(RationalFunction::new(Polynomial::one(), Polynomial::zero()).is_err());
    }

    #[test]
    fn partials() {
        assert_eq!((x() * x() * y()).partial(0), c(2) * x() * y());
        let s = c(1) + x() * x();
        let f = c(1).checked_div(&s).unwrap();
        let expected = (c(-2) * x()).checked_div(&(&s * &s)).unwrap();
        assert_eq!(f.partial(0), expected);
        assert!(x().partial(1).is_zero());
        assert!(x().try_partial(2, 2).is_err());
    }

    #[test]
    fn evaluation() {
        assert_eq!((x() * x() + y()).eval(&[q(2), q(3)]).unwrap(), q(7));
        let inv = c(1).checked_div(&x()).unwrap();
        assert!(matches!(inv.eval(&[q(0)]), Err(Error::Evaluation(_))));
        assert!((x() - x()).eval(&[q(5)]).unwrap().is_zero());
    }

    #[test]
    fn zero_has_unique_representation() {
        let a = x().checked_div(&(c(1) + y())).unwrap();
        let z = &a - &a;
        assert_eq!(z, RationalFunction::zero());
        assert!(z.denominator().is_one());
    }

    fn small_poly() -> impl Strategy<Value = RationalFunction> {
        proptest::collection::vec((-3i64..=3, 0u32..3, 0u32..3), 1..4).prop_map(|terms| {
            terms.into_iter().fold(RationalFunction::zero(), |acc, (k, a, b)| {
                acc + c(k) * x().pow(a as i32).unwrap() * y().pow(b as i32).unwrap()
            })
        })
    }

    fn small_rf() -> impl Strategy<Value = RationalFunction> {
        (small_poly(), small_poly()).prop_map(|(n, d)| {
            if d.is_zero() {
                n
            } else {
                n.checked_div(&d).unwrap()
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn canonical_form_is_order_independent(a in small_rf(), b in small_rf(), d in small_rf()) {
            prop_assert_eq!((&a + &b) + &d, &a + (&b + &d));
            prop_assert_eq!((&a * &b) * &d, &a * (&b * &d));
            prop_assert_eq!(&a * (&b + &d), &a * &b + &a * &d);
        }

        #[test]
        fn mixed_partials_commute(f in small_rf()) {
            prop_assert_eq!(f.partial(0).partial(1), f.partial(1).partial(0));
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in small_rf(), b in small_rf(), px in -4i64..5, py in -4i64..5) {
            let p = [q(px), q(py)];
            if let (Ok(va), Ok(vb)) = (a.eval(&p), b.eval(&p)) {
                if let Ok(s) = (&a + &b).eval(&p) { prop_assert_eq!(s, &va + &vb); }
                if let Ok(m) = (&a * &b).eval(&p) { prop_assert_eq!(m, &va * &vb); }
            }
        }
    }
}
