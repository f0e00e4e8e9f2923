use super::*;
use crate::exterior::{Derivation, Form, VectorField};
use crate::geometry::library::*;
use crate::geometry::ChartGeometry;
use crate::scalar::RationalFunction;

fn x() -> RationalFunction {
    RationalFunction::var(0)
}
fn y() -> RationalFunction {
    RationalFunction::var(1)
}

fn charts() -> Vec<ChartGeometry> {
    vec![flat2(), sphere2(), halfplane(), tlift1(), tlift1q()]
}

#[test]
fn three_constructions_agree() {
    for c in charts() {
        let s = GradedSpace::new(c);
        let def = theta(&s, ThetaVariant::OmegaG).unwrap();
        let lie = theta_closed_lie(&s);
        let nab = theta_closed_nabla(&s);
        let d1 = def.differences(&lie);
        assert!(d1.is_empty(), "{}: definition vs closed L forms {:?}", s.chart().name(), d1.iter().map(|(a,b,f)| (a,b,f.to_string())).collect::<Vec<_>>());
        let d2 = def.differences(&nab);
        assert!(d2.is_empty(), "{}: definition vs closed nabla forms {:?}", s.chart().name(), d2.iter().map(|(a,b,f)| (a,b,f.to_string())).collect::<Vec<_>>());
    }
}

#[test]
fn closedness_of_symplectic_forms() {
    for c in charts() {
        let s = GradedSpace::new(c);
        let t = theta(&s, ThetaVariant::OmegaG).unwrap();
        assert!(t.closedness_defects().is_empty(), "{}", s.chart().name());
        assert!(theta_ks(&s).closedness_defects().is_empty(), "{} KS", s.chart().name());
    }
}

#[test]
fn dg_squared_vanishes() {
    let s = GradedSpace::new(sphere2());
    for alpha in [Form::function(2, x() * x() * y()), Form::dx(2, 1).scale(&(x() * y()))] {
        for basis in [Basis::Lie, Basis::Nabla] {
            let ddf = GradedOneForm::exact(s.clone(), basis, &alpha).d();
            assert!(ddf.table().iter().flatten().all(Form::is_zero));
        }
    }
}

#[test]
fn fourth_section_theorem() {
    for c in charts() {
        let n = c.dim();
        let s = GradedSpace::new(c);
        let t = theta(&s, ThetaVariant::OmegaG).unwrap();
        let d = Derivation::exterior_derivative(n);
        assert!(t.iota(&d).same_as(&lambda_omega(&s)), "{}", s.chart().name());
        assert!(t.lie_derivative(&d).same_as(&theta_ks(&s)), "{}", s.chart().name());
        assert!(lambda_g(&s, false).unwrap().eval(&d).is_zero());
    }
}

#[test]
fn ks_mixed_block_sign() {
    let s = GradedSpace::new(flat2());
    let ks = theta_ks(&s);
    assert_eq!(ks.entry(0, 3), &Form::constant(2, -1));
    assert!(ks.entry(2, 3).is_zero());
    assert!(ks.entry(0, 1).is_zero());
}

#[test]
fn alternation_on_coefficiented_pairs() {
    let s = GradedSpace::new(sphere2());
    let t = theta(&s, ThetaVariant::OmegaG).unwrap();
    let d1 = Derivation::lie(&VectorField::new(vec![x(), y() * y()])).left_multiply(&Form::dx(2, 0));
    let d2 = Derivation::insertion(&VectorField::coordinate(2, 1)).left_multiply(&Form::function(2, x() + y()));
    let a = t.eval(&d1, &d2);
    let b = t.eval(&d2, &d1);
    // |d1| = 1, |d2| = -1
    assert_eq!(b, a);
    assert!(t.is_graded_antisymmetric());
}
