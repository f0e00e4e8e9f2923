use super::*;
use crate::exterior::{Derivation, Form, VectorField, VectorValuedForm};
use crate::geometry::library::*;
use crate::geometry::ChartGeometry;
use crate::graded::{theta, theta_ks, Basis, GradedOneForm, GradedSpace, GradedTwoForm, ThetaVariant};
use crate::scalar::RationalFunction;

fn rf(n: i64) -> RationalFunction {
    RationalFunction::from_int(n)
}
fn x() -> RationalFunction {
    RationalFunction::var(0)
}
fn y() -> RationalFunction {
    RationalFunction::var(1)
}

fn setup(chart: &ChartGeometry) -> (GradedTwoForm, GradedTwoForm) {
    let space = GradedSpace::new(chart.clone());
    (theta(&space, ThetaVariant::OmegaG).unwrap(), theta_ks(&space))
}

fn two_dim_charts() -> Vec<ChartGeometry> {
    vec![flat2(), sphere2(), halfplane(), tlift1(), tlift1q()]
}

fn sample_f() -> RationalFunction {
    x() * x() * y() + y()
}
fn sample_h() -> RationalFunction {
    x() * y() * y() - x()
}

#[test]
fn flat_solutions() {
    let c = flat2();
    let (th, _) = setup(&c);
    let s = solve_hamiltonian(&th, &c.function(x())).unwrap();
    assert_eq!(s.derivation, c.nabla_derivation(&VectorField::coordinate(2, 1)));
    assert_eq!(s.nabla_components.keys().copied().collect::<Vec<_>>(), vec![0]);
    assert!(s.insertion_components.is_empty());

    let s = solve_hamiltonian(&th, &Form::dx(2, 0)).unwrap();
    assert_eq!(s.derivation, Derivation::insertion(&VectorField::coordinate(2, 0)));
    assert!(s.k(1).is_zero());
}

#[test]
fn sphere_solution_satisfies_its_equation() {
    let c = sphere2();
    let (th, _) = setup(&c);
    let s = solve_hamiltonian(&th, &c.function(x())).unwrap();
    let target = GradedOneForm::exact(th.space().clone(), Basis::Lie, &c.function(x()));
    assert!(th.iota(&s.derivation).same_as(&target));
    assert!(!s.k(2).is_zero());
}

#[test]
fn degenerate_form_is_rejected() {
    let space = GradedSpace::new(flat2());
    let th = crate::graded::theta_omega(&space);
    assert!(matches!(solve_hamiltonian(&th, &Form::constant(2, 1)), Err(crate::Error::Domain(_))));
}

#[test]
fn even_recursion_matches_solver() {
    for c in two_dim_charts() {
        let (th, _) = setup(&c);
        let f = sample_f();
        let s = solve_hamiltonian(&th, &c.function(f.clone())).unwrap();
        let ks = k_even(&c, &f);
        assert_eq!(ks[0], c.hamiltonian_vector_field(&f).to_vvf());
        for (i, k) in ks.iter().enumerate() {
            assert_eq!(*k, s.k(2 * i), "{} K^{}", c.name(), 2 * i);
        }
        assert_eq!(assemble_d_f(&c, &f), s.derivation);
    }
    assert!(k_even(&flat2(), &sample_f())[1].is_zero());
}

#[test]
fn odd_recursion_matches_solver() {
    let flat = flat2();
    let k1 = k_one(&flat, &(x() * x()));
    assert_eq!(k1, VectorValuedForm::new(1, vec![Form::zero(2), Form::dx(2, 0).scale_int(2)]));
    for c in two_dim_charts() {
        let (th, _) = setup(&c);
        let f = sample_f();
        let df = c.function(f.clone()).d();
        let s = solve_hamiltonian(&th, &df).unwrap();
        assert_eq!(assemble_d_df(&c, &f, OddRecursionSign::AsDisplayed), s.derivation, "{}", c.name());
        assert_eq!(k_odd(&c, &f, OddRecursionSign::AsDisplayed)[0], s.k(1));
    }
}

#[test]
fn first_odd_component_is_the_covariant_differential_of_the_hamiltonian_field() {
    for c in two_dim_charts() {
        let f = sample_f();
        let dx_f = c.dnabla(&c.hamiltonian_vector_field(&f).to_vvf());
        assert_eq!(k_one(&c, &f), dx_f, "{}", c.name());
        assert_ne!(k_one(&c, &f), -&dx_f, "{}", c.name());
    }
}

#[test]
fn parity_of_solutions() {
    for c in two_dim_charts() {
        let (th, _) = setup(&c);
        let f = sample_f();
        let s = solve_hamiltonian(&th, &c.function(f.clone())).unwrap();
        assert!(s.insertion_components.is_empty());
        assert!(s.nabla_components.keys().all(|p| p % 2 == 0));
        let s = solve_hamiltonian(&th, &c.function(f.clone()).d()).unwrap();
        let sharp = c.sharp(&c.function(f).d()).unwrap();
        assert_eq!(s.insertion_components.keys().copied().collect::<Vec<_>>(), vec![0]);
        assert_eq!(s.l(0), sharp.to_vvf());
        assert!(s.nabla_components.keys().all(|p| p % 2 == 1));
    }
}

#[test]
fn omega_generates_insertion_of_j() {
    for c in two_dim_charts() {
        let (th, _) = setup(&c);
        let s = solve_hamiltonian(&th, c.omega_form()).unwrap();
        assert_eq!(s.derivation, Derivation::insertion_of(c.j_tensor()), "{}", c.name());
    }
}

#[test]
fn even_bracket_examples() {
    let c = flat2();
    let (th, _) = setup(&c);
    assert_eq!(even_bracket(&th, &c.function(x()), &c.function(y())).unwrap(), Form::constant(2, 1));
    assert_eq!(even_bracket(&th, &Form::dx(2, 0), &Form::dx(2, 0)).unwrap(), Form::constant(2, 1));
    for c in two_dim_charts() {
        let (th, _) = setup(&c);
        let (f, h) = (sample_f(), sample_h());
        let b = even_bracket(&th, &c.function(f.clone()), &c.function(h.clone())).unwrap();
        assert_eq!(b.function_part(), c.poisson_bracket(&f, &h), "{}", c.name());
    }
}

#[test]
fn koszul_schouten_methods_agree() {
    for c in two_dim_charts() {
        let (_, ks) = setup(&c);
        let (f, h) = (c.function(sample_f()), c.function(sample_h()));
        let samples = [f.clone(), h.clone(), f.d(), h.d(), Form::dx(2, 0).scale(&(x() * y())), c.omega_form().clone()];
        for a in &samples {
            for b in &samples {
                let via_h = ks_bracket(&c, &ks, a, b, KsMethod::Hamiltonian).unwrap();
                let via_g = ks_bracket(&c, &ks, a, b, KsMethod::Generator).unwrap();
                assert_eq!(via_h, via_g, "{}: [[{}, {}]]", c.name(), c.display(a), c.display(b));
            }
        }
        assert!(ks_bracket_generator(&c, &f, &h).is_zero());
    }
    let c = flat2();
    let (_, ks) = setup(&c);
    let (f, h) = (sample_f(), sample_h());
    let (ff, hf) = (c.function(f.clone()), c.function(h.clone()));
    let pb = c.function(c.poisson_bracket(&f, &h));
    // the Koszul property holds for Λ = ω^{-1}, and Λ(df,dh) = −{f,h}
    assert_eq!(ks_bracket_hamiltonian(&ks, &ff.d(), &hf.d()).unwrap(), -&pb.d());
    assert_eq!(ks_bracket_hamiltonian(&ks, &ff.d(), &hf).unwrap(), -&pb);
}

#[test]
fn fastpath_for_functions_matches_solver() {
    for c in two_dim_charts() {
        let (th, _) = setup(&c);
        let (f, h) = (sample_f(), sample_h());
        for kind in [FastpathKind::FunctionFunction, FastpathKind::FunctionDifferential] {
            let (a, b) = fastpath_arguments(kind, &f, &h, &c);
            assert_eq!(bracket_fastpath(kind, &f, &h, &c), even_bracket(&th, &a, &b).unwrap(), "{} {:?}", c.name(), kind);
        }
    }
    let c = flat2();
    let (f, h) = (sample_f(), sample_h());
    assert_eq!(
        bracket_fastpath(FastpathKind::FunctionFunction, &f, &h, &c),
        c.function(c.poisson_bracket(&f, &h))
    );
}

#[test]
fn differential_fastpath_is_off_by_the_metric_term() {
    for c in two_dim_charts() {
        let (th, _) = setup(&c);
        let (f, h) = (sample_f(), sample_h());
        let kind = FastpathKind::DifferentialDifferential;
        let (a, b) = fastpath_arguments(kind, &f, &h, &c);
        let sharp = c.sharp(&c.function(f.clone()).d()).unwrap().to_vvf();
        let xh = c.hamiltonian_vector_field(&h).to_vvf();
        let g_term = metric_pairing(&c, &c.dnabla(&sharp), &c.dnabla(&xh));
        let solver = even_bracket(&th, &a, &b).unwrap();
        let fast = bracket_fastpath(kind, &f, &h, &c);
        assert_eq!(&fast - &solver, g_term.scale_int(2), "{}", c.name());
    }
}

#[test]
fn defect_identities() {
    for c in [flat2(), sphere2()] {
        let (th, ks) = setup(&c);
        let th = Hamiltonians::new(&th);
        let (f, h) = (c.function(sample_f()), c.function(sample_h()));
        let samples = [f.clone(), h.clone(), h.d(), Form::dx(2, 0).scale(&(x() * y()))];
        assert!(d_defect(&th, &ks, &f, &h, DefectSigns::Displayed).unwrap().holds());
        for a in &samples {
            for b in &samples {
                assert!(d_defect(&th, &ks, a, b, DefectSigns::TotalDegree).unwrap().holds());
            }
            let (l, r) = d_defect_vector_fields(&th, &ks, a, DefectSigns::TotalDegree).unwrap();
            assert_eq!(l, r, "{}", c.name());
        }
        // the displayed sign is off by twice the correction term
        let (l, r) = d_defect_vector_fields(&th, &ks, &f, DefectSigns::Displayed).unwrap();
        assert!(!(&l - &r).is_zero());
        assert!(!d_defect(&th, &ks, &f, &h.d(), DefectSigns::Displayed).unwrap().holds());
    }
}

#[test]
fn vanishing_ks_pairing_makes_d_a_derivation() {
    let c = flat2();
    let (th, ks) = setup(&c);
    let a = c.function(x() + rf(2) * y());
    let b = c.function(x() * x() - y());
    let da = solve_hamiltonian(&th, &a).unwrap().derivation;
    let db = solve_hamiltonian(&th, &b).unwrap().derivation;
    assert!(ks.eval(&da, &db).is_zero());
    assert!(d_defect(&Hamiltonians::new(&th), &ks, &a, &b, DefectSigns::Displayed).unwrap().left.is_zero());
}
