use super::library::*;
use super::*;
use crate::exterior::{Derivation, Form, VectorField, VectorValuedForm};
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

fn all_charts() -> Vec<ChartGeometry> {
    vec![flat2(), flat4(), sphere2(), halfplane(), tlift1(), tlift1q()]
}

fn coordinate_fields(c: &ChartGeometry) -> Vec<VectorField> {
    (0..c.dim()).map(|a| c.coordinate_field(a)).collect()
}

#[test]
fn christoffel_examples() {
    let f = flat2();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                assert!(f.christoffel(i, j, k).is_zero());
            }
        }
    }
    let h = halfplane();
    assert_eq!(h.christoffel(0, 0, 1), &(rf(-1).checked_div(&y()).unwrap()));
    let s = sphere2();
    let denom = rf(1) + x() * x() + y() * y();
    assert_eq!(s.christoffel(0, 0, 0), &((rf(-2) * x()).checked_div(&denom).unwrap()));
}

#[test]
fn metric_compatibility_on_every_chart() {
    for c in all_charts() {
        let n = c.dim();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let mut v = c.metric()[i][j].partial(k);
                    for m in 0..n {
                        v = v - c.christoffel(m, k, i) * &c.metric()[m][j];
                        v = v - c.christoffel(m, k, j) * &c.metric()[i][m];
                    }
                    assert!(v.is_zero(), "{}: nabla g != 0", c.name());
                }
            }
        }
    }
}

#[test]
fn sphere_curvature_is_positive_constant() {
    let s = sphere2();
    let (ex, ey) = (s.coordinate_field(0), s.coordinate_field(1));
    let r = s.riemann4(&ex, &ey, &ex, &ey);
    let gxx = s.metric()[0][0].clone();
    // unit sphere: sectional curvature 1
    assert_eq!(r, &gxx * &gxx);
    assert!(flat2().riemann4(&ex, &ey, &ex, &ey).is_zero());
}

#[test]
fn curvature_tensor_symmetries() {
    for c in all_charts() {
        let fields = coordinate_fields(&c);
        for u in &fields {
            for v in &fields {
                for w in &fields {
                    let bianchi = &(&c.curvature_on(u, v, w) + &c.curvature_on(v, w, u)) + &c.curvature_on(w, u, v);
                    assert!(bianchi.is_zero(), "{}: first Bianchi", c.name());
                    assert_eq!(c.curvature_on(u, v, w), -&c.curvature_on(v, u, w));
                    for z in &fields {
                        let r = c.riemann4(u, v, w, z);
                        assert_eq!(r, -c.riemann4(u, v, z, w));
                        assert_eq!(r, -c.riemann4(v, u, w, z));
                        assert_eq!(r, c.riemann4(w, z, u, v));
                    }
                }
            }
        }
    }
}

#[test]
fn curvature_matches_nested_covariant_derivatives() {
    let s = sphere2();
    let fields = coordinate_fields(&s);
    let z = VectorField::new(vec![x() * y(), rf(1) + x()]);
    for u in &fields {
        for v in &fields {
            let nested = &s.covariant_derivative(u, &s.covariant_derivative(v, &z))
                - &s.covariant_derivative(v, &s.covariant_derivative(u, &z));
            assert_eq!(s.curvature_on(u, v, &z), nested);
        }
    }
}

#[test]
fn j_on_flat_chart() {
    let f = flat2();
    let (ex, ey) = (f.coordinate_field(0), f.coordinate_field(1));
    assert_eq!(f.apply_j(&ex), ey);
    assert_eq!(f.apply_j(&ey), -&ex);
    assert_eq!(linalg::mul(f.j_matrix(), f.j_matrix()), linalg::neg(&linalg::identity(2)));
    assert_eq!(f.j_tensor().insert(&Form::dx(2, 0)), -Form::dx(2, 1));
}

#[test]
fn j_defining_identity_and_antisymmetry() {
    for c in all_charts() {
        let fields = coordinate_fields(&c);
        for u in &fields {
            for v in &fields {
                assert_eq!(c.metric_on(&c.apply_j(u), v), c.omega_on(u, v));
                assert!((c.metric_on(&c.apply_j(u), v) + c.metric_on(u, &c.apply_j(v))).is_zero());
            }
        }
    }
}

#[test]
fn lemma_symmetry_of_nabla_j() {
    for c in all_charts() {
        let n = c.dim();
        for k in 0..n {
            let nj = c.covariant_j(k);
            for a in 0..n {
                for b in 0..n {
                    let lhs = (0..n).fold(rf(0), |acc, m| acc + &nj[m][a] * &c.metric()[m][b]);
                    let rhs = (0..n).fold(rf(0), |acc, m| acc + &nj[m][b] * &c.metric()[m][a]);
                    assert_eq!(lhs, rhs, "{}", c.name());
                }
            }
        }
    }
}

#[test]
fn kahler_flags_hold() {
    for c in [flat2(), flat4(), sphere2(), halfplane()] {
        assert!(c.is_kahler(), "{}", c.name());
    }
}

#[test]
fn musical_isomorphisms() {
    assert_eq!(flat2().flat(&VectorField::coordinate(2, 0)), Form::dx(2, 0));
    let h = halfplane();
    let inv_y2 = rf(1).checked_div(&(y() * y())).unwrap();
    assert_eq!(h.flat(&VectorField::coordinate(2, 0)), Form::dx(2, 0).scale(&inv_y2));
    let s = sphere2();
    let v = VectorField::new(vec![x() * x() - y(), rf(3) * y()]);
    assert_eq!(s.sharp(&s.flat(&v)).unwrap(), v);
    assert!(s.sharp(&Form::constant(2, 1)).is_err());
}

#[test]
fn dnabla_examples() {
    let f = flat2();
    let k = VectorValuedForm::new(1, vec![Form::dx(2, 1).scale(&(x() * x())), Form::dx(2, 0).scale(&y())]);
    let expected = k.map_components(2, Form::d);
    assert_eq!(f.dnabla(&k), expected);
    for c in all_charts() {
        assert!(c.dnabla(&VectorValuedForm::identity(c.dim())).is_zero(), "{}", c.name());
    }
}

#[test]
fn nabla_derivation_examples() {
    let f = flat2();
    let ex = f.coordinate_field(0);
    assert_eq!(f.nabla_derivation(&ex), Derivation::lie(&ex));
    let ydx = Form::dx(2, 0).scale(&y());
    assert!(f.nabla_derivation(&ex).apply(&ydx).is_zero());

    let s = sphere2();
    let xf = VectorField::new(vec![x() * y(), rf(1) - x()]);
    let g = s.function(x() * x() + y());
    assert_eq!(s.nabla_derivation(&xf).apply(&g), s.function(xf.apply(&(x() * x() + y()))));
    // L_X − ∇_X = i_{∇X}
    let lhs = &Derivation::lie(&xf) - &s.nabla_derivation(&xf);
    let rhs = Derivation::insertion_of(s.dnabla(&xf.to_vvf()));
    assert_eq!(lhs, rhs);
}

#[test]
fn classical_hamiltonian_mechanics() {
    let f = flat2();
    assert_eq!(f.hamiltonian_vector_field(&x()), VectorField::coordinate(2, 1));
    assert_eq!(f.poisson_bracket(&x(), &y()), rf(1));
    let s = sphere2();
    let h = x() * x() * y() - rf(2) * y();
    assert!(s.poisson_bracket(&h, &h).is_zero());
    // ω(Y, X_f) = df(Y)
    let xh = s.hamiltonian_vector_field(&h);
    for a in 0..2 {
        assert_eq!(s.omega_on(&s.coordinate_field(a), &xh), h.partial(a));
    }
}

#[test]
fn tangent_lift_examples() {
    let t = tlift1();
    assert_eq!(t.coords(), ["q", "v"]);
    // ω_L = dv∧dq
    assert_eq!(t.omega_form(), &Form::monomial(2, &[1, 0], rf(1)));
    assert_eq!(t.metric(), &vec![vec![rf(0), rf(1)], vec![rf(1), rf(0)]]);

    let tq = tlift1q();
    let q = x();
    let v = y();
    let gq = rf(1) + &q * &q;
    assert_eq!(tq.omega_form(), &Form::monomial(2, &[1, 0], gq.clone()));
    assert_eq!(tq.metric()[0][0], rf(2) * q.clone() * v);
    assert_eq!(tq.metric()[0][1], gq);
    for (chart, base) in [(t, tlift1_base()), (tq, tlift1q_base())] {
        let canonical = canonical_almost_product(&base).unwrap();
        assert_eq!(chart.j_matrix(), &canonical, "{}", chart.name());
        assert_eq!(linalg::mul(&canonical, &canonical), linalg::identity(2));
        let fields = coordinate_fields(&chart);
        for a in &fields {
            for b in &fields {
                let ja = chart.apply_j(a);
                let jb = chart.apply_j(b);
                assert!((chart.metric_on(&ja, &jb) + chart.metric_on(a, b)).is_zero());
            }
        }
    }
}

#[test]
fn construction_rejects_bad_charts() {
    let one = rf(1);
    let zero = rf(0);
    let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let degenerate = ChartGeometry::new(
        "bad",
        names(&["x", "y"]),
        vec![vec![one.clone(), zero.clone()], vec![zero.clone(), zero.clone()]],
        vec![vec![zero.clone(), one.clone()], vec![-&one, zero.clone()]],
        None,
    );
    assert!(matches!(degenerate, Err(crate::Error::Construction(m)) if m.contains("det g")));
    let z = RationalFunction::var(2);
    let mut omega = linalg::zeros(4);
    omega[0][1] = z.clone();
    omega[1][0] = -&z;
    omega[2][3] = one.clone();
    omega[3][2] = -&one;
    let open = ChartGeometry::new("bad", names(&["x", "y", "z", "w"]), linalg::identity(4), omega, None);
    assert!(matches!(open, Err(crate::Error::Construction(m)) if m.contains("not closed")));
}
