//! Built-in charts.

use super::chart::ChartGeometry;
use super::linalg::{self, Matrix};
use super::tangent_lift::tangent_lift_chart;
use crate::error::{Error, Result};
use crate::scalar::RationalFunction;

pub const BUILTIN_CHARTS: [(&str, &str); 6] = [
    ("flat2", "R^2, g = dx^2 + dy^2, w = dx^dy (Kahler, flat)"),
    ("flat4", "R^4, g = sum dxi^2, w = dx^dy + dz^dw (product, flat)"),
    ("sphere2", "stereographic sphere, g = 4(dx^2+dy^2)/(1+x^2+y^2)^2 (Kahler, curved)"),
    ("halfplane", "hyperbolic half-plane, g = (dx^2+dy^2)/y^2 (Kahler, curved)"),
    ("tlift1", "tangent lift of (R, dq^2) (para-Kahler)"),
    ("tlift1q", "tangent lift of (R, (1+q^2)dq^2) (para-Kahler)"),
];

fn names(s: &[&str]) -> Vec<String> {
    s.iter().map(|c| c.to_string()).collect()
}

fn conformal(n: usize, factor: &RationalFunction) -> Matrix {
    let mut m = linalg::zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = factor.clone();
    }
    m
}

fn darboux(n: usize, factor: &RationalFunction) -> Matrix {
    let mut m = linalg::zeros(n);
    for i in (0..n).step_by(2) {
        m[i][i + 1] = factor.clone();
        m[i + 1][i] = -factor;
    }
    m
}

pub fn flat2() -> ChartGeometry {
    let one = RationalFunction::one();
    ChartGeometry::new("flat2", names(&["x", "y"]), conformal(2, &one), darboux(2, &one), None)
        .expect("valid chart")
        .with_kahler_expected(true)
}

pub fn flat4() -> ChartGeometry {
    let one = RationalFunction::one();
    ChartGeometry::new("flat4", names(&["x", "y", "z", "w"]), conformal(4, &one), darboux(4, &one), None)
        .expect("valid chart")
        .with_kahler_expected(true)
}

pub fn sphere2() -> ChartGeometry {
    let x = RationalFunction::var(0);
    let y = RationalFunction::var(1);
    let s = RationalFunction::one() + &x * &x + &y * &y;
    let factor = RationalFunction::from_int(4).checked_div(&(&s * &s)).expect("nonzero");
    ChartGeometry::new("sphere2", names(&["x", "y"]), conformal(2, &factor), darboux(2, &factor), None)
        .expect("valid chart")
        .with_kahler_expected(true)
}

pub fn halfplane() -> ChartGeometry {
    let y = RationalFunction::var(1);
    let factor = RationalFunction::one().checked_div(&(&y * &y)).expect("nonzero");
    ChartGeometry::new("halfplane", names(&["x", "y"]), conformal(2, &factor), darboux(2, &factor), None)
        .expect("valid chart")
        .with_kahler_expected(true)
}

pub fn tlift1_base() -> Matrix {
    vec![vec![RationalFunction::one()]]
}

pub fn tlift1q_base() -> Matrix {
    let q = RationalFunction::var(0);
    vec![vec![RationalFunction::one() + &q * &q]]
}

pub fn tlift1() -> ChartGeometry {
    tangent_lift_chart("tlift1", &tlift1_base())
        .expect("valid chart")
        .with_kahler_expected(false)
}

pub fn tlift1q() -> ChartGeometry {
    tangent_lift_chart("tlift1q", &tlift1q_base())
        .expect("valid chart")
        .with_kahler_expected(false)
}

pub fn builtin(name: &str) -> Result<ChartGeometry> {
    match name {
        "flat2" => Ok(flat2()),
        "flat4" => Ok(flat4()),
        "sphere2" => Ok(sphere2()),
        "halfplane" => Ok(halfplane()),
        "tlift1" => Ok(tlift1()),
        "tlift1q" => Ok(tlift1q()),
        other => Err(Error::Usage(format!(
            "unknown built-in chart '{other}' (try one of: {})",
            BUILTIN_CHARTS.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", ")
        ))),
    }
}

/// The base metric of a built-in tangent-lift chart.
pub fn tangent_lift_base(name: &str) -> Option<Matrix> {
    match name {
        "tlift1" => Some(tlift1_base()),
        "tlift1q" => Some(tlift1q_base()),
        _ => None,
    }
}
