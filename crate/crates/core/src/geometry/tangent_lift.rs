//! Para-Kähler structure on the tangent bundle of a pseudoriemannian base.
//!
//! Coordinates are `(q^1..q^n, v^1..v^n)`. The base connection splits
//! `T(TM)` into horizontal and vertical parts; the lifted metric pairs the
//! two, the symplectic form comes from the kinetic Lagrangian, and `J` is
//! `+1` on vertical and `−1` on horizontal vectors.

use super::chart::{christoffel_symbols, ChartGeometry};
use super::linalg::{self, Matrix};
use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::scalar::RationalFunction;

/// The lifted chart built from a base metric in the variables `q^i`
/// (variable indices `0..n`).
pub fn tangent_lift_chart(name: &str, base_metric: &Matrix) -> Result<ChartGeometry> {
    let n = base_metric.len();
    let base_inv = linalg::inverse(base_metric)
        .ok_or_else(|| Error::Construction("degenerate base metric".into()))?;
    let dim = 2 * n;
    let gamma = christoffel_symbols(base_metric, &base_inv);
    let v = |i: usize| RationalFunction::var(n + i);

    // θ^i = dq^i and η^i = dv^i + Γ̄^i_{jk} v^j dq^k as coefficient rows
    let theta: Vec<Vec<RationalFunction>> = (0..n)
        .map(|i| {
            let mut row = vec![RationalFunction::zero(); dim];
            row[i] = RationalFunction::one();
            row
        })
        .collect();
    let eta: Vec<Vec<RationalFunction>> = (0..n)
        .map(|i| {
            let mut row = vec![RationalFunction::zero(); dim];
            row[n + i] = RationalFunction::one();
            for k in 0..n {
                row[k] = (0..n).fold(RationalFunction::zero(), |acc, j| acc + &gamma[i][j][k] * &v(j));
            }
            row
        })
        .collect();
    let mut metric = linalg::zeros(dim);
    for i in 0..n {
        for j in 0..n {
            let gij = &base_metric[i][j];
            if gij.is_zero() {
                continue;
            }
            for a in 0..dim {
                for b in 0..dim {
                    let t = &(&theta[i][a] * &eta[j][b]) + &(&eta[i][a] * &theta[j][b]);
                    if !t.is_zero() {
                        metric[a][b] = &metric[a][b] + &(gij * &t);
                    }
                }
            }
        }
    }

    // ω_L = d(Σ g_{ij} v^j dq^i)
    let mut potential = Form::zero(dim);
    for i in 0..n {
        let c = (0..n).fold(RationalFunction::zero(), |acc, j| acc + &base_metric[i][j] * &v(j));
        potential = potential + Form::dx(dim, i).scale(&c);
    }
    let omega_form = potential.d();
    let mut omega = linalg::zeros(dim);
    for a in 0..dim {
        for b in a + 1..dim {
            let c = omega_form.coefficient((1 << a) | (1 << b));
            omega[b][a] = -&c;
            omega[a][b] = c;
        }
    }
    let coords = (0..n)
        .map(|i| if n == 1 { "q".to_string() } else { format!("q{}", i + 1) })
        .chain((0..n).map(|i| if n == 1 { "v".to_string() } else { format!("v{}", i + 1) }))
        .collect();
    ChartGeometry::new(name, coords, metric, omega, None)
}

/// The canonical almost product structure, `J∂_{v^j} = ∂_{v^j}` and
/// `J∂_{q^i} = −∂_{q^i} + 2Γ̄^j_{ik}v^k ∂_{v^j}`, as a matrix `J[b][c]`.
pub fn canonical_almost_product(base_metric: &Matrix) -> Result<Matrix> {
    let n = base_metric.len();
    let base_inv = linalg::inverse(base_metric)
        .ok_or_else(|| Error::Construction("degenerate base metric".into()))?;
    let gamma = christoffel_symbols(base_metric, &base_inv);
    let dim = 2 * n;
    let mut j = linalg::zeros(dim);
    for i in 0..n {
        j[n + i][n + i] = RationalFunction::one();
        j[i][i] = RationalFunction::from_int(-1);
        for jj in 0..n {
            let c = (0..n).fold(RationalFunction::zero(), |acc, k| {
                acc + &gamma[jj][i][k] * &RationalFunction::var(n + k)
            });
            j[n + jj][i] = &c * &RationalFunction::from_int(2);
        }
    }
    Ok(j)
}
