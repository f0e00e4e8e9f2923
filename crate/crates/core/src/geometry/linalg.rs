//! Dense matrices over the rational function field.

use crate::scalar::RationalFunction;

pub type Matrix = Vec<Vec<RationalFunction>>;

pub fn zeros(n: usize) -> Matrix {
    vec![vec![RationalFunction::zero(); n]; n]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = RationalFunction::one();
    }
    m
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![RationalFunction::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] = &out[i][j] + &(&a[i][l] * &b[l][j]);
                }
            }
        }
    }
    out
}

pub fn transpose(a: &Matrix) -> Matrix {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn neg(a: &Matrix) -> Matrix {
    a.iter().map(|row| row.iter().map(|x| -x).collect()).collect()
}

/// Determinant by fraction-field Gaussian elimination.
pub fn det(a: &Matrix) -> RationalFunction {
    let n = a.len();
    let mut m = a.clone();
    let mut acc = RationalFunction::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return RationalFunction::zero();
        };
        if p != col {
            m.swap(p, col);
            acc = -acc;
        }
        let pivot = m[col][col].clone();
        acc = &acc * &pivot;
        let inv = pivot.recip().expect("nonzero pivot");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            for c in col..n {
                let t = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &t;
            }
        }
    }
    acc
}

/// Inverse by Gauss–Jordan elimination, `None` when singular.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut m = a.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(p, col);
        inv.swap(p, col);
        let pinv = m[col][col].recip().ok()?;
        for c in 0..n {
            m[col][c] = &m[col][c] * &pinv;
            inv[col][c] = &inv[col][c] * &pinv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in 0..n {
                let t = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &t;
                let t = &factor * &inv[col][c];
                inv[r][c] = &inv[r][c] - &t;
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(n: i64) -> RationalFunction {
        RationalFunction::from_int(n)
    }

    #[test]
    fn inverse_and_det() {
        let x = RationalFunction::var(0);
        let a = vec![vec![x.clone(), rf(1)], vec![rf(2), rf(3)]];
        assert_eq!(det(&a), &(&x * &rf(3)) - &rf(2));
        let inv = inverse(&a).unwrap();
        assert_eq!(mul(&a, &inv), identity(2));
        assert!(inverse(&vec![vec![rf(1), rf(2)], vec![rf(2), rf(4)]]).is_none());
    }
}
