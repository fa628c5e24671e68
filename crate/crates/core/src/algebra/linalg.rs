//! Gauss-Jordan elimination over an exact [`Scalar`] ring.

use super::rat::Rat;
use super::scalar::Scalar;
use super::tensor::TensorOperator;
use crate::error::{Error, Result};

fn pick_pivot<S: Scalar>(m: &[Vec<S>], col: usize, from: usize) -> Option<usize> {
    (from..m.len())
        .filter_map(|r| m[r][col].pivot_weight().map(|w| (w, r)))
        .min()
        .map(|(_, r)| r)
}

fn to_rows<S: Scalar>(a: &TensorOperator<S>) -> Vec<Vec<S>> {
    a.rows().map(|r| r.to_vec()).collect()
}

/// Exact inverse. A matrix with no usable pivot in some column is reported
/// as singular.
pub fn inverse<S: Scalar>(a: &TensorOperator<S>) -> Result<TensorOperator<S>> {
    let d = a.dim();
    let mut m = to_rows(a);
    let mut inv = to_rows(&TensorOperator::<S>::identity(a.n(), a.slots()));
    for col in 0..d {
        let p = pick_pivot(&m, col, col)
            .ok_or_else(|| Error::Singular(format!("matrix inverse (no pivot in column {col})")))?;
        m.swap(col, p);
        inv.swap(col, p);
        let pinv = m[col][col].inv()?;
        for x in m[col].iter_mut().chain(inv[col].iter_mut()) {
            if !x.is_zero() {
                *x = x.clone() * pinv.clone();
            }
        }
        for r in 0..d {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in 0..d {
                if !m[col][c].is_zero() {
                    m[r][c] = m[r][c].clone() - f.clone() * m[col][c].clone();
                }
                if !inv[col][c].is_zero() {
                    inv[r][c] = inv[r][c].clone() - f.clone() * inv[col][c].clone();
                }
            }
        }
    }
    TensorOperator::from_rows(a.n(), inv)
}

/// Determinant by fraction-carrying elimination.
pub fn determinant<S: Scalar>(a: &TensorOperator<S>) -> Result<S> {
    let d = a.dim();
    let mut m = to_rows(a);
    let mut det = S::one();
    for col in 0..d {
        let Some(p) = pick_pivot(&m, col, col) else {
            return Ok(S::zero());
        };
        if p != col {
            m.swap(col, p);
            det = -det;
        }
        let piv = m[col][col].clone();
        let pinv = piv.inv()?;
        det = det * piv;
        for r in col + 1..d {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone() * pinv.clone();
            for c in col..d {
                if !m[col][c].is_zero() {
                    m[r][c] = m[r][c].clone() - f.clone() * m[col][c].clone();
                }
            }
        }
    }
    Ok(det)
}

/// Rank over the rationals.
pub fn rank(a: &TensorOperator<Rat>) -> usize {
    let d = a.dim();
    let mut m = to_rows(a);
    let mut rank = 0;
    for col in 0..d {
        let Some(p) = (rank..d).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pinv = m[rank][col].inv().expect("nonzero pivot");
        for r in rank + 1..d {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &pinv;
            for c in col..d {
                let sub = &f * &m[rank][c];
                m[r][c] -= sub;
            }
        }
        rank += 1;
    }
    rank
}

/// Apply a single-slot operator to a column vector.
pub fn apply<S: Scalar>(a: &TensorOperator<S>, v: &[S]) -> Vec<S> {
    a.rows()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Series;

    fn m(rows: &[&[i64]]) -> TensorOperator<Rat> {
        let n = rows.len();
        TensorOperator::from_rows(
            n,
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::from_int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1, 0], &[0, 0, 3], &[1, 5, 1]]);
        let ai = inverse(&a).unwrap();
        assert_eq!(a.matmul(&ai), TensorOperator::identity(3, 1));
    }

    #[test]
    fn singular_matrix() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert!(inverse(&a).unwrap_err().is_singular_point());
        assert_eq!(determinant(&a).unwrap(), Rat::zero());
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn determinant_sign() {
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])).unwrap(), Rat::from_int(-1));
        assert_eq!(determinant(&m(&[&[1, 1], &[4, 0]])).unwrap(), Rat::from_int(-4));
    }

    #[test]
    fn series_inverse_keeps_precision() {
        // [[ε, 1], [1, 1]] has inverse with a 1/(ε-1) structure; check a·a⁻¹ = 1.
        let e = Series::point(Rat::zero(), -2, 3).unwrap();
        let a = TensorOperator::from_rows(
            2,
            vec![vec![e.clone(), Series::one()], vec![Series::one(), Series::one()]],
        )
        .unwrap();
        let ai = inverse(&a).unwrap();
        let prod = a.matmul(&ai);
        assert_eq!(prod.coeff(0).unwrap(), TensorOperator::identity(2, 1));
        assert!(prod.coeff(1).unwrap().is_zero());
    }
}
