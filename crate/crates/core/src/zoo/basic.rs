//! Constant-coefficient vertex R-matrices and small helper operators.

use crate::algebra::{Rat, Scalar, TensorOperator};
use crate::error::{Error, Result};

/// `φ(ħ, z) = 1/ħ + 1/z`, the scalar (`N = 1`) R-matrix.
pub fn phi<S: Scalar>(hbar: &S, z: &S) -> Result<S> {
    Ok(hbar.inv()? + z.inv()?)
}

/// `f(ħ, z) = 1/ħ² − 1/z²`, the unitarity factor.
pub fn unitarity_factor<S: Scalar>(hbar: &S, z: &S) -> Result<S> {
    Ok(hbar.inv()?.pow(2) - z.inv()?.pow(2))
}

/// `P₁₂ = Σ E_ij ⊗ E_ji`.
pub fn permutation<S: Scalar>(n: usize) -> TensorOperator<S> {
    TensorOperator::permutation(n, 1, 2, 2).expect("valid slots")
}

/// `O₁₂ = Σ_{i,j} E_jj ⊗ E_ij`.
pub fn o_matrix<S: Scalar>(n: usize) -> TensorOperator<S> {
    let mut m = TensorOperator::zeros(n, 2);
    for i in 0..n {
        for j in 0..n {
            m.add4(j, j, i, j, S::one());
        }
    }
    m
}

/// Yang's R-matrix `1⊗1/ħ + P₁₂/z`.
pub fn yang<S: Scalar>(n: usize, hbar: &S, z: &S) -> Result<TensorOperator<S>> {
    let a = hbar.inv()?;
    let b = z.inv()?;
    Ok(&TensorOperator::identity(n, 2).scale(&a) + &permutation::<S>(n).scale(&b))
}

fn require_n2(family: &str, n: usize) -> Result<()> {
    if n != 2 {
        return Err(Error::UnsupportedN {
            family: family.into(),
            n,
        });
    }
    Ok(())
}

/// The XXX 6-vertex matrix, written out entry by entry.
pub fn six_vertex<S: Scalar>(hbar: &S, z: &S) -> Result<TensorOperator<S>> {
    let a = hbar.inv()?;
    let b = z.inv()?;
    let o = S::zero;
    TensorOperator::from_rows(
        2,
        vec![
            vec![a.clone() + b.clone(), o(), o(), o()],
            vec![o(), a.clone(), b.clone(), o()],
            vec![o(), b.clone(), a.clone(), o()],
            vec![o(), o(), o(), a + b],
        ],
    )
}

/// The 11-vertex deformation of the 6-vertex matrix.
pub fn eleven_vertex<S: Scalar>(hbar: &S, z: &S) -> Result<TensorOperator<S>> {
    let a = hbar.inv()?;
    let b = z.inv()?;
    let o = S::zero;
    let zh = z.clone() + hbar.clone();
    let corner = -(z.pow(3)
        + hbar.pow(3)
        + (z.pow(2) * hbar.clone()).scale_rat(&Rat::from_int(2))
        + (z.clone() * hbar.pow(2)).scale_rat(&Rat::from_int(2)));
    TensorOperator::from_rows(
        2,
        vec![
            vec![a.clone() + b.clone(), o(), o(), o()],
            vec![-zh.clone(), a.clone(), b.clone(), o()],
            vec![-zh.clone(), b.clone(), a.clone(), o()],
            vec![corner, zh.clone(), zh, a + b],
        ],
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstantVertex {
    Yang,
    SixVertex,
    ElevenVertex,
}

pub fn constant_vertex<S: Scalar>(
    which: ConstantVertex,
    n: usize,
    hbar: &S,
    z: &S,
) -> Result<TensorOperator<S>> {
    match which {
        ConstantVertex::Yang => yang(n, hbar, z),
        ConstantVertex::SixVertex => {
            require_n2("six-vertex", n)?;
            six_vertex(hbar, z)
        }
        ConstantVertex::ElevenVertex => {
            require_n2("eleven-vertex", n)?;
            eleven_vertex(hbar, z)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi(&r(1), &r(1)).unwrap(), r(2));
        assert_eq!(phi(&r(2), &r(-2)).unwrap(), r(0));
        let h = Rat::new(1, 3);
        let z = Rat::new(1, 5);
        let prod = phi(&h, &z).unwrap() * phi(&h, &-&z).unwrap();
        assert_eq!(prod, r(-16));
        assert_eq!(unitarity_factor(&h, &z).unwrap(), r(-16));
    }

    #[test]
    fn phi_zero_argument() {
        assert!(phi(&r(0), &r(1)).unwrap_err().is_singular_point());
    }

    #[test]
    fn eleven_vertex_at_one() {
        let m = eleven_vertex(&r(1), &r(1)).unwrap();
        let rows: Vec<Vec<Rat>> = m.rows().map(|x| x.to_vec()).collect();
        let expect: Vec<Vec<Rat>> = [[2, 0, 0, 0], [-2, 1, 1, 0], [-2, 1, 1, 0], [-6, 2, 2, 2]]
            .iter()
            .map(|row| row.iter().map(|&x| r(x)).collect())
            .collect();
        assert_eq!(rows, expect);
    }

    #[test]
    fn six_vertex_is_yang() {
        let h = Rat::new(-2, 7);
        let z = Rat::new(5, 3);
        assert_eq!(six_vertex(&h, &z).unwrap(), yang(2, &h, &z).unwrap());
    }

    #[test]
    fn yang_diagonal_entry() {
        let m = yang(3, &Rat::new(1, 2), &Rat::new(1, 3)).unwrap();
        for i in 0..3 {
            assert_eq!(*m.get4(i, i, i, i), r(5));
        }
    }

    #[test]
    fn two_by_two_families_reject_other_n() {
        let e = constant_vertex(ConstantVertex::ElevenVertex, 3, &r(1), &r(1)).unwrap_err();
        assert!(matches!(e, Error::UnsupportedN { n: 3, .. }));
    }

    #[test]
    fn o_matrix_trace_gives_weights() {
        let n = 3;
        let lam: Vec<Rat> = vec![r(2), Rat::new(-1, 2), r(7)];
        let p2 = TensorOperator::diagonal(&lam).embed(&[2], 2).unwrap();
        let t = o_matrix::<Rat>(n).matmul(&p2).partial_trace(2).unwrap();
        assert_eq!(t, TensorOperator::diagonal(&lam));
    }
}
