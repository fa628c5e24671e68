//! Dynamical and semi-dynamical R-matrices and the twist relating them.

use crate::algebra::{Rat, Scalar, TensorOperator};
use crate::error::Result;
use crate::gauge::{self, DynParams, InverseMethod};

fn n_times<S: Scalar>(n: usize, x: &S) -> S {
    x.scale_rat(&Rat::from_int(n as i64))
}

/// The dynamical R-matrix at spectral difference `z`.
pub fn r_dynamical<S: Scalar>(hbar: &S, z: &S, q: &DynParams<S>) -> Result<TensorOperator<S>> {
    let n = q.n();
    let qv = q.q();
    let hi = hbar.inv()?;
    let zi = z.inv()?;
    let mut m = TensorOperator::zeros(n, 2);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                m.add4(i, i, i, i, zi.clone() + hi.clone());
                continue;
            }
            let d = n_times(n, &(qv[j].clone() - qv[i].clone()).inv()?);
            m.add4(i, j, j, i, zi.clone() + d.clone());
            m.add4(i, i, j, j, hi.clone() - d);
        }
    }
    Ok(m)
}

/// The semi-dynamical R-matrix `R(ħ, z₁, z₂ | q)`.
pub fn r_semidynamical<S: Scalar>(
    hbar: &S,
    z1: &S,
    z2: &S,
    q: &DynParams<S>,
) -> Result<TensorOperator<S>> {
    let n = q.n();
    let qv = q.q();
    let a = (z1.clone() - z2.clone()).inv()?;
    let b = hbar.inv()?;
    let c = (z1.clone() + hbar.clone()).inv()?;
    let e = z2.inv()?;
    let mut m = TensorOperator::zeros(n, 2);
    for i in 0..n {
        m.add4(i, i, i, i, a.clone() + e.clone() + b.clone() - c.clone());
        for j in (0..n).filter(|&j| j != i) {
            let d = n_times(n, &(qv[j].clone() - qv[i].clone()).inv()?);
            m.add4(i, j, j, i, a.clone() + d.clone());
            m.add4(i, i, j, j, b.clone() + d.clone());
            m.add4(i, j, j, j, -(c.clone() + d.clone()));
            m.add4(j, j, i, j, e.clone() + d);
        }
    }
    Ok(m)
}

/// The twist `F₁₂(ħ, z₁ | q)`.
pub fn twist<S: Scalar>(hbar: &S, z1: &S, q: &DynParams<S>) -> Result<TensorOperator<S>> {
    let n = q.n();
    let qv = q.q();
    let hi = hbar.inv()?;
    let c = (z1.clone() + hbar.clone()).inv()?;
    let nh = n_times(n, hbar);
    let mut m = TensorOperator::zeros(n, 2);
    for i in 0..n {
        for j in 0..n {
            let d = n_times(n, &(qv[i].clone() - qv[j].clone() + nh.clone()).inv()?);
            m.add4(i, i, j, j, hbar.clone() * (hi.clone() - d.clone()));
            m.add4(i, j, j, j, hbar.clone() * (d - c.clone()));
        }
    }
    Ok(m)
}

/// The printed inverse `F⁻¹₁₂(ħ, z₁ | q)`.
pub fn twist_inverse<S: Scalar>(hbar: &S, z1: &S, q: &DynParams<S>) -> Result<TensorOperator<S>> {
    let n = q.n();
    let qv = q.q();
    let hi = hbar.inv()?;
    let zi = z1.inv()?;
    let mut m = TensorOperator::zeros(n, 2);
    for i in 0..n {
        m.add4(i, i, i, i, hbar.clone() * (hi.clone() + zi.clone()));
        for j in (0..n).filter(|&j| j != i) {
            let d = n_times(n, &(qv[i].clone() - qv[j].clone()).inv()?);
            m.add4(i, j, j, j, hbar.clone() * (zi.clone() - d.clone()));
            m.add4(i, i, j, j, hbar.clone() * (d + hi.clone()));
        }
    }
    Ok(m)
}

/// `g(z, q)` placed on `slot` of a `total`-slot space.
pub fn g_on<S: Scalar>(z: &S, q: &DynParams<S>, slot: usize, total: usize) -> Result<TensorOperator<S>> {
    gauge::g_matrix(z, q)?.embed(&[slot], total)
}

/// `g⁻¹(z, q)` placed on `slot` of a `total`-slot space.
pub fn g_inv_on<S: Scalar>(
    z: &S,
    q: &DynParams<S>,
    slot: usize,
    total: usize,
) -> Result<TensorOperator<S>> {
    gauge::g_inverse(z, q, InverseMethod::Symmetric)?.embed(&[slot], total)
}

/// `g_a(z, q − ħ^{(b)})` on two slots: `g` on slot `a` with `q_k ↦ q_k − Nħ`
/// for slot-`b` basis index `k`.
pub fn g_shifted<S: Scalar>(
    z: &S,
    q: &DynParams<S>,
    hbar: &S,
    slot: usize,
    inverse: bool,
) -> Result<TensorOperator<S>> {
    let other = 3 - slot;
    let step = -n_times(q.n(), hbar);
    gauge::shifted_sum(q, &step, 2, other, |qs| {
        if inverse {
            g_inv_on(z, qs, slot, 2)
        } else {
            g_on(z, qs, slot, 2)
        }
    })
}

/// The twist in factorized form `g₁⁻¹(z₁ + ħ, q) g₁(z₁, q − ħ^{(2)})`.
pub fn twist_factorized<S: Scalar>(
    hbar: &S,
    z1: &S,
    q: &DynParams<S>,
) -> Result<TensorOperator<S>> {
    let left = g_inv_on(&(z1.clone() + hbar.clone()), q, 1, 2)?;
    Ok(left.matmul(&g_shifted(z1, q, hbar, 1, false)?))
}

/// `F₁₂(ħ, z₁) R^dyn(z₁ − z₂) F₂₁⁻¹(ħ, z₂)`, with `F₂₁⁻¹ = P F₁₂⁻¹ P`.
pub fn semidynamical_from_twist<S: Scalar>(
    hbar: &S,
    z1: &S,
    z2: &S,
    q: &DynParams<S>,
) -> Result<TensorOperator<S>> {
    let f = twist(hbar, z1, q)?;
    let rd = r_dynamical(hbar, &(z1.clone() - z2.clone()), q)?;
    let finv21 = twist_inverse(hbar, z2, q)?.swap_slots();
    Ok(TensorOperator::product([&f, &rd, &finv21]))
}

/// `g₁⁻¹(z₁+ħ) g₁(z₁, q − ħ^{(2)}) R^dyn g₂⁻¹(z₂, q − ħ^{(1)}) g₂(z₂+ħ)`.
pub fn semidynamical_from_gauge<S: Scalar>(
    hbar: &S,
    z1: &S,
    z2: &S,
    q: &DynParams<S>,
) -> Result<TensorOperator<S>> {
    let rd = r_dynamical(hbar, &(z1.clone() - z2.clone()), q)?;
    Ok(TensorOperator::product([
        &g_inv_on(&(z1.clone() + hbar.clone()), q, 1, 2)?,
        &g_shifted(z1, q, hbar, 1, false)?,
        &rd,
        &g_shifted(z2, q, hbar, 2, true)?,
        &g_on(&(z2.clone() + hbar.clone()), q, 2, 2)?,
    ]))
}

/// The vertex R-matrix from the dynamical one:
/// `g₂(z₂) g₁(z₁, q − ħ^{(2)}) R^dyn g₂⁻¹(z₂, q − ħ^{(1)}) g₁⁻¹(z₁)`.
pub fn vertex_from_dynamical<S: Scalar>(
    hbar: &S,
    z1: &S,
    z2: &S,
    q: &DynParams<S>,
) -> Result<TensorOperator<S>> {
    let rd = r_dynamical(hbar, &(z1.clone() - z2.clone()), q)?;
    Ok(TensorOperator::product([
        &g_on(z2, q, 2, 2)?,
        &g_shifted(z1, q, hbar, 1, false)?,
        &rd,
        &g_shifted(z2, q, hbar, 2, true)?,
        &g_inv_on(z1, q, 1, 2)?,
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt() -> (Rat, Rat, Rat, DynParams<Rat>) {
        (
            Rat::new(2, 7),
            Rat::new(5, 3),
            Rat::new(-1, 4),
            DynParams::new(vec![Rat::new(1, 2), Rat::from_int(3), Rat::new(-4, 5)]).unwrap(),
        )
    }

    #[test]
    fn dynamical_diagonal_coefficient() {
        let q = DynParams::new(vec![Rat::from_int(1), Rat::from_int(5)]).unwrap();
        let (h, z) = (Rat::new(3, 4), Rat::new(2, 9));
        let m = r_dynamical(&h, &z, &q).unwrap();
        let expect = z.inv().unwrap() + h.inv().unwrap();
        assert_eq!(*m.get4(0, 0, 0, 0), expect);
        assert_eq!(*m.get4(1, 1, 1, 1), expect);
    }

    #[test]
    fn twist_times_inverse() {
        let (h, z1, _, q) = pt();
        let f = twist(&h, &z1, &q).unwrap();
        let fi = twist_inverse(&h, &z1, &q).unwrap();
        assert_eq!(f.matmul(&fi), TensorOperator::identity(3, 2));
    }

    #[test]
    fn twist_factorization() {
        let (h, z1, _, q) = pt();
        assert_eq!(twist(&h, &z1, &q).unwrap(), twist_factorized(&h, &z1, &q).unwrap());
    }

    #[test]
    fn twist_relation() {
        let (h, z1, z2, q) = pt();
        assert_eq!(
            semidynamical_from_twist(&h, &z1, &z2, &q).unwrap(),
            r_semidynamical(&h, &z1, &z2, &q).unwrap()
        );
    }

    #[test]
    fn gauge_relation() {
        let (h, z1, z2, q) = pt();
        assert_eq!(
            semidynamical_from_gauge(&h, &z1, &z2, &q).unwrap(),
            r_semidynamical(&h, &z1, &z2, &q).unwrap()
        );
    }
}
