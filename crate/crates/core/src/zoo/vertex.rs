//! The vertex-type R-matrix obtained by gauging the semi-dynamical one,
//! in its several equivalent routes.

use crate::algebra::{Rat, Scalar, TensorOperator};
use crate::error::Result;
use crate::gauge::{self, DynParams, InverseMethod, RhoIndex, SymFunctions};

use super::basic::o_matrix;
use super::dynamical::{g_inv_on, g_on, r_semidynamical};

/// `g₂(z₂) g₁(z₁+ħ) R^semi(ħ, z₁, z₂ | q) g₂⁻¹(z₂+ħ) g₁⁻¹(z₁)`.
pub fn r_vertex<S: Scalar>(
    hbar: &S,
    z1: &S,
    z2: &S,
    q: &DynParams<S>,
) -> Result<TensorOperator<S>> {
    let semi = r_semidynamical(hbar, z1, z2, q)?;
    Ok(TensorOperator::product([
        &g_on(z2, q, 2, 2)?,
        &g_on(&(z1.clone() + hbar.clone()), q, 1, 2)?,
        &semi,
        &g_inv_on(&(z2.clone() + hbar.clone()), q, 2, 2)?,
        &g_inv_on(z1, q, 1, 2)?,
    ]))
}

/// The same matrix assembled entry by entry from products of `g` and
/// `g⁻¹` components.
pub fn r_vertex_components<S: Scalar>(
    hbar: &S,
    z1: &S,
    z2: &S,
    q: &DynParams<S>,
) -> Result<TensorOperator<S>> {
    let n = q.n();
    let qv = q.q();
    let ga = gauge::g_matrix(&(z1.clone() + hbar.clone()), q)?;
    let gc = gauge::g_matrix(z2, q)?;
    let gb = gauge::g_inverse(z1, q, InverseMethod::Symmetric)?;
    let gd = gauge::g_inverse(&(z2.clone() + hbar.clone()), q, InverseMethod::Symmetric)?;
    let c12 = (z1.clone() - z2.clone()).inv()?;
    let ch = hbar.inv()?;
    let c1h = (z1.clone() + hbar.clone()).inv()?;
    let c2 = z2.inv()?;
    let nn = Rat::from_int(n as i64);

    // weight(i, j) multiplies the four structures for the pair (i, j)
    let mut weights = vec![vec![[S::zero(), S::zero(), S::zero(), S::zero()]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut w = [c12.clone(), ch.clone(), -c1h.clone(), c2.clone()];
            if i != j {
                let d = (qv[j].clone() - qv[i].clone()).inv()?.scale_rat(&nn);
                w[0] = w[0].clone() + d.clone();
                w[1] = w[1].clone() + d.clone();
                w[2] = w[2].clone() - d.clone();
                w[3] = w[3].clone() + d;
            }
            weights[i][j] = w;
        }
    }

    let mut m = TensorOperator::zeros(n, 2);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let mut acc = S::zero();
                    for i in 0..n {
                        for j in 0..n {
                            let w = &weights[i][j];
                            let t0 = ga.get(a, i).clone()
                                * gc.get(c, j).clone()
                                * gb.get(j, b).clone()
                                * gd.get(i, d).clone();
                            let t1 = ga.get(a, i).clone()
                                * gc.get(c, j).clone()
                                * gb.get(i, b).clone()
                                * gd.get(j, d).clone();
                            let t2 = ga.get(a, i).clone()
                                * gc.get(c, j).clone()
                                * gb.get(j, b).clone()
                                * gd.get(j, d).clone();
                            let t3 = ga.get(a, j).clone()
                                * gc.get(c, i).clone()
                                * gb.get(j, b).clone()
                                * gd.get(j, d).clone();
                            acc = acc
                                + t0 * w[0].clone()
                                + t1 * w[1].clone()
                                + t2 * w[2].clone()
                                + t3 * w[3].clone();
                        }
                    }
                    m.add4(a, b, c, d, acc);
                }
            }
        }
    }
    Ok(m)
}

fn signed<S: Scalar>(k: usize, v: S) -> S {
    if k.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

/// The component formula specialised to `q_i = i`, `z₁ = z/2`, `z₂ = −z/2`.
pub fn r_vertex_example1<S: Scalar>(n: usize, hbar: &S, z: &S) -> Result<TensorOperator<S>> {
    let rho = RhoIndex::new(n);
    let half = Rat::new(1, 2);
    let nn = n as i64;
    let zh = z.scale_rat(&half);
    // q̄_i = i − (N+1)/2
    let qbar: Vec<Rat> = (1..=nn).map(|i| Rat::new(2 * i - nn - 1, 2)).collect();
    // d_i = (−1)^{N−i} (i−1)! (N−i)!
    let fact = |k: i64| (1..=k).product::<i64>().max(1);
    let d: Vec<Rat> = (1..=nn)
        .map(|i| {
            let v = Rat::from_int(fact(i - 1) * fact(nn - i));
            if (nn - i) % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect();

    let y: Vec<S> = qbar.iter().map(|b| zh.clone() + S::from_rat(b.clone())).collect();
    let v: Vec<S> = qbar
        .iter()
        .map(|b| hbar.clone() - zh.clone() + S::from_rat(b.clone()))
        .collect();
    let sy = SymFunctions::new(&y);
    let sv = SymFunctions::new(&v);
    let two = Rat::from_int(2);
    let s_pref = z.scale_rat(&Rat::from_int(nn)).inv()?.scale_rat(&two);
    let t_pref = (hbar.scale_rat(&two) - z.clone())
        .scale_rat(&Rat::from_int(nn))
        .inv()?
        .scale_rat(&two);
    let s = TensorOperator::from_fn(n, 1, |k, j| {
        let r = rho.rho(j + 1);
        signed(r, sy.sigma(r as i64) * s_pref.clone() - sy.marked(k, r as i64))
    });
    let t = TensorOperator::from_fn(n, 1, |k, j| {
        let r = rho.rho(j + 1);
        signed(r, sv.sigma(r as i64) * t_pref.clone() - sv.marked(k, r as i64))
    });

    // left factors (z/2 + ħ + q̄_i)^{ρ(a)} and (−z/2 + q̄_j)^{ρ(c)}
    let up: Vec<S> = qbar.iter().map(|b| zh.clone() + hbar.clone() + S::from_rat(b.clone())).collect();
    let dn: Vec<S> = qbar.iter().map(|b| S::from_rat(b.clone()) - zh.clone()).collect();
    let zi = z.inv()?;
    let hi = hbar.inv()?;
    let z2h = (z.clone() + hbar.scale_rat(&two)).inv()?;

    let mut m = TensorOperator::zeros(n, 2);
    for a in 0..n {
        let ra = rho.rho(a + 1) as u32;
        for c in 0..n {
            let rc = rho.rho(c + 1) as u32;
            for b in 0..n {
                for dd in 0..n {
                    let mut acc = S::zero();
                    for i in 0..n {
                        for j in 0..n {
                            let dij = (&d[i] * &d[j]).inv()?;
                            let lead = up[i].pow(ra) * dn[j].pow(rc);
                            let swap = up[j].pow(ra) * dn[i].pow(rc);
                            let sjb_tid = s.get(j, b).clone() * t.get(i, dd).clone();
                            let sib_tjd = s.get(i, b).clone() * t.get(j, dd).clone();
                            let sjb_tjd = s.get(j, b).clone() * t.get(j, dd).clone();
                            let bracket = sjb_tid.clone() * zi.clone() + sib_tjd.clone() * hi.clone()
                                - (sjb_tjd.clone() * z2h.clone()).scale_rat(&two);
                            acc = acc + (lead.clone() * bracket).scale_rat(&dij)
                                - (swap.clone() * sjb_tjd.clone() * zi.clone()).scale_rat(&(&two * &dij));
                            if i != j {
                                let ji = Rat::from_int((j as i64) - (i as i64)).inv()?;
                                let w = &(&dij * &ji) * &Rat::from_int(nn);
                                acc = acc
                                    + (lead * (sjb_tid + sib_tjd - sjb_tjd.clone())).scale_rat(&w)
                                    + (swap * sjb_tjd).scale_rat(&w);
                            }
                        }
                    }
                    m.add4(a, b, c, dd, acc);
                }
            }
        }
    }
    Ok(m)
}

/// `B₁₂(ħ, z₁ | q)`, the regular part of the semi-dynamical matrix at `z₂ = 0`.
pub fn b_matrix<S: Scalar>(hbar: &S, z1: &S, q: &DynParams<S>) -> Result<TensorOperator<S>> {
    let n = q.n();
    let qv = q.q();
    let zi = z1.inv()?;
    let hi = hbar.inv()?;
    let c = (z1.clone() + hbar.clone()).inv()?;
    let nn = Rat::from_int(n as i64);
    let mut m = TensorOperator::zeros(n, 2);
    for i in 0..n {
        for j in 0..n {
            m.add4(i, j, j, i, zi.clone());
            m.add4(i, i, j, j, hi.clone());
            m.add4(i, j, j, j, -c.clone());
            if i != j {
                let d = (qv[j].clone() - qv[i].clone()).inv()?.scale_rat(&nn);
                m.add4(i, j, j, i, d.clone());
                m.add4(i, i, j, j, d.clone());
                m.add4(i, j, j, j, -d.clone());
                m.add4(j, j, i, j, d);
            }
        }
    }
    Ok(m)
}

/// The gauge formula evaluated at `z₁ = z`, `z₂ = 0`:
/// `g₁(z+ħ) (g₂'(0) O₁₂ + g₂(0) B₁₂(ħ, z)) g₂⁻¹(ħ) g₁⁻¹(z)`.
pub fn r_vertex_z2zero<S: Scalar>(hbar: &S, z: &S, q: &DynParams<S>) -> Result<TensorOperator<S>> {
    let n = q.n();
    let g0 = gauge::g_matrix(&S::zero(), q)?.embed(&[2], 2)?;
    let g0d = gauge::g_z_derivative_closed(&S::zero(), q)?.embed(&[2], 2)?;
    let inner = &g0d.matmul(&o_matrix(n)) + &g0.matmul(&b_matrix(hbar, z, q)?);
    Ok(TensorOperator::product([
        &g_on(&(z.clone() + hbar.clone()), q, 1, 2)?,
        &inner,
        &g_inv_on(hbar, q, 2, 2)?,
        &g_inv_on(z, q, 1, 2)?,
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> (Rat, Rat, Rat, DynParams<Rat>) {
        (
            Rat::new(3, 5),
            Rat::new(7, 4),
            Rat::new(-2, 3),
            DynParams::new(vec![Rat::new(1, 3), Rat::from_int(-2), Rat::new(5, 2)]).unwrap(),
        )
    }

    #[test]
    fn component_route_matches_matrix_route() {
        let (h, z1, z2, q) = params();
        assert_eq!(
            r_vertex_components(&h, &z1, &z2, &q).unwrap(),
            r_vertex(&h, &z1, &z2, &q).unwrap()
        );
    }

    #[test]
    fn example1_matches_gauge_route() {
        for n in 2..=3 {
            let h = Rat::new(-3, 7);
            let z = Rat::new(5, 2);
            let q = DynParams::<Rat>::canonical(n);
            let half = Rat::new(1, 2);
            let direct = r_vertex(&h, &(&z * &half), &-(&z * &half), &q).unwrap();
            assert_eq!(r_vertex_example1(n, &h, &z).unwrap(), direct, "N = {n}");
        }
    }

    #[test]
    fn z2zero_matches_gauge_route() {
        let (h, z1, z2, q) = params();
        let z = &z1 - &z2;
        let direct = r_vertex(&h, &z1, &z2, &q).unwrap();
        assert_eq!(r_vertex_z2zero(&h, &z, &q).unwrap(), direct);
    }

    #[test]
    fn b_matrix_is_regular_part() {
        use crate::algebra::Series;
        let (h, z1, _, q) = params();
        let c = |x: &Rat| Series::constant(x.clone());
        let eps = Series::point(Rat::zero(), -1, 2).unwrap();
        let semi = r_semidynamical(&c(&h), &c(&z1), &eps, &q.to_series()).unwrap();
        assert_eq!(semi.coeff(-1).unwrap(), o_matrix::<Rat>(3));
        assert_eq!(semi.coeff(0).unwrap(), b_matrix(&h, &z1, &q).unwrap());
    }

    #[test]
    fn gauge_kernel_kills_o() {
        for n in 2..=4 {
            let q = DynParams::<Rat>::new((0..n).map(|i| Rat::new(3 * i as i64 + 1, 2)).collect()).unwrap();
            let g0 = gauge::g_matrix(&Rat::zero(), &q).unwrap().embed(&[2], 2).unwrap();
            assert!(g0.matmul(&o_matrix(n)).is_zero());
        }
    }
}
