//! Closed-form nested-sum expressions for the vertex R-matrix and for the
//! coefficients of its expansions.
//!
//! Sums run over the indices for which every `ρ⁻¹` lookup is defined; a
//! summand asking for `ρ⁻¹(N − 1)` (or an argument outside the image of
//! `ρ`) is dropped. Binomials vanish outside `0 <= k <= n` and the
//! inequality deltas are plain indicators.

use crate::algebra::{binomial, Rat, Scalar, TensorOperator};
use crate::error::Result;
use crate::gauge::RhoIndex;

/// Accumulator for an `N × N` matrix addressed by 1-based indices that may
/// be undefined.
struct Acc<S: Scalar> {
    m: TensorOperator<S>,
}

impl<S: Scalar> Acc<S> {
    fn new(n: usize) -> Self {
        Acc {
            m: TensorOperator::zeros(n, 1),
        }
    }

    fn add(&mut self, a: Option<usize>, b: Option<usize>, v: S) {
        if let (Some(a), Some(b)) = (a, b) {
            if !v.is_zero() {
                self.m.add_to(a - 1, b - 1, v);
            }
        }
    }
}

fn delta(a: i64, b: i64) -> i64 {
    (a == b) as i64
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `c · base^e` with the power skipped when `c = 0` (so negative powers of a
/// vanishing base are never formed for dropped terms).
fn term<S: Scalar>(c: Rat, base: &S, e: i64) -> Result<S> {
    if c.is_zero() {
        return Ok(S::zero());
    }
    Ok(base.powi(e as i32)?.scale_rat(&c))
}

struct Ctx {
    n: usize,
    nn: i64,
    rho: RhoIndex,
}

impl Ctx {
    fn new(n: usize) -> Self {
        Ctx {
            n,
            nn: n as i64,
            rho: RhoIndex::new(n),
        }
    }

    fn r(&self, i: i64) -> i64 {
        self.rho.rho(i as usize) as i64
    }

    fn ri(&self, m: i64) -> Option<usize> {
        self.rho.inv(m)
    }

    fn dn(&self, j: i64) -> i64 {
        delta(j, self.nn)
    }
}

fn some(i: i64) -> Option<usize> {
    Some(i as usize)
}

fn a_matrix<S: Scalar>(c: &Ctx, z: &S, h: &S) -> Result<TensorOperator<S>> {
    let nn = c.nn;
    let zh = z.clone() + h.clone();
    let mut a = Acc::new(c.n);
    a.add(some(nn), some(nn), S::one());
    for j in 1..=nn {
        let k = Rat::from_int(-(nn - j) * sign(c.r(j) + nn)) * binomial(nn, j - 1);
        a.add(some(nn), some(j), term(k, z, nn - j + 1)?);
    }
    for i in 1..=nn {
        let ri = c.r(i);
        for j in 1..=nn {
            for s in 1..=nn - j {
                for b in 0..=ri {
                    let k = Rat::from_int(-sign(s + c.dn(j)))
                        * binomial(s + j - 2, j - 1)
                        * binomial(ri, b);
                    if k.is_zero() {
                        continue;
                    }
                    let d0 = delta(ri - j, b + s - 2);
                    let d1 = delta(ri - j, b + s - 1);
                    if d0 == 0 && d1 == 0 {
                        continue;
                    }
                    let inner = S::from_int(d0) - (h.clone() * S::from_int(nn * d1));
                    let v = term(k, z, s - 1)? * zh.pow(b as u32) * inner;
                    a.add(some(i), some(j), v);
                }
            }
        }
    }
    Ok(a.m)
}

fn b_matrix<S: Scalar>(c: &Ctx, h: &S) -> Result<TensorOperator<S>> {
    let nn = c.nn;
    let mh = -h.clone();
    let mut b = Acc::new(c.n);
    let hi = h.inv()?;
    for j in 1..=nn {
        b.add(some(j), some(j), hi.clone());
    }
    for j in 1..=nn {
        let rj = c.r(j);
        if rj >= 1 {
            b.add(some(j), c.ri(rj - 1), S::from_rat(Rat::new(-rj, nn)));
        }
        b.add(c.ri(j), some(j), S::from_rat(Rat::new(sign(c.dn(j)) * j, nn)));
        for bb in 0..=rj {
            for cc in 0..=nn - j {
                for p in 0..=rj - bb + cc {
                    let k = Rat::from_int(-sign(bb + c.dn(j)))
                        * binomial(rj, bb)
                        * binomial(rj - bb + cc, p);
                    b.add(
                        c.ri(j + cc),
                        c.ri(rj - bb - p + cc),
                        term(k, &mh, p + bb)?,
                    );
                }
            }
        }
    }
    Ok(b.m)
}

fn kron_unit<S: Scalar>(n: usize, i: i64, j: i64, x: &TensorOperator<S>) -> TensorOperator<S> {
    TensorOperator::<S>::unit(n, (i - 1) as usize, (j - 1) as usize).kron(x)
}

/// The full quantum R-matrix `A(z, ħ) ⊗ B(ħ) + (1/z) Σ E_ij ⊗ X_ij(z, ħ)`.
pub fn r_explicit<S: Scalar>(n: usize, hbar: &S, z: &S) -> Result<TensorOperator<S>> {
    let c = Ctx::new(n);
    let nn = c.nn;
    let h = hbar;
    let mh = -h.clone();
    let zh = z.clone() + h.clone();
    let mut r = a_matrix(&c, z, h)?.kron(&b_matrix(&c, h)?);
    let zi = z.inv()?;
    for i in 1..=nn {
        let ri = c.r(i);
        for j in 1..=nn {
            let dj = c.dn(j);
            let mut x = Acc::new(n);
            for g in 0..=ri {
                let bg = binomial(ri, g);
                x.add(some(j), c.ri(ri - g), term(bg.clone(), z, g)?);
                let k = Rat::from_int(-sign(c.r(j) + nn) * (nn - j)) * &bg * binomial(nn, j - 1);
                x.add(some(nn), c.ri(ri - g), term(k, z, g + nn - j + 1)?);
                for s in 1..=nn - j {
                    let k = Rat::from_int(sign(s + dj)) * &bg * binomial(s + j - 1, j - 1);
                    x.add(c.ri(s + j - 1), c.ri(ri - g), term(k, z, s + g)?);
                    let pre_c = Rat::from_int(-nn * sign(s + dj)) * binomial(s + j - 2, j - 1) * &bg;
                    if pre_c.is_zero() {
                        continue;
                    }
                    let pre = term(pre_c, z, s)? * zh.pow(g as u32);
                    if ri < j + s + g {
                        for cc in 0..=nn - s - j + 1 {
                            for p in 0..=ri - g + cc {
                                let v = pre.clone() * term(binomial(ri - g + cc, p), &mh, p)?;
                                x.add(c.ri(s + j + cc - 1), c.ri(ri - g - p + cc), v);
                            }
                        }
                    } else {
                        for cc in 0..=s + j - 2 {
                            for p in 0..=ri - g - cc - 1 {
                                let v = -(pre.clone() * term(binomial(ri - g - cc - 1, p), &mh, p)?);
                                x.add(c.ri(s + j - cc - 2), c.ri(ri - g - p - cc - 1), v);
                            }
                        }
                    }
                }
            }
            r = &r + &kron_unit(n, i, j, &x.m.scale(&zi));
        }
    }
    Ok(r)
}

/// `A^[0], A^[1], A^[2]`: the ħ-expansion coefficients of `A(z, ħ)`.
fn a_coeffs<S: Scalar>(c: &Ctx, z: &S) -> Result<[TensorOperator<S>; 3]> {
    let nn = c.nn;
    let mut a0 = Acc::new(c.n);
    let mut a1 = Acc::new(c.n);
    let mut a2 = Acc::new(c.n);
    a0.add(some(nn), some(nn), S::one());
    for j in 1..=nn {
        let k = Rat::from_int(-(nn - j) * sign(c.r(j) + nn)) * binomial(nn, j - 1);
        a0.add(some(nn), some(j), term(k, z, nn - j + 1)?);
    }
    for i in 1..=nn {
        let ri = c.r(i);
        for j in 1..=nn {
            for s in 1..=nn - j {
                for b in 0..=ri {
                    let k = Rat::from_int(sign(s + c.dn(j)))
                        * binomial(s + j - 2, j - 1)
                        * binomial(ri, b);
                    let d0 = delta(ri - j, b + s - 2);
                    let d1 = delta(ri - j, b + s - 1);
                    a0.add(some(i), some(j), term(-&k * Rat::from_int(d0), z, s + b - 1)?);
                    // −k z^{s+b−2} (b δ₀ − N z δ₁)
                    let v1 = term(-&k * Rat::from_int(b * d0), z, s + b - 2)?
                        + term(&k * Rat::from_int(nn * d1), z, s + b - 1)?;
                    a1.add(some(i), some(j), v1);
                    // −k z^{s+b−3} (b(b−1)/2 δ₀ − b N z δ₁)
                    let v2 = term(-&k * Rat::from_int(b * (b - 1) / 2 * d0), z, s + b - 3)?
                        + term(&k * Rat::from_int(b * nn * d1), z, s + b - 2)?;
                    a2.add(some(i), some(j), v2);
                }
            }
        }
    }
    Ok([a0.m, a1.m, a2.m])
}

/// `B^[0], B^[1]`: the ħ-expansion coefficients of `B(ħ) − 1/ħ`.
fn b_coeffs<S: Scalar>(c: &Ctx) -> [TensorOperator<S>; 2] {
    let nn = c.nn;
    let mut b0 = Acc::new(c.n);
    let mut b1 = Acc::new(c.n);
    for j in 1..=nn {
        let rj = c.r(j);
        let sg = sign(c.dn(j));
        if rj >= 1 {
            b0.add(some(j), c.ri(rj - 1), S::from_rat(Rat::new(-rj, nn)));
        }
        b0.add(c.ri(j), some(j), S::from_rat(Rat::new(sg * j, nn)));
        for cc in 0..=nn - j {
            b0.add(c.ri(j + cc), c.ri(rj + cc), S::from_int(-sg));
            b1.add(c.ri(j + cc), c.ri(rj + cc - 1), S::from_int(sg * cc));
        }
    }
    [b0.m, b1.m]
}

/// The classical r-matrix, the ħ⁰ coefficient of [`r_explicit`].
pub fn classical_r<S: Scalar>(n: usize, z: &S) -> Result<TensorOperator<S>> {
    let c = Ctx::new(n);
    let nn = c.nn;
    let [a0, a1, _] = a_coeffs(&c, z)?;
    let [b0, _] = b_coeffs::<S>(&c);
    let mut r = &a0.kron(&b0) + &a1.kron(&TensorOperator::identity(n, 1));
    let zi = z.inv()?;
    for i in 1..=nn {
        let ri = c.r(i);
        for j in 1..=nn {
            let dj = c.dn(j);
            let mut x = Acc::new(n);
            for g in 0..=ri {
                let bg = binomial(ri, g);
                x.add(some(j), c.ri(ri - g), term(bg.clone(), z, g)?);
                let k = Rat::from_int(-sign(c.r(j) + nn) * (nn - j)) * &bg * binomial(nn, j - 1);
                x.add(some(nn), c.ri(ri - g), term(k, z, g + nn - j + 1)?);
                for s in 1..=nn - j {
                    let k = Rat::from_int(sign(s + dj)) * &bg * binomial(s + j - 1, j - 1);
                    x.add(c.ri(s + j - 1), c.ri(ri - g), term(k, z, s + g)?);
                    let pre_c = Rat::from_int(-nn * sign(s + dj)) * binomial(s + j - 2, j - 1) * &bg;
                    let pre = term(pre_c, z, s + g)?;
                    if ri < j + s + g {
                        for cc in 0..=nn - s - j + 1 {
                            x.add(c.ri(s + j + cc - 1), c.ri(ri - g + cc), pre.clone());
                        }
                    } else {
                        for cc in 0..=s + j - 2 {
                            x.add(c.ri(s + j - cc - 2), c.ri(ri - g - cc - 1), -pre.clone());
                        }
                    }
                }
            }
            r = &r + &kron_unit(n, i, j, &x.m.scale(&zi));
        }
    }
    Ok(r)
}

/// `m(z)`, the ħ¹ coefficient of [`r_explicit`].
pub fn m_explicit<S: Scalar>(n: usize, z: &S) -> Result<TensorOperator<S>> {
    let c = Ctx::new(n);
    let nn = c.nn;
    let [a0, a1, a2] = a_coeffs(&c, z)?;
    let [b0, b1] = b_coeffs::<S>(&c);
    let mut r = &(&a0.kron(&b1) + &a1.kron(&b0)) + &a2.kron(&TensorOperator::identity(n, 1));
    for i in 1..=nn {
        let ri = c.r(i);
        for j in 1..=nn {
            let dj = c.dn(j);
            let mut x = Acc::new(n);
            for s in 1..=nn - j {
                for g in 0..=ri {
                    let pre = Rat::from_int(nn * sign(s + dj))
                        * binomial(s + j - 2, j - 1)
                        * binomial(ri, g);
                    if ri < j + s + g {
                        for cc in 0..=nn - s - j + 1 {
                            let k1 = &pre * Rat::from_int(ri - g + cc);
                            x.add(c.ri(s + j + cc - 1), c.ri(ri - g + cc - 1), term(k1, z, s + g - 1)?);
                            let k2 = -&pre * Rat::from_int(g);
                            x.add(c.ri(s + j + cc - 1), c.ri(ri - g + cc), term(k2, z, s + g - 2)?);
                        }
                    } else {
                        for cc in 0..=s + j - 2 {
                            let k1 = &pre * Rat::from_int(g);
                            x.add(c.ri(s + j - cc - 2), c.ri(ri - g - cc - 1), term(k1, z, s + g - 2)?);
                            let k2 = -&pre * Rat::from_int(ri - g - cc - 1);
                            x.add(c.ri(s + j - cc - 2), c.ri(ri - g - cc - 2), term(k2, z, s + g - 1)?);
                        }
                    }
                }
            }
            r = &r + &kron_unit(n, i, j, &x.m);
        }
    }
    Ok(r)
}

/// `A^[0], A^[1], A^[2]` at `z = 0`.
fn a_coeffs_at_zero(c: &Ctx) -> [TensorOperator<Rat>; 3] {
    let nn = c.nn;
    let mut a0 = Acc::new(c.n);
    let mut a1 = Acc::new(c.n);
    let mut a2 = Acc::new(c.n);
    a0.add(some(nn), some(nn), Rat::one());
    for i in 1..=nn {
        let ri = c.r(i);
        for j in 1..=nn {
            let sg = sign(c.dn(j));
            a0.add(some(i), some(j), Rat::from_int(sg * delta(ri, j - 1)));
            a1.add(some(i), some(j), Rat::from_int(sg * (ri - nn) * delta(ri, j)));
            let k = Rat::new(ri * (ri - 1), 2) - Rat::from_int(nn * ri);
            a2.add(some(i), some(j), k * Rat::from_int(sg * delta(ri, j + 1)));
        }
    }
    [a0.m, a1.m, a2.m]
}

/// `m(0)`.
pub fn m_zero(n: usize) -> TensorOperator<Rat> {
    let c = Ctx::new(n);
    let nn = c.nn;
    let [a0, a1, a2] = a_coeffs_at_zero(&c);
    let [b0, b1] = b_coeffs::<Rat>(&c);
    let mut r = &(&a0.kron(&b1) + &a1.kron(&b0)) + &a2.kron(&TensorOperator::identity(n, 1));
    for i in 1..=nn {
        let ri = c.r(i);
        for j in 1..=nn {
            let mut x = Acc::new(n);
            let pre = -nn * sign(c.dn(j));
            let ind = |b: bool| b as i64;
            for cc in 0..=nn - j {
                let k = (ri + cc) * ind(ri <= j) - ri * ind(ri <= j + 1);
                x.add(c.ri(j + cc), c.ri(ri + cc - 1), Rat::from_int(pre * k));
            }
            for cc in 0..=j - 1 {
                let k = ri * ind(ri > j + 1) - (ri - cc - 1) * ind(ri > j);
                x.add(c.ri(j - cc - 1), c.ri(ri - cc - 2), Rat::from_int(pre * k));
            }
            r = &r + &kron_unit(n, i, j, &x.m);
        }
    }
    r
}

/// `r^(0)`, the regular part of the classical r-matrix at `z = 0`.
pub fn r_zero(n: usize) -> TensorOperator<Rat> {
    let c = Ctx::new(n);
    let nn = c.nn;
    let [a0, a1, _] = a_coeffs_at_zero(&c);
    let [b0, _] = b_coeffs::<Rat>(&c);
    let mut r = &a0.kron(&b0) + &a1.kron(&TensorOperator::identity(n, 1));
    for i in 1..=nn {
        let ri = c.r(i);
        for j in 1..=nn {
            let mut x = Acc::new(n);
            let sg = sign(c.dn(j));
            x.add(some(j), c.ri(ri - 1), Rat::from_int(ri));
            for g in 0..=ri {
                let k = Rat::from_int(-sign(c.r(j) + nn) * delta(g + nn, j) * (nn - j))
                    * binomial(ri, g)
                    * binomial(nn, j - 1);
                x.add(some(nn), c.ri(ri - g), k);
            }
            x.add(c.ri(j), some(i), Rat::from_int(-sg * j));
            if ri <= j {
                for cc in 0..=nn - j {
                    x.add(c.ri(j + cc), c.ri(ri + cc), Rat::from_int(nn * sg));
                }
            } else {
                for cc in 0..=j - 1 {
                    x.add(c.ri(j - cc - 1), c.ri(ri - cc - 1), Rat::from_int(-nn * sg));
                }
            }
            r = &r + &kron_unit(n, i, j, &x.m);
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Series;
    use crate::gauge::DynParams;
    use crate::zoo::basic::{eleven_vertex, permutation};
    use crate::zoo::vertex::r_vertex;

    #[test]
    fn explicit_n2_is_eleven_vertex() {
        for (h, z) in [(Rat::one(), Rat::one()), (Rat::new(-2, 3), Rat::new(7, 5))] {
            assert_eq!(r_explicit(2, &h, &z).unwrap(), eleven_vertex(&h, &z).unwrap());
        }
    }

    #[test]
    fn explicit_matches_gauge_route_n3() {
        let h = Rat::new(2, 9);
        let z = Rat::new(-5, 4);
        let q = DynParams::new(vec![Rat::new(1, 2), Rat::from_int(4), Rat::new(-3, 7)]).unwrap();
        let z2 = Rat::new(1, 3);
        let z1 = &z + &z2;
        assert_eq!(r_explicit(3, &h, &z).unwrap(), r_vertex(&h, &z1, &z2, &q).unwrap());
    }

    #[test]
    fn classical_pieces_match_series() {
        let n = 3;
        let z = Series::constant(Rat::new(3, 4));
        let h = Series::point(Rat::zero(), -1, 6).unwrap();
        let r = r_explicit(n, &h, &z).unwrap();
        assert_eq!(r.coeff(-1).unwrap(), TensorOperator::identity(n, 2));
        let zr = Rat::new(3, 4);
        assert_eq!(r.coeff(0).unwrap(), classical_r(n, &zr).unwrap());
        assert_eq!(r.coeff(1).unwrap(), m_explicit(n, &zr).unwrap());
    }

    #[test]
    fn zero_point_pieces_match_series() {
        let n = 3;
        let z = Series::point(Rat::zero(), -2, 2).unwrap();
        let r = classical_r(n, &z).unwrap();
        assert_eq!(r.coeff(-1).unwrap(), permutation::<Rat>(n));
        assert_eq!(r.coeff(0).unwrap(), r_zero(n));
        let m = m_explicit(n, &z).unwrap();
        assert!(m.coeff(-1).unwrap().is_zero());
        assert_eq!(m.coeff(0).unwrap(), m_zero(n));
    }
}
