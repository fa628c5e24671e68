//! The rational IRF-Vertex gauge matrix `g(z, q) = Ξ(z, q) D⁻¹(q)`.
//!
//! `Ξ_ij = (z + q̄_j)^{ρ(i)}` with `ρ(i) = i − 1` for `i < N` and `ρ(N) = N`,
//! and `D = diag(∏_{k≠i}(q_i − q_k))`. All builders are generic over the
//! scalar ring so the same code evaluates at rational points and on Laurent
//! series (for residues and derivatives).

use crate::algebra::{linalg, Rat, Scalar, Series, TensorOperator};
use crate::error::{Error, Result};

/// The exponent map `ρ` and its partial inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RhoIndex {
    n: usize,
}

impl RhoIndex {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        RhoIndex { n }
    }

    /// `ρ(i)` for 1-based `i`.
    pub fn rho(&self, i: usize) -> usize {
        debug_assert!((1..=self.n).contains(&i));
        if i < self.n {
            i - 1
        } else {
            self.n
        }
    }

    /// `ρ⁻¹(m)`; `None` at `m = N − 1` and outside the image, meaning the
    /// summand that asked for it is skipped.
    pub fn inv(&self, m: i64) -> Option<usize> {
        let n = self.n as i64;
        if (0..=n - 2).contains(&m) {
            Some(m as usize + 1)
        } else if m == n {
            Some(self.n)
        } else {
            None
        }
    }
}

/// Dynamical parameters `q_1, …, q_N`, pairwise distinct.
#[derive(Clone, Debug, PartialEq)]
pub struct DynParams<S> {
    q: Vec<S>,
}

impl<S: Scalar> DynParams<S> {
    pub fn new(q: Vec<S>) -> Result<Self> {
        for i in 0..q.len() {
            for j in i + 1..q.len() {
                if (q[i].clone() - q[j].clone()).is_zero() {
                    return Err(Error::DegenerateParams(i + 1, j + 1));
                }
            }
        }
        Ok(DynParams { q })
    }

    /// `q_i = i`.
    pub fn canonical(n: usize) -> Self {
        DynParams {
            q: (1..=n).map(|i| S::from_int(i as i64)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.q.len()
    }

    pub fn q(&self) -> &[S] {
        &self.q
    }

    /// Centered values `q̄_j = q_j − (1/N) Σ q_k`.
    pub fn bar(&self) -> Vec<S> {
        let n = self.q.len() as i64;
        let mean = self
            .q
            .iter()
            .fold(S::zero(), |a, x| a + x.clone())
            .scale_rat(&Rat::new(1, n));
        self.q.iter().map(|x| x.clone() - mean.clone()).collect()
    }

    /// Copy with `q_k` (0-based) replaced by `q_k + step`.
    pub fn shifted(&self, k: usize, step: &S) -> Result<Self> {
        let mut q = self.q.clone();
        q[k] = q[k].clone() + step.clone();
        DynParams::new(q)
    }

    pub fn map<T: Scalar>(&self, f: impl FnMut(&S) -> T) -> DynParams<T> {
        DynParams {
            q: self.q.iter().map(f).collect(),
        }
    }
}

impl DynParams<Rat> {
    pub fn to_series(&self) -> DynParams<Series> {
        self.map(|x| Series::constant(x.clone()))
    }
}

/// Elementary symmetric functions in the sign convention
/// `∏(ζ − x_k) = Σ (−1)^k ζ^k σ_k` and their marked variants
/// `−∏_{m≠k}(ζ − x_m) = Σ (−1)^s ζ^s σ̂^k_s`.
#[derive(Clone, Debug)]
pub struct SymFunctions<S> {
    sigma: Vec<S>,
    marked: Vec<Vec<S>>,
}

fn monic_product<S: Scalar>(roots: impl Iterator<Item = S>) -> Vec<S> {
    // coefficients of ∏(ζ − x), lowest degree first
    let mut p = vec![S::one()];
    for x in roots {
        let mut next = vec![S::zero(); p.len() + 1];
        for (k, c) in p.iter().enumerate() {
            next[k + 1] = next[k + 1].clone() + c.clone();
            next[k] = next[k].clone() - c.clone() * x.clone();
        }
        p = next;
    }
    p
}

fn alt_sign<S: Scalar>(k: usize, v: S) -> S {
    if k.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

impl<S: Scalar> SymFunctions<S> {
    pub fn new(x: &[S]) -> Self {
        let p = monic_product(x.iter().cloned());
        let sigma = p.into_iter().enumerate().map(|(k, c)| alt_sign(k, c)).collect();
        let marked = (0..x.len())
            .map(|k| {
                let pk = monic_product(
                    x.iter().enumerate().filter(|(m, _)| *m != k).map(|(_, v)| v.clone()),
                );
                pk.into_iter().enumerate().map(|(s, c)| alt_sign(s, -c)).collect()
            })
            .collect();
        SymFunctions { sigma, marked }
    }

    /// `σ_k`, zero outside `0..=N`.
    pub fn sigma(&self, k: i64) -> S {
        if k < 0 {
            return S::zero();
        }
        self.sigma.get(k as usize).cloned().unwrap_or_else(S::zero)
    }

    /// `σ̂^k_s` for 0-based variable index `k`, zero outside `0..N`.
    pub fn marked(&self, k: usize, s: i64) -> S {
        if s < 0 {
            return S::zero();
        }
        self.marked[k].get(s as usize).cloned().unwrap_or_else(S::zero)
    }
}

/// `Ξ_ij(x) = x_j^{ρ(i)}`.
pub fn xi_of<S: Scalar>(x: &[S]) -> TensorOperator<S> {
    let n = x.len();
    let rho = RhoIndex::new(n);
    TensorOperator::from_fn(n, 1, |i, j| x[j].pow(rho.rho(i + 1) as u32))
}

fn shifted_bar<S: Scalar>(z: &S, q: &DynParams<S>) -> Vec<S> {
    q.bar().into_iter().map(|b| z.clone() + b).collect()
}

pub fn xi_matrix<S: Scalar>(z: &S, q: &DynParams<S>) -> TensorOperator<S> {
    xi_of(&shifted_bar(z, q))
}

/// Diagonal of `D(q)`: `D_ii = ∏_{k≠i}(q_i − q_k)`.
pub fn d_diagonal<S: Scalar>(q: &DynParams<S>) -> Vec<S> {
    let q = q.q();
    (0..q.len())
        .map(|i| {
            (0..q.len())
                .filter(|&k| k != i)
                .fold(S::one(), |a, k| a * (q[i].clone() - q[k].clone()))
        })
        .collect()
}

pub fn d_matrix<S: Scalar>(q: &DynParams<S>) -> TensorOperator<S> {
    TensorOperator::diagonal(&d_diagonal(q))
}

pub fn g_matrix<S: Scalar>(z: &S, q: &DynParams<S>) -> Result<TensorOperator<S>> {
    let dinv = d_diagonal(q)
        .iter()
        .map(|d| d.inv())
        .collect::<Result<Vec<_>>>()?;
    let xi = xi_matrix(z, q);
    Ok(TensorOperator::from_fn(q.n(), 1, |i, j| {
        xi.get(i, j).clone() * dinv[j].clone()
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InverseMethod {
    /// Gauss-Jordan elimination of `g`.
    Direct,
    /// Closed form through `σ` and `σ̂` of `x_j = z + q̄_j`.
    Symmetric,
    /// Closed form as a Laurent polynomial in `z` with coefficients in `q̄`.
    ZExpansion,
}

pub fn g_inverse<S: Scalar>(
    z: &S,
    q: &DynParams<S>,
    method: InverseMethod,
) -> Result<TensorOperator<S>> {
    let n = q.n();
    let rho = RhoIndex::new(n);
    let nz_inv = || z.scale_rat(&Rat::from_int(n as i64)).inv();
    match method {
        InverseMethod::Direct => linalg::inverse(&g_matrix(z, q)?),
        InverseMethod::Symmetric => {
            let sf = SymFunctions::new(&shifted_bar(z, q));
            let c = nz_inv()?;
            Ok(TensorOperator::from_fn(n, 1, |k, j| {
                let r = rho.rho(j + 1) as i64;
                let v = sf.sigma(r) * c.clone() - sf.marked(k, r);
                alt_sign(r as usize, v)
            }))
        }
        InverseMethod::ZExpansion => {
            let sf = SymFunctions::new(&q.bar());
            let c = nz_inv()?;
            let nn = n as i64;
            Ok(TensorOperator::from_fn(n, 1, |m, j0| {
                let j = j0 as i64 + 1;
                let r = rho.rho(j0 + 1);
                let mut acc = sf.sigma(r as i64);
                for s in 1..=nn - j {
                    let term = sf.sigma(s + j - 1).scale_rat(&crate::algebra::binomial(s + j - 1, j - 1))
                        - sf
                            .marked(m, s + j - 2)
                            .scale_rat(&(Rat::from_int(nn) * crate::algebra::binomial(s + j - 2, j - 1)));
                    acc = acc + z.pow(s as u32) * term;
                }
                let tail = Rat::from_int(nn - j) * crate::algebra::binomial(nn, j - 1);
                acc = acc - z.pow((nn - j + 1) as u32) * sf.marked(m, nn - 1).scale_rat(&tail);
                alt_sign(r, acc * c.clone())
            }))
        }
    }
}

/// `Ξ⁻¹(x)` in the form `(−1)^{ρ(j)} (σ̂^k_{ρ(j)−1} − (Σ_{s≠k} x_s) σ̂^k_{ρ(j)})
/// / ((Σ x_s) ∏_{s≠k}(x_k − x_s))`, which does not single out `z`.
pub fn xi_inverse_marked_form<S: Scalar>(x: &[S]) -> Result<TensorOperator<S>> {
    let n = x.len();
    let rho = RhoIndex::new(n);
    let sf = SymFunctions::new(x);
    let total = x.iter().fold(S::zero(), |a, v| a + v.clone());
    let mut m = TensorOperator::zeros(n, 1);
    for k in 0..n {
        let others = total.clone() - x[k].clone();
        let prod = (0..n)
            .filter(|&s| s != k)
            .fold(S::one(), |a, s| a * (x[k].clone() - x[s].clone()));
        let denom = (total.clone() * prod).inv()?;
        for j in 0..n {
            let r = rho.rho(j + 1) as i64;
            let num = sf.marked(k, r - 1) - others.clone() * sf.marked(k, r);
            m.set(k, j, alt_sign(r as usize, num * denom.clone()));
        }
    }
    Ok(m)
}

/// `g⁻¹ = D · Ξ⁻¹` with `Ξ⁻¹` taken from [`xi_inverse_marked_form`].
pub fn g_inverse_marked_form<S: Scalar>(
    z: &S,
    q: &DynParams<S>,
) -> Result<TensorOperator<S>> {
    let xi_inv = xi_inverse_marked_form(&shifted_bar(z, q))?;
    Ok(d_matrix(q).matmul(&xi_inv))
}

/// `L^η_ij(z) = η (1/(q_i − q_j + η) − 1/(Nz)) ∏_{k≠j} (q_j − q_k − η)/(q_j − q_k)`.
pub fn cal_l_eta<S: Scalar>(eta: &S, z: &S, q: &DynParams<S>) -> Result<TensorOperator<S>> {
    let n = q.n();
    let qv = q.q();
    let nz_inv = z.scale_rat(&Rat::from_int(n as i64)).inv()?;
    let mut prods = Vec::with_capacity(n);
    for j in 0..n {
        let mut p = S::one();
        for k in (0..n).filter(|&k| k != j) {
            let d = qv[j].clone() - qv[k].clone();
            p = p * (d.clone() - eta.clone()) * d.inv()?;
        }
        prods.push(p);
    }
    TensorOperator::try_from_fn(n, 1, |i, j| {
        if i == j {
            // η/(q_i − q_i + η) = 1, also at η = 0
            return Ok((S::one() - eta.clone() * nz_inv.clone()) * prods[j].clone());
        }
        let a = (qv[i].clone() - qv[j].clone() + eta.clone()).inv()?;
        Ok(eta.clone() * (a - nz_inv.clone()) * prods[j].clone())
    })
}

/// Cauchy-type matrix factorizing as `−Ξ⁻¹(z, q) Ξ(z − η, u)`.
pub fn cauchy_matrix<S: Scalar>(
    eta: &S,
    z: &S,
    q: &DynParams<S>,
    u: &DynParams<S>,
) -> Result<TensorOperator<S>> {
    let n = q.n();
    if u.n() != n {
        return Err(Error::DimensionMismatch(format!("q has {n} entries, u has {}", u.n())));
    }
    let qb = q.bar();
    let ub = u.bar();
    let nz_inv = z.scale_rat(&Rat::from_int(n as i64)).inv()?;
    let mut num = Vec::with_capacity(n);
    for uj in &ub {
        num.push(
            qb.iter()
                .fold(S::one(), |a, qk| a * (uj.clone() - qk.clone() - eta.clone())),
        );
    }
    let mut den = Vec::with_capacity(n);
    for i in 0..n {
        let d = (0..n)
            .filter(|&k| k != i)
            .fold(S::one(), |a, k| a * (qb[i].clone() - qb[k].clone()));
        den.push(d.inv()?);
    }
    TensorOperator::try_from_fn(n, 1, |i, j| {
        let a = (qb[i].clone() - ub[j].clone() + eta.clone()).inv()?;
        Ok((a - nz_inv.clone()) * num[j].clone() * den[i].clone())
    })
}

/// `l(z, q) = g⁻¹ ∂_z g` in closed form.
pub fn l_matrix<S: Scalar>(z: &S, q: &DynParams<S>) -> Result<TensorOperator<S>> {
    let n = q.n();
    let qv = q.q();
    let nz_inv = z.scale_rat(&Rat::from_int(n as i64)).inv()?;
    TensorOperator::try_from_fn(n, 1, |i, j| {
        if i == j {
            let mut acc = nz_inv.clone();
            for k in (0..n).filter(|&k| k != j) {
                acc = acc + (qv[i].clone() - qv[k].clone()).inv()?;
            }
            Ok(acc)
        } else {
            Ok(nz_inv.clone() - (qv[i].clone() - qv[j].clone()).inv()?)
        }
    })
}

/// `∂_{q_n} D_ii / D_ii` for 0-based `i` and `n`.
fn log_d_derivative<S: Scalar>(q: &[S], i: usize, n: usize) -> Result<S> {
    if i != n {
        return (q[n].clone() - q[i].clone()).inv();
    }
    let mut acc = S::zero();
    for k in (0..q.len()).filter(|&k| k != i) {
        acc = acc + (q[i].clone() - q[k].clone()).inv()?;
    }
    Ok(acc)
}

/// `l^{(n)}(z, q) = g⁻¹ ∂_{q_n} g` in closed form; `n` is 1-based.
pub fn l_n_matrix<S: Scalar>(n_idx: usize, z: &S, q: &DynParams<S>) -> Result<TensorOperator<S>> {
    let n = q.n();
    if n_idx == 0 || n_idx > n {
        return Err(Error::DimensionMismatch(format!("index {n_idx} outside 1..={n}")));
    }
    let nn = n_idx - 1;
    let l = l_matrix(z, q)?;
    let own = Rat::new(n as i64 - 1, n as i64);
    let other = Rat::new(-1, n as i64);
    TensorOperator::try_from_fn(n, 1, |i, j| {
        let base = l.get(i, j).scale_rat(if j == nn { &own } else { &other });
        if i == j {
            Ok(base - log_d_derivative(q.q(), i, nn)?)
        } else {
            Ok(base)
        }
    })
}

/// `ğ(0, q) = Res_{z=0} g⁻¹(z, q)`, read off a Laurent expansion.
pub fn g_residue(q: &DynParams<Rat>) -> Result<TensorOperator<Rat>> {
    let eps = Series::point(Rat::zero(), -1, 1)?;
    g_inverse(&eps, &q.to_series(), InverseMethod::Symmetric)?.coeff(-1)
}

/// `∂_z g(z, q)` by differentiating each power `(z + q̄_j)^{ρ(i)}`.
pub fn g_z_derivative_closed<S: Scalar>(z: &S, q: &DynParams<S>) -> Result<TensorOperator<S>> {
    let n = q.n();
    let rho = RhoIndex::new(n);
    let x = shifted_bar(z, q);
    let dinv = d_diagonal(q)
        .iter()
        .map(|d| d.inv())
        .collect::<Result<Vec<_>>>()?;
    Ok(TensorOperator::from_fn(n, 1, |i, j| {
        let e = rho.rho(i + 1);
        if e == 0 {
            S::zero()
        } else {
            x[j].pow(e as u32 - 1).scale_rat(&Rat::from_int(e as i64)) * dinv[j].clone()
        }
    }))
}

/// `∂_z g(z, q)` at `z`, read off a Laurent expansion.
pub fn g_z_derivative(z: &Rat, q: &DynParams<Rat>) -> Result<TensorOperator<Rat>> {
    let zs = Series::point(z.clone(), 0, 1)?;
    g_matrix(&zs, &q.to_series())?.coeff(1)
}

/// The Ruijsenaars-Schneider Lax matrix, its gauge transform and the
/// residue `S`, with the momenta entering through `λ_j = e^{p_j}`.
#[derive(Clone, Debug)]
pub struct LaxData<S: Scalar> {
    pub l_rs: TensorOperator<S>,
    pub l_top: TensorOperator<S>,
    pub s: TensorOperator<Rat>,
    pub lambda: Vec<S>,
}

pub fn lax_build(
    eta: &Rat,
    z: &Rat,
    q: &DynParams<Rat>,
    lambda: &[Rat],
) -> Result<LaxData<Rat>> {
    if lambda.len() != q.n() {
        return Err(Error::DimensionMismatch(format!(
            "{} momenta weights for N = {}",
            lambda.len(),
            q.n()
        )));
    }
    if lambda.iter().any(|l| l.is_zero()) {
        return Err(Error::Singular("zero momentum weight".into()));
    }
    let ep = TensorOperator::diagonal(lambda);
    let ginv = g_inverse(z, q, InverseMethod::Symmetric)?;
    let g_shift = g_matrix(&(z + eta), q)?;
    let l_rs = TensorOperator::product([&ginv, &g_shift, &ep]);
    let l_top = TensorOperator::product([&g_shift, &ep, &ginv]);
    let s = TensorOperator::product([&g_matrix(eta, q)?, &ep, &g_residue(q)?]);
    Ok(LaxData {
        l_rs,
        l_top,
        s,
        lambda: lambda.to_vec(),
    })
}

/// `Σ_k build(q + step·e_k) · (E_kk on slot shift_slot)`.
///
/// This realises arguments such as `q − ħ^{(s)}`: `build` must return an
/// operator on `total` slots that acts as the identity on `shift_slot`.
pub fn shifted_sum<S: Scalar>(
    q: &DynParams<S>,
    step: &S,
    total: usize,
    shift_slot: usize,
    mut build: impl FnMut(&DynParams<S>) -> Result<TensorOperator<S>>,
) -> Result<TensorOperator<S>> {
    let n = q.n();
    let mut acc = TensorOperator::zeros(n, total);
    for k in 0..n {
        let op = build(&q.shifted(k, step)?)?;
        let proj = TensorOperator::<S>::unit(n, k, k).embed(&[shift_slot], total)?;
        acc = &acc + &op.matmul(&proj);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn q(v: &[i64]) -> DynParams<Rat> {
        DynParams::new(v.iter().map(|&x| r(x)).collect()).unwrap()
    }

    #[test]
    fn rho_and_inverse() {
        let rho = RhoIndex::new(4);
        assert_eq!((1..=4).map(|i| rho.rho(i)).collect::<Vec<_>>(), vec![0, 1, 2, 4]);
        assert_eq!(rho.inv(0), Some(1));
        assert_eq!(rho.inv(2), Some(3));
        assert_eq!(rho.inv(3), None);
        assert_eq!(rho.inv(4), Some(4));
        assert_eq!(rho.inv(-1), None);
        assert_eq!(rho.inv(5), None);
    }

    #[test]
    fn xi_n2_example() {
        let xi = xi_matrix(&r(1), &q(&[2, 0]));
        let expect = TensorOperator::from_rows(2, vec![vec![r(1), r(1)], vec![r(4), r(0)]]).unwrap();
        assert_eq!(xi, expect);
        assert_eq!(linalg::determinant(&xi).unwrap(), r(-4));
    }

    #[test]
    fn xi_n3_determinant() {
        let xi = xi_matrix(&r(1), &q(&[3, 2, 1]));
        assert_eq!(linalg::determinant(&xi).unwrap(), r(-6));
    }

    #[test]
    fn degenerate_params() {
        let e = DynParams::new(vec![r(1), r(2), r(1)]).unwrap_err();
        assert_eq!(e, Error::DegenerateParams(1, 3));
    }

    #[test]
    fn bar_sums_to_zero() {
        let b = q(&[5, -2, 7, 1]).bar();
        assert!(b.into_iter().sum::<Rat>().is_zero());
    }

    #[test]
    fn sym_functions_n2() {
        let (a, b) = (Rat::new(2, 3), Rat::new(-5, 7));
        let sf = SymFunctions::new(&[a.clone(), b.clone()]);
        assert_eq!(sf.sigma(2), r(1));
        assert_eq!(sf.sigma(1), &a + &b);
        assert_eq!(sf.sigma(0), &a * &b);
    }

    #[test]
    fn sym_functions_top_sign_n3() {
        let sf = SymFunctions::new(&[r(3), Rat::new(1, 2), r(-4)]);
        assert_eq!(sf.sigma(3), r(-1));
    }

    #[test]
    fn kernel_at_zero() {
        let g0 = g_matrix(&r(0), &q(&[1, 4, -2])).unwrap();
        let v = linalg::apply(&g0, &[r(1), r(1), r(1)]);
        assert!(v.iter().all(|x| x.is_zero()));
        assert_eq!(linalg::rank(&g0), 2);
    }

    #[test]
    fn inverse_at_zero_is_singular() {
        let p = q(&[1, 2, 3]);
        for m in [InverseMethod::Direct, InverseMethod::Symmetric, InverseMethod::ZExpansion] {
            assert!(g_inverse(&r(0), &p, m).unwrap_err().is_singular_point());
        }
    }

    #[test]
    fn inverse_methods_agree() {
        let p = DynParams::new(vec![Rat::new(1, 3), r(2), Rat::new(-7, 4), r(5)]).unwrap();
        let z = Rat::new(3, 5);
        let direct = g_inverse(&z, &p, InverseMethod::Direct).unwrap();
        assert_eq!(g_matrix(&z, &p).unwrap().matmul(&direct), TensorOperator::identity(4, 1));
        assert_eq!(g_inverse(&z, &p, InverseMethod::Symmetric).unwrap(), direct);
        assert_eq!(g_inverse(&z, &p, InverseMethod::ZExpansion).unwrap(), direct);
        assert_eq!(g_inverse_marked_form(&z, &p).unwrap(), direct);
    }

    #[test]
    fn residue_matches_closed_form() {
        // Res g⁻¹ = (−1)^{ρ(j)} σ_{ρ(j)}(q̄) / N
        let p = q(&[2, -1, 7]);
        let sf = SymFunctions::new(&p.bar());
        let rho = RhoIndex::new(3);
        let expect = TensorOperator::from_fn(3, 1, |_, j| {
            let k = rho.rho(j + 1);
            alt_sign(k, sf.sigma(k as i64) * Rat::new(1, 3))
        });
        assert_eq!(g_residue(&p).unwrap(), expect);
    }

    #[test]
    fn shifted_sum_with_constant_builder_is_identity_sum() {
        let p = q(&[1, 5]);
        let out = shifted_sum(&p, &r(1), 2, 2, |_| Ok(TensorOperator::identity(2, 2))).unwrap();
        assert_eq!(out, TensorOperator::identity(2, 2));
    }
}
