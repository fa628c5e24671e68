//! Dense operators on `(C^N)^{⊗k}`.
//!
//! A row or column index is read as `k` base-`N` digits with slot 1 the most
//! significant one, so for `N = 2, k = 2` the basis order is
//! `11, 12, 21, 22`. All indices in this module are 0-based except slot
//! numbers, which are 1-based to match the usual `R₁₂`, `R₁₃` notation.

use std::ops::{Add, Mul, Neg, Sub};

use super::rat::Rat;
use super::scalar::Scalar;
use super::series::Series;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct TensorOperator<S> {
    n: usize,
    slots: usize,
    dim: usize,
    data: Vec<S>,
}

impl<S: Scalar> TensorOperator<S> {
    pub fn zeros(n: usize, slots: usize) -> Self {
        assert!(n > 0 && slots > 0, "empty tensor space");
        let dim = n.pow(slots as u32);
        TensorOperator {
            n,
            slots,
            dim,
            data: vec![S::zero(); dim * dim],
        }
    }

    pub fn identity(n: usize, slots: usize) -> Self {
        let mut m = Self::zeros(n, slots);
        for i in 0..m.dim {
            m.data[i * m.dim + i] = S::one();
        }
        m
    }

    pub fn from_fn(n: usize, slots: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut m = Self::zeros(n, slots);
        for r in 0..m.dim {
            for c in 0..m.dim {
                m.data[r * m.dim + c] = f(r, c);
            }
        }
        m
    }

    pub fn try_from_fn(
        n: usize,
        slots: usize,
        mut f: impl FnMut(usize, usize) -> Result<S>,
    ) -> Result<Self> {
        let mut m = Self::zeros(n, slots);
        for r in 0..m.dim {
            for c in 0..m.dim {
                m.data[r * m.dim + c] = f(r, c)?;
            }
        }
        Ok(m)
    }

    /// Build from explicit rows; the row count must be a power of `n`.
    pub fn from_rows(n: usize, rows: Vec<Vec<S>>) -> Result<Self> {
        let dim = rows.len();
        let mut slots = 0;
        let mut p = 1;
        while p < dim {
            p *= n;
            slots += 1;
        }
        if p != dim || dim == 0 || (n == 1 && dim != 1) {
            return Err(Error::DimensionMismatch(format!(
                "{dim} rows is not a power of N = {n}"
            )));
        }
        let slots = slots.max(1);
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a {dim}x{dim} matrix",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(TensorOperator { n, slots, dim, data })
    }

    /// The matrix unit `E_ij` on a single slot (0-based `i`, `j`).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, 1);
        m.set(i, j, S::one());
        m
    }

    pub fn diagonal(values: &[S]) -> Self {
        let mut m = Self::zeros(values.len(), 1);
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.dim + c] = v;
    }

    /// Add `v` to entry `(r, c)`.
    pub fn add_to(&mut self, r: usize, c: usize, v: S) {
        let idx = r * self.dim + c;
        let old = std::mem::replace(&mut self.data[idx], S::zero());
        self.data[idx] = old + v;
    }

    /// Entry of a two-slot operator in `E_ab ⊗ E_cd` coordinates.
    pub fn get4(&self, a: usize, b: usize, c: usize, d: usize) -> &S {
        debug_assert_eq!(self.slots, 2);
        self.get(a * self.n + c, b * self.n + d)
    }

    pub fn add4(&mut self, a: usize, b: usize, c: usize, d: usize, v: S) {
        debug_assert_eq!(self.slots, 2);
        self.add_to(a * self.n + c, b * self.n + d, v);
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> {
        self.data.chunks(self.dim)
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn check_same_shape(&self, other: &Self, what: &str) {
        assert!(
            self.n == other.n && self.slots == other.slots,
            "{what}: shape (N={}, k={}) vs (N={}, k={})",
            self.n,
            self.slots,
            other.n,
            other.slots
        );
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn map<T: Scalar>(&self, mut f: impl FnMut(&S) -> T) -> TensorOperator<T> {
        TensorOperator {
            n: self.n,
            slots: self.slots,
            dim: self.dim,
            data: self.data.iter().map(&mut f).collect(),
        }
    }

    pub fn try_map<T: Scalar>(
        &self,
        mut f: impl FnMut(&S) -> Result<T>,
    ) -> Result<TensorOperator<T>> {
        Ok(TensorOperator {
            n: self.n,
            slots: self.slots,
            dim: self.dim,
            data: self.data.iter().map(&mut f).collect::<Result<_>>()?,
        })
    }

    pub fn matmul(&self, other: &Self) -> Self {
        self.check_same_shape(other, "matmul");
        let d = self.dim;
        let mut out = vec![S::zero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = &self.data[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &other.data[k * d + j];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * d + j;
                    let old = std::mem::replace(&mut out[idx], S::zero());
                    out[idx] = old + a.clone() * b.clone();
                }
            }
        }
        TensorOperator {
            n: self.n,
            slots: self.slots,
            dim: d,
            data: out,
        }
    }

    /// Product of a sequence of operators, left to right.
    pub fn product<'a>(ops: impl IntoIterator<Item = &'a Self>) -> Self {
        let mut it = ops.into_iter();
        let first = it.next().expect("empty product").clone();
        it.fold(first, |acc, m| acc.matmul(m))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, self.slots, |r, c| self.get(c, r).clone())
    }

    pub fn trace(&self) -> S {
        (0..self.dim).fold(S::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// `self ⊗ other`; slots of `self` come first.
    pub fn kron(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "kron of different local dimensions");
        let od = other.dim;
        let mut m = Self::zeros(self.n, self.slots + other.slots);
        for r1 in 0..self.dim {
            for c1 in 0..self.dim {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..od {
                    for c2 in 0..od {
                        let b = other.get(r2, c2);
                        if !b.is_zero() {
                            m.set(r1 * od + r2, c1 * od + c2, a.clone() * b.clone());
                        }
                    }
                }
            }
        }
        m
    }

    fn digits(&self, mut idx: usize, slots: usize) -> Vec<usize> {
        let mut d = vec![0; slots];
        for s in (0..slots).rev() {
            d[s] = idx % self.n;
            idx /= self.n;
        }
        d
    }

    fn undigits(n: usize, d: &[usize]) -> usize {
        d.iter().fold(0, |acc, &x| acc * n + x)
    }

    /// Place `self` on the listed 1-based slots of a `total`-slot space,
    /// acting as the identity on the others. `targets[t]` receives slot
    /// `t + 1` of `self`, so `embed(R, &[2, 1], k)` realises `R₂₁`.
    pub fn embed(&self, targets: &[usize], total: usize) -> Result<Self> {
        if targets.len() != self.slots {
            return Err(Error::InvalidSlots(format!(
                "operator has {} slots but {} targets were given",
                self.slots,
                targets.len()
            )));
        }
        let mut seen = vec![false; total + 1];
        for &t in targets {
            if t == 0 || t > total {
                return Err(Error::InvalidSlots(format!("slot {t} outside 1..={total}")));
            }
            if seen[t] {
                return Err(Error::InvalidSlots(format!("slot {t} listed twice")));
            }
            seen[t] = true;
        }
        let mut out = Self::zeros(self.n, total);
        let full = out.dim;
        for r in 0..full {
            let rd = out.digits(r, total);
            let sub_r = Self::undigits(
                self.n,
                &targets.iter().map(|&t| rd[t - 1]).collect::<Vec<_>>(),
            );
            let mut cd = rd.clone();
            for sub_c in 0..self.dim {
                let v = self.get(sub_r, sub_c);
                if v.is_zero() {
                    continue;
                }
                let sd = self.digits(sub_c, self.slots);
                for (t, &slot) in targets.iter().enumerate() {
                    cd[slot - 1] = sd[t];
                }
                out.set(r, Self::undigits(self.n, &cd), v.clone());
            }
        }
        Ok(out)
    }

    /// The operator swapping the basis indices of slots `a` and `b`.
    pub fn permutation(n: usize, a: usize, b: usize, total: usize) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidSlots(format!("permutation of slot {a} with itself")));
        }
        if a == 0 || b == 0 || a > total || b > total {
            return Err(Error::InvalidSlots(format!(
                "slots ({a}, {b}) outside 1..={total}"
            )));
        }
        let mut out = Self::zeros(n, total);
        for r in 0..out.dim {
            let mut d = out.digits(r, total);
            d.swap(a - 1, b - 1);
            let c = Self::undigits(n, &d);
            out.set(r, c, S::one());
        }
        Ok(out)
    }

    /// `P₁₂ · self · P₁₂` for a two-slot operator, i.e. `R₂₁` from `R₁₂`.
    pub fn swap_slots(&self) -> Self {
        assert_eq!(self.slots, 2, "swap_slots needs a two-slot operator");
        let n = self.n;
        Self::from_fn(n, 2, |r, c| {
            let (r1, r2) = (r / n, r % n);
            let (c1, c2) = (c / n, c % n);
            self.get(r2 * n + r1, c2 * n + c1).clone()
        })
    }

    /// Trace over one 1-based slot.
    pub fn partial_trace(&self, slot: usize) -> Result<Self> {
        if self.slots < 2 {
            return Err(Error::InvalidSlots("partial trace needs at least two slots".into()));
        }
        if slot == 0 || slot > self.slots {
            return Err(Error::InvalidSlots(format!(
                "slot {slot} outside 1..={}",
                self.slots
            )));
        }
        let k = self.slots;
        let mut out = Self::zeros(self.n, k - 1);
        for r in 0..out.dim {
            let rd = out.digits(r, k - 1);
            for c in 0..out.dim {
                let cd = out.digits(c, k - 1);
                let mut acc = S::zero();
                for m in 0..self.n {
                    let mut fr = rd.clone();
                    fr.insert(slot - 1, m);
                    let mut fc = cd.clone();
                    fc.insert(slot - 1, m);
                    let v = self.get(Self::undigits(self.n, &fr), Self::undigits(self.n, &fc));
                    if !v.is_zero() {
                        acc = acc + v.clone();
                    }
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }
}

impl TensorOperator<Rat> {
    /// Largest entrywise `|self − other|` with its position, or `None` when
    /// the two operators are equal.
    pub fn max_discrepancy(&self, other: &Self) -> Option<(usize, usize, Rat)> {
        self.check_same_shape(other, "comparison");
        let mut best: Option<(usize, usize, Rat)> = None;
        for r in 0..self.dim {
            for c in 0..self.dim {
                let d = (self.get(r, c) - other.get(r, c)).abs();
                if d.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, _, b)| d > *b) {
                    best = Some((r, c, d));
                }
            }
        }
        best
    }
}

impl TensorOperator<Series> {
    /// The operator formed by the coefficient of `ε^k` of every entry.
    pub fn coeff(&self, k: i64) -> Result<TensorOperator<Rat>> {
        self.try_map(|s| s.coeff(k))
    }
}

impl<S: Scalar> std::fmt::Debug for TensorOperator<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "TensorOperator(N={}, k={})", self.n, self.slots)?;
        for row in self.rows() {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl<S: Scalar> Add for &TensorOperator<S> {
    type Output = TensorOperator<S>;
    fn add(self, rhs: &TensorOperator<S>) -> TensorOperator<S> {
        self.check_same_shape(rhs, "add");
        TensorOperator {
            n: self.n,
            slots: self.slots,
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<S: Scalar> Sub for &TensorOperator<S> {
    type Output = TensorOperator<S>;
    fn sub(self, rhs: &TensorOperator<S>) -> TensorOperator<S> {
        self.check_same_shape(rhs, "sub");
        TensorOperator {
            n: self.n,
            slots: self.slots,
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<S: Scalar> Mul for &TensorOperator<S> {
    type Output = TensorOperator<S>;
    fn mul(self, rhs: &TensorOperator<S>) -> TensorOperator<S> {
        self.matmul(rhs)
    }
}

impl<S: Scalar> Neg for &TensorOperator<S> {
    type Output = TensorOperator<S>;
    fn neg(self) -> TensorOperator<S> {
        self.map(|x| -x.clone())
    }
}

impl<S: Scalar> Add for TensorOperator<S> {
    type Output = TensorOperator<S>;
    fn add(self, rhs: TensorOperator<S>) -> TensorOperator<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for TensorOperator<S> {
    type Output = TensorOperator<S>;
    fn sub(self, rhs: TensorOperator<S>) -> TensorOperator<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Mul for TensorOperator<S> {
    type Output = TensorOperator<S>;
    fn mul(self, rhs: TensorOperator<S>) -> TensorOperator<S> {
        self.matmul(&rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn permutation_layout_n2() {
        let p = TensorOperator::<Rat>::permutation(2, 1, 2, 2).unwrap();
        let expect = TensorOperator::from_rows(
            2,
            vec![
                vec![r(1), r(0), r(0), r(0)],
                vec![r(0), r(0), r(1), r(0)],
                vec![r(0), r(1), r(0), r(0)],
                vec![r(0), r(0), r(0), r(1)],
            ],
        )
        .unwrap();
        assert_eq!(p, expect);
        assert_eq!(p.matmul(&p), TensorOperator::identity(2, 2));
    }

    #[test]
    fn permutation_swaps_basis_vectors() {
        let n = 3;
        let p = TensorOperator::<Rat>::permutation(n, 1, 2, 2).unwrap();
        for v in 0..n {
            for w in 0..n {
                // column v⊗w is sent to w⊗v
                for row in 0..n * n {
                    let expect = if row == w * n + v { r(1) } else { r(0) };
                    assert_eq!(*p.get(row, v * n + w), expect);
                }
            }
        }
    }

    #[test]
    fn embedded_permutation_squares_to_one() {
        let p = TensorOperator::<Rat>::permutation(2, 1, 2, 2).unwrap();
        let p13 = p.embed(&[1, 3], 3).unwrap();
        assert_eq!(p13.matmul(&p13), TensorOperator::identity(2, 3));
        assert_eq!(p13, TensorOperator::permutation(2, 1, 3, 3).unwrap());
    }

    #[test]
    fn embed_rejects_bad_slots() {
        let p = TensorOperator::<Rat>::permutation(2, 1, 2, 2).unwrap();
        assert!(matches!(p.embed(&[1, 1], 3), Err(Error::InvalidSlots(_))));
        assert!(matches!(p.embed(&[1, 4], 3), Err(Error::InvalidSlots(_))));
        assert!(matches!(p.embed(&[1], 3), Err(Error::InvalidSlots(_))));
    }

    #[test]
    fn partial_trace_of_permutation_is_identity() {
        let p = TensorOperator::<Rat>::permutation(3, 1, 2, 2).unwrap();
        assert_eq!(p.partial_trace(2).unwrap(), TensorOperator::identity(3, 1));
        assert_eq!(p.partial_trace(1).unwrap(), TensorOperator::identity(3, 1));
    }

    #[test]
    fn partial_trace_of_product() {
        let a = TensorOperator::from_fn(2, 1, |i, j| r((3 * i + j) as i64 + 1));
        let b = TensorOperator::from_fn(2, 1, |i, j| r(i as i64 - 2 * j as i64 + 5));
        let ab = a.kron(&b);
        assert_eq!(ab.partial_trace(2).unwrap(), a.scale(&b.trace()));
        assert_eq!(ab.partial_trace(1).unwrap(), b.scale(&a.trace()));
    }

    #[test]
    fn swap_slots_is_permutation_conjugation() {
        let n = 2;
        let m = TensorOperator::from_fn(n, 2, |i, j| r((i * 7 + j * 3) as i64 % 5));
        let p = TensorOperator::<Rat>::permutation(n, 1, 2, 2).unwrap();
        assert_eq!(m.swap_slots(), p.matmul(&m).matmul(&p));
        assert_eq!(m.embed(&[2, 1], 2).unwrap(), m.swap_slots());
    }

    #[test]
    fn get4_matches_kron_layout() {
        let e12 = TensorOperator::<Rat>::unit(3, 0, 1);
        let e21 = TensorOperator::<Rat>::unit(3, 1, 0);
        let m = e12.kron(&e21);
        assert_eq!(*m.get4(0, 1, 1, 0), r(1));
        assert_eq!(m.entries().iter().filter(|x| !x.is_zero()).count(), 1);
    }
}
