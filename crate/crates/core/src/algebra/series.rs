//! Truncated Laurent series in one formal variable over [`Rat`].
//!
//! A series carries an absolute truncation order: coefficients of degree
//! `<= order` are known exactly, everything above is unknown. Products and
//! inverses propagate the order by the usual valuation rules, so asking for
//! a coefficient the inputs could not determine is an error, never a silent
//! zero. A series without an order is exact (a Laurent polynomial); the ring
//! constants `zero`, `one` and `from_rat` are of that kind.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::rat::Rat;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Default symbol for the expansion variable.
pub const EPSILON: &str = "ε";

#[derive(Clone)]
pub struct Series {
    var: Option<Arc<str>>,
    /// Degree of `coeffs[0]`. After normalization this is the valuation.
    min: i64,
    coeffs: Vec<Rat>,
    /// Highest known degree; `None` means exact.
    order: Option<i64>,
}

impl Series {
    /// `value + ε`, known through degree `order`.
    ///
    /// `min` is the lower end of the working window and must not exceed
    /// `order`; degrees below the stored terms are exactly zero.
    pub fn point(value: Rat, min: i64, order: i64) -> Result<Series> {
        Series::point_in(EPSILON, value, min, order)
    }

    pub fn point_in(var: &str, value: Rat, min: i64, order: i64) -> Result<Series> {
        if order < min || order < 1 {
            return Err(Error::WindowTooNarrow { requested: 1, order });
        }
        let mut s = Series {
            var: Some(Arc::from(var)),
            min: 0,
            coeffs: vec![value, Rat::one()],
            order: Some(order),
        };
        s.normalize();
        Ok(s)
    }

    /// The exact constant `c`.
    pub fn constant(c: Rat) -> Series {
        let mut s = Series {
            var: None,
            min: 0,
            coeffs: vec![c],
            order: None,
        };
        s.normalize();
        s
    }

    /// Build from explicit coefficients starting at degree `min`.
    pub fn from_coeffs(var: &str, min: i64, coeffs: Vec<Rat>, order: Option<i64>) -> Series {
        let mut s = Series {
            var: Some(Arc::from(var)),
            min,
            coeffs,
            order,
        };
        s.normalize();
        s
    }

    pub fn var(&self) -> Option<&str> {
        self.var.as_deref()
    }

    pub fn order(&self) -> Option<i64> {
        self.order
    }

    /// Lowest degree with a nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.min)
        }
    }

    /// Exact coefficient of `ε^k`.
    pub fn coeff(&self, k: i64) -> Result<Rat> {
        if let Some(order) = self.order {
            if k > order {
                return Err(Error::WindowTooNarrow { requested: k, order });
            }
        }
        if k < self.min {
            return Ok(Rat::zero());
        }
        let idx = (k - self.min) as usize;
        Ok(self.coeffs.get(idx).cloned().unwrap_or_else(Rat::zero))
    }

    /// Coefficients on degrees `lo..=hi`, padded with zeros.
    pub fn coeffs_in(&self, lo: i64, hi: i64) -> Result<Vec<Rat>> {
        (lo..=hi).map(|k| self.coeff(k)).collect()
    }

    fn normalize(&mut self) {
        if let Some(order) = self.order {
            let keep = (order - self.min + 1).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min += lead as i64;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.min = 0;
        }
    }

    fn merged_var(&self, other: &Series) -> Option<Arc<str>> {
        match (&self.var, &other.var) {
            (Some(a), Some(b)) => {
                assert!(
                    a == b,
                    "{}",
                    Error::VariableMismatch(a.to_string(), b.to_string())
                );
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }

    /// Lowest degree that may be nonzero, counting the unknown tail.
    fn effective_valuation(&self) -> Option<i64> {
        match self.valuation() {
            Some(v) => Some(v),
            None => self.order.map(|o| o + 1),
        }
    }

    fn combine_linear(&self, other: &Series, sign: i64) -> Series {
        let var = self.merged_var(other);
        let order = match (self.order, other.order) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if self.coeffs.is_empty() && other.coeffs.is_empty() {
            return Series { var, min: 0, coeffs: vec![], order };
        }
        let lo = match (self.valuation(), other.valuation()) {
            (Some(a), Some(b)) => a.min(b),
            (a, b) => a.or(b).unwrap(),
        };
        let hi_a = self.min + self.coeffs.len() as i64 - 1;
        let hi_b = other.min + other.coeffs.len() as i64 - 1;
        let mut hi = if self.coeffs.is_empty() {
            hi_b
        } else if other.coeffs.is_empty() {
            hi_a
        } else {
            hi_a.max(hi_b)
        };
        if let Some(o) = order {
            hi = hi.min(o);
        }
        let mut coeffs = Vec::with_capacity((hi - lo + 1).max(0) as usize);
        for k in lo..=hi {
            let a = self.raw(k);
            let b = other.raw(k);
            coeffs.push(if sign > 0 { a + b } else { a - b });
        }
        let mut s = Series { var, min: lo, coeffs, order };
        s.normalize();
        s
    }

    fn raw(&self, k: i64) -> Rat {
        if k < self.min {
            return Rat::zero();
        }
        self.coeffs
            .get((k - self.min) as usize)
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    fn multiply(&self, other: &Series) -> Series {
        let var = self.merged_var(other);
        let order = match (self.order, other.order) {
            (None, None) => None,
            (Some(oa), None) => other.effective_valuation().map(|vb| oa + vb),
            (None, Some(ob)) => self.effective_valuation().map(|va| ob + va),
            (Some(oa), Some(ob)) => {
                let va = self.effective_valuation().unwrap();
                let vb = other.effective_valuation().unwrap();
                Some((va + ob).min(oa + vb))
            }
        };
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            // An exact zero factor makes the product exactly zero.
            let exact_zero = (self.coeffs.is_empty() && self.order.is_none())
                || (other.coeffs.is_empty() && other.order.is_none());
            return Series {
                var,
                min: 0,
                coeffs: vec![],
                order: if exact_zero { None } else { order },
            };
        }
        let lo = self.min + other.min;
        let mut len = self.coeffs.len() + other.coeffs.len() - 1;
        if let Some(o) = order {
            len = len.min((o - lo + 1).max(0) as usize);
        }
        let mut coeffs = vec![Rat::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        let mut s = Series { var, min: lo, coeffs, order };
        s.normalize();
        s
    }

    /// Multiplicative inverse. Requires a nonzero known term; an exact
    /// series with more than one term has no finite representation.
    pub fn invert(&self) -> Result<Series> {
        let v = self
            .valuation()
            .ok_or_else(|| Error::Singular("inverse of a series with no nonzero known term".into()))?;
        let order = match self.order {
            Some(o) => Some(o),
            None if self.coeffs.len() == 1 => None,
            None => return Err(Error::UnboundedInverse),
        };
        let lead_inv = self.coeffs[0].inv()?;
        let Some(order) = order else {
            return Ok(Series {
                var: self.var.clone(),
                min: -v,
                coeffs: vec![lead_inv],
                order: None,
            });
        };
        // Relative precision: number of known terms past the leading one.
        let rel = (order - v) as usize;
        let mut w: Vec<Rat> = Vec::with_capacity(rel + 1);
        w.push(lead_inv.clone());
        for k in 1..=rel {
            let mut acc = Rat::zero();
            for i in 1..=k {
                let u = self.raw(v + i as i64);
                if !u.is_zero() {
                    acc += &u * &w[k - i];
                }
            }
            w.push(-(acc * &lead_inv));
        }
        let mut s = Series {
            var: self.var.clone(),
            min: -v,
            coeffs: w,
            order: Some(-v + rel as i64),
        };
        s.normalize();
        Ok(s)
    }

    /// Multiply by `ε^k`.
    pub fn shift(&self, k: i64) -> Series {
        let mut s = self.clone();
        if !s.coeffs.is_empty() {
            s.min += k;
        }
        s.order = s.order.map(|o| o + k);
        s
    }
}

impl Add for Series {
    type Output = Series;
    fn add(self, rhs: Series) -> Series {
        self.combine_linear(&rhs, 1)
    }
}

impl Sub for Series {
    type Output = Series;
    fn sub(self, rhs: Series) -> Series {
        self.combine_linear(&rhs, -1)
    }
}

impl Mul for Series {
    type Output = Series;
    fn mul(self, rhs: Series) -> Series {
        self.multiply(&rhs)
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(mut self) -> Series {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

/// Equality on the common known window: two series are equal when every
/// coefficient both of them determine agrees.
impl PartialEq for Series {
    fn eq(&self, other: &Series) -> bool {
        if let (Some(a), Some(b)) = (&self.var, &other.var) {
            if a != b {
                return false;
            }
        }
        (self.clone() - other.clone()).coeffs.is_empty()
    }
}

impl Scalar for Series {
    fn zero() -> Self {
        Series::constant(Rat::zero())
    }

    fn one() -> Self {
        Series::constant(Rat::one())
    }

    fn from_rat(r: Rat) -> Self {
        Series::constant(r)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn inv(&self) -> Result<Self> {
        self.invert()
    }

    fn pivot_weight(&self) -> Option<i64> {
        self.valuation()
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = self.var.as_deref().unwrap_or(EPSILON);
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let d = self.min + i as i64;
            match d {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c}){var}")?,
                _ => write!(f, "({c}){var}^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(o) = self.order {
            write!(f, " + O({var}^{})", o + 1)?;
        }
        Ok(())
    }
}
