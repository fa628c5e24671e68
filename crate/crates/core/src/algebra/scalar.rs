use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::rat::Rat;
use crate::error::Result;

/// The ring contract every matrix builder is written against.
///
/// Two implementations exist: [`Rat`] for pointwise evaluation and
/// [`Series`](super::Series) for Laurent expansions (residues, classical
/// limits, derivatives). Constants produced by `zero`/`one`/`from_rat` are
/// exact in both.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: Rat) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Result<Self>;

    /// Pivot preference for elimination: `None` for (known) zero, otherwise
    /// smaller is better. Series report their valuation so elimination
    /// pivots on the most singular entry and loses no precision.
    fn pivot_weight(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(0)
        }
    }

    fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_int(n))
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.inv()?)
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }

    /// `self^exp` allowing negative exponents.
    fn powi(&self, exp: i32) -> Result<Self> {
        if exp < 0 {
            Ok(self.inv()?.pow(exp.unsigned_abs()))
        } else {
            Ok(self.pow(exp as u32))
        }
    }

    fn scale_rat(&self, r: &Rat) -> Self {
        self.clone() * Self::from_rat(r.clone())
    }
}

impl Scalar for Rat {
    fn zero() -> Self {
        Rat::zero()
    }

    fn one() -> Self {
        Rat::one()
    }

    fn from_rat(r: Rat) -> Self {
        r
    }

    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }

    fn inv(&self) -> Result<Self> {
        Rat::inv(self)
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Rat::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}
