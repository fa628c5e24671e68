//! Arbitrary precision rationals.
//!
//! `Rat` wraps `num_rational::BigRational`, which keeps every value reduced
//! with a positive denominator. The wrapper fixes the textual form used in
//! JSON output (`"p/q"`, or `"p"` for integers) and provides the bounded
//! random sampling the verifier relies on.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::Singular("rational with zero denominator".into()));
        }
        Ok(Rat(BigRational::new(numer, denom)))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.0.is_zero() {
            return Err(Error::Singular("inverse of zero".into()));
        }
        Ok(Rat(self.0.recip()))
    }

    pub fn checked_div(&self, other: &Rat) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, exp: i32) -> Result<Self> {
        if exp < 0 {
            return self.inv()?.powi(-exp);
        }
        let mut acc = Rat::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        Ok(acc)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Uniform sample `p/q` with `p ∈ [-bound, bound]`, `q ∈ [1, bound]`.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        let bound = bound.max(1);
        let p = rng.random_range(-bound..=bound);
        let q = rng.random_range(1..=bound);
        Rat::new(p, q)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::ParseRational(s.to_string());
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let numer: BigInt = n.parse().map_err(|_| bad())?;
        let denom: BigInt = d.parse().map_err(|_| bad())?;
        if denom.is_zero() {
            return Err(bad());
        }
        Ok(Rat(BigRational::new(numer, denom)))
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl From<BigRational> for Rat {
    fn from(r: BigRational) -> Self {
        Rat(r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0 $op rhs.0)
            }
        }
        impl<'a> $tr<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat(self.0 $op &rhs.0)
            }
        }
        impl<'a, 'b> $tr<&'b Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'b Rat) -> Rat {
                Rat(&self.0 $op &rhs.0)
            }
        }
        impl<'a> $tr<Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(&self.0 $op rhs.0)
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);
forward_binop!(Mul, mul, *);

impl AddAssign for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        self.0 += rhs.0;
    }
}

impl<'a> AddAssign<&'a Rat> for Rat {
    fn add_assign(&mut self, rhs: &'a Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign for Rat {
    fn sub_assign(&mut self, rhs: Rat) {
        self.0 -= rhs.0;
    }
}

impl MulAssign for Rat {
    fn mul_assign(&mut self, rhs: Rat) {
        self.0 *= rhs.0;
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |a, b| a + b)
    }
}

impl Product for Rat {
    fn product<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::one(), |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_reduced() {
        assert_eq!(Rat::new(6, -4).to_string(), "-3/2");
        assert_eq!(Rat::new(10, 5).to_string(), "2");
        assert_eq!(Rat::zero().to_string(), "0");
    }

    #[test]
    fn parse_forms() {
        assert_eq!("3/4".parse::<Rat>().unwrap(), Rat::new(3, 4));
        assert_eq!("-6".parse::<Rat>().unwrap(), Rat::from_int(-6));
        assert_eq!(" 2/-4 ".parse::<Rat>().unwrap(), Rat::new(-1, 2));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("abc".parse::<Rat>().is_err());
    }

    #[test]
    fn inverse_of_zero_is_singular() {
        assert!(Rat::zero().inv().unwrap_err().is_singular_point());
    }

    #[test]
    fn powi_negative() {
        assert_eq!(Rat::new(2, 3).powi(-2).unwrap(), Rat::new(9, 4));
        assert_eq!(Rat::new(2, 3).powi(0).unwrap(), Rat::one());
    }
}
