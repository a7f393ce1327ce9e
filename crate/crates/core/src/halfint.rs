//! Integers and half-odd-integers, stored as their doubled value.
//!
//! This is the argument domain of the exact reciprocal-Gamma kernel: storing
//! `2x` instead of `x` makes pole detection a parity-plus-sign check and
//! avoids rational normalization entirely.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::BigRational;

/// A number of the form `k/2` with `k` an arbitrary-precision integer.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    twice: BigInt,
}

impl HalfInt {
    /// Builds `twice/2`.
    pub fn from_twice(twice: impl Into<BigInt>) -> Self {
        HalfInt { twice: twice.into() }
    }

    /// Builds the integer `n`.
    pub fn from_int(n: impl Into<BigInt>) -> Self {
        HalfInt { twice: n.into() * 2 }
    }

    /// One half.
    pub fn half() -> Self {
        HalfInt { twice: BigInt::one() }
    }

    pub fn twice(&self) -> &BigInt {
        &self.twice
    }

    pub fn is_integer(&self) -> bool {
        (&self.twice % 2u8).is_zero()
    }

    pub fn is_half_odd(&self) -> bool {
        !self.is_integer()
    }

    /// The integer value, if this is an integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| &self.twice / 2)
    }

    /// True iff this is an integer `<= 0`, i.e. a pole of Gamma.
    pub fn is_gamma_pole(&self) -> bool {
        self.is_integer() && !self.twice.is_positive()
    }

    /// Exact conversion to a rational.
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.twice.clone(), BigInt::from(2))
    }

    /// Exact conversion from a rational with denominator 1 or 2.
    pub fn try_from_rational(r: &BigRational) -> Option<Self> {
        let twice = r * BigRational::from_integer(BigInt::from(2));
        twice
            .is_integer()
            .then(|| HalfInt::from_twice(twice.to_integer()))
    }

    pub fn to_f64(&self) -> f64 {
        bigint_to_f64(&self.twice) / 2.0
    }
}

pub(crate) fn bigint_to_f64(n: &BigInt) -> f64 {
    // Exact for the magnitudes used here; falls back to string parsing
    // rather than silently truncating huge values.
    use num_traits::ToPrimitive;
    n.to_f64().unwrap_or(f64::NAN)
}

impl Add for &HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: &HalfInt) -> HalfInt {
        HalfInt::from_twice(&self.twice + &rhs.twice)
    }
}

impl Sub for &HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: &HalfInt) -> HalfInt {
        HalfInt::from_twice(&self.twice - &rhs.twice)
    }
}

impl Neg for &HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-&self.twice)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", &self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_and_poles() {
        assert!(HalfInt::from_int(3).is_integer());
        assert!(HalfInt::from_twice(5).is_half_odd());
        assert!(HalfInt::from_int(0).is_gamma_pole());
        assert!(HalfInt::from_int(-4).is_gamma_pole());
        assert!(!HalfInt::from_int(1).is_gamma_pole());
        assert!(!HalfInt::from_twice(-1).is_gamma_pole());
    }

    #[test]
    fn rational_round_trip_is_exact() {
        for t in -10i64..=10 {
            let h = HalfInt::from_twice(t);
            let r = h.to_rational();
            assert_eq!(HalfInt::try_from_rational(&r), Some(h));
        }
        assert_eq!(HalfInt::try_from_rational(&crate::ratio(1, 3)), None);
    }
}
