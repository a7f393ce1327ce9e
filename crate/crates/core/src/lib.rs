//! Exact-arithmetic engine for terminating hypergeometric sums and the
//! generalized Knuth/Reed-Dawson and Riordan binomial identities.
//!
//! Everything that can be computed exactly is: the universal scalar is an
//! arbitrary-precision rational, and Gamma-function values at half-integer
//! arguments live in a small algebra of rational multiples of powers of √π
//! ([`PiVal`]). Floating point appears only in the generic-parameter path of
//! the master summation formulas, where it is always checked against an
//! exact series oracle.

pub mod comb;
pub mod halfint;
pub mod hypergeom;
pub mod identities;
pub mod lgamma;
pub mod pival;
pub mod verify;

pub use halfint::HalfInt;
pub use pival::PiVal;

use num_bigint::BigInt;

/// Arbitrary-precision rational, always stored reduced with positive denominator.
pub type BigRational = num_rational::Ratio<BigInt>;

/// Shorthand for an integer-valued rational.
pub fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `p/q` as a rational. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
