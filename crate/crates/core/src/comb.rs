//! Combinatorial primitives and the exact reciprocal-Gamma kernel.
//!
//! The kernel computes `1/Γ(x)` rather than `Γ(x)`: the closed forms only
//! ever divide by Gamma, and a pole then becomes an exact zero that kills
//! the term instead of an error. `factorial(n)` is `pochhammer(1, n)` and is
//! not a separate primitive.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::halfint::HalfInt;
use crate::pival::PiVal;
use crate::BigRational;

/// Binomial coefficient `C(n, k)`, extended by 0 outside `0 <= k <= n`.
///
/// The zero extension lets summation bounds be written uniformly.
pub fn binomial(n: u64, k: i64) -> BigRational {
    if k < 0 || (k as u64) > n {
        return BigRational::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    BigRational::from_integer(BigInt::from(acc))
}

/// Rising factorial `(x)_n = x(x+1)⋯(x+n−1)`, with `(x)_0 = 1`.
pub fn pochhammer(x: &BigRational, n: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut factor = x.clone();
    let one = BigRational::one();
    for _ in 0..n {
        if factor.is_zero() {
            return BigRational::zero();
        }
        acc *= &factor;
        factor += &one;
    }
    acc
}

/// `(x)_n` as an unreduced numerator/denominator pair:
/// `(Π_k (p + k·q), q^n)` for `x = p/q`. Skipping per-step reduction makes
/// long products of half-integers cheap; callers reduce once at the end.
pub fn pochhammer_parts(x: &BigRational, n: u64) -> (BigInt, BigInt) {
    let mut num = BigInt::one();
    let mut factor = x.numer().clone();
    let step = x.denom();
    for _ in 0..n {
        num *= &factor;
        factor += step;
    }
    (num, step.pow(n as u32))
}

/// `n!` as a rational, via `(1)_n`.
pub fn factorial(n: u64) -> BigRational {
    pochhammer(&BigRational::one(), n)
}

/// Table of `0!, 1!, ..., n!` for oracle sums that divide factorials repeatedly.
pub fn factorial_table(n: u64) -> Vec<BigInt> {
    let mut table = Vec::with_capacity(n as usize + 1);
    let mut acc = BigInt::one();
    table.push(acc.clone());
    for j in 1..=n {
        acc *= j;
        table.push(acc.clone());
    }
    table
}

/// `1/Γ(x)` for a half-integer `x`, exactly.
///
/// Nonpositive-integer arguments are Gamma poles and yield exact zero;
/// half-odd arguments yield a single term `q·π^(−1/2)` via the recurrence
/// `Γ(x+1) = xΓ(x)` anchored at `Γ(½) = √π`.
pub fn rgamma_half(x: &HalfInt) -> PiVal {
    match gamma_half(x) {
        Some(g) => g.invert().expect("gamma value is a single nonzero term"),
        None => PiVal::zero(),
    }
}

/// `Γ(x)` for a half-integer `x`, or `None` at a pole.
pub fn gamma_half(x: &HalfInt) -> Option<PiVal> {
    if let Some(m) = x.as_integer() {
        if !m.is_positive() {
            return None;
        }
        let n = (&m - 1u8).to_u64().expect("factorial argument fits in u64");
        return Some(PiVal::from_rational(factorial(n)));
    }
    // x = 1/2 + s for integer s (possibly negative); Γ(x) = q·√π.
    let s: BigInt = (x.twice() - 1) / 2;
    let q = if s.is_negative() {
        // Downward: Γ(1/2) = (x)(x+1)⋯(−1/2) · Γ(x).
        let steps = (-&s).to_u64().expect("recurrence depth fits in u64");
        pochhammer(&x.to_rational(), steps).recip()
    } else {
        // Upward: Γ(1/2 + s) = (1/2)_s · Γ(1/2).
        let steps = s.to_u64().expect("recurrence depth fits in u64");
        pochhammer(&crate::ratio(1, 2), steps)
    };
    Some(PiVal::term(q, 1))
}
