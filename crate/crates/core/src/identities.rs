//! The combinatorial layer: the brute-force oracle sum, its reduction to a
//! terminating ₂F₁, the generalized closed forms for arbitrary shift `i`,
//! and the golden table of small-shift corollaries.
//!
//! The oracle [`knuth_lhs`] is authoritative: every closed form in this
//! crate is checked against it, so a typo in a tabulated constant surfaces
//! as a flagged mismatch instead of propagating silently.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::comb::{factorial_table, pochhammer, rgamma_half};
use crate::halfint::HalfInt;
use crate::hypergeom::SeriesSpec;
use crate::pival::PiVal;
use crate::{big, ratio, BigRational};

/// Which summation bound a closed form targets: `2ν` or `2ν+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Even, Parity::Odd];
}

#[derive(Debug, Error, PartialEq)]
pub enum IdentityError {
    #[error("no tabulated corollary for shift i = {0}; use the general closed form")]
    UnsupportedShift(u64),
    #[error("internal algebra error: {0}")]
    InternalAlgebra(String),
}

/// Brute-force oracle: `Σ_{k=0}^{n} (−1)^k C(n+i, k+i) 2^{−k} C(2k, k)`,
/// summed term by term with no closed form anywhere.
pub fn knuth_lhs(n: u64, i: u64) -> BigRational {
    let fact = factorial_table((n + i).max(2 * n));
    let choose = |top: u64, bot: u64| -> BigInt {
        &fact[top as usize] / (&fact[bot as usize] * &fact[(top - bot) as usize])
    };
    // Accumulate 2^n · Σ over the common denominator 2^n: one reduction at
    // the end instead of one gcd per term.
    let mut sum = BigInt::from(0);
    for k in 0..=n {
        let term = (choose(n + i, k + i) * choose(2 * k, k)) << (n - k);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    BigRational::new(sum, BigInt::one() << n)
}

/// Rewrites the oracle sum as `prefactor · ₂F₁(−n, ½; 1+i; 2)`.
///
/// The Gamma-ratio prefactor `Γ(n+1+i)/(Γ(1+i)Γ(n+1))` reduces to the
/// binomial `C(n+i, i)`.
pub fn reduce_to_2f1(n: u64, i: u64) -> (BigRational, SeriesSpec) {
    let prefactor = crate::comb::binomial(n + i, i as i64);
    let spec = SeriesSpec::new(
        -(n as i64),
        ratio(1, 2),
        big(1 + i as i64),
        big(2),
    )
    .expect("lower parameter 1+i is positive");
    (prefactor, spec)
}

/// The generalized closed form for the oracle sum, any shift `i >= 0`.
///
/// Evaluated entirely in the √π algebra: π enters as `π^(2/2)`, each `1/Γ²`
/// through the reciprocal-Gamma kernel squared. Terms whose Gamma argument
/// is a nonpositive integer vanish exactly; in particular the whole sum
/// collapses to 0 for the odd form at `i = 0`.
pub fn theorem_rhs(nu: u64, i: u64, parity: Parity) -> Result<BigRational, IdentityError> {
    // Common factor 2^{2i} i!/(2i)!.
    let fact = factorial_table(2 * i);
    let common = BigRational::new(
        BigInt::from(2).pow(2 * i as u32) * &fact[i as usize],
        fact[2 * i as usize].clone(),
    );

    let (lead, poch_base) = match parity {
        Parity::Even => (PiVal::pi(), big(2 * nu as i64 + 1)),
        Parity::Odd => (PiVal::pi().scale(&big(2)), big(2 * nu as i64 + 2)),
    };
    let prefactor = lead.scale(&(pochhammer(&poch_base, i) * common));

    let fact_small = factorial_table(i + 1);
    let mut sum = PiVal::zero();
    for r in 0..=i {
        let half_gap = ratio((i - r) as i64, 2); // (i−r)/2
        let (gamma_arg, num_base, den_base, den_fact) = match parity {
            Parity::Even => (
                ratio(1, 2) - &half_gap,
                ratio(1, 2) + &half_gap,
                big(1) + &half_gap,
                i - r,
            ),
            Parity::Odd => (
                -&half_gap,
                big(1) + &half_gap,
                ratio(3, 2) + &half_gap,
                i - r + 1,
            ),
        };
        let rg = rgamma_half(&HalfInt::try_from_rational(&gamma_arg).expect("half-integer"));
        if rg.is_zero() {
            continue;
        }
        // Assemble 2^{−r}·C(i,r)·(num)_ν / ((i−r)!·(den)_ν) from unreduced
        // parts, reducing once; the grids make this the hot path.
        let (num_n, num_d) = crate::comb::pochhammer_parts(&num_base, nu);
        let (den_n, den_d) = crate::comb::pochhammer_parts(&den_base, nu);
        let choose =
            &fact_small[i as usize] / (&fact_small[r as usize] * &fact_small[(i - r) as usize]);
        let coeff = BigRational::new(
            choose * num_n * den_d,
            (BigInt::one() << r) * &fact_small[den_fact as usize] * num_d * den_n,
        );
        sum = sum.add(&rg.mul(&rg).scale(&coeff));
    }

    prefactor
        .mul(&sum)
        .as_rational()
        .map_err(|e| IdentityError::InternalAlgebra(e.to_string()))
}

/// Golden table of tabulated closed forms for shifts `i <= 3`.
///
/// Hard-coded rather than derived from the general form at runtime, so the
/// two paths are independent evidence.
pub fn corollary_rhs(nu: u64, i: u64, parity: Parity) -> Result<BigRational, IdentityError> {
    let nu_i = nu as i64;
    let p = |base: BigRational| pochhammer(&base, nu);
    let value = match (i, parity) {
        (0, Parity::Even) => p(ratio(1, 2)) / p(big(1)),
        (0, Parity::Odd) => BigRational::zero(),
        (1, Parity::Even) => big(2 * nu_i + 1) * p(ratio(1, 2)) / p(big(1)),
        (1, Parity::Odd) => big(nu_i + 1) * p(ratio(3, 2)) / p(big(2)),
        (2, Parity::Even) => ratio(4 * nu_i + 3, 3) * p(ratio(3, 2)) / p(big(1)),
        (2, Parity::Odd) => big(2) * p(ratio(5, 2)) / p(big(1)),
        (3, Parity::Even) => ratio(8 * nu_i + 5, 5) * p(ratio(5, 2)) / p(big(1)),
        (3, Parity::Odd) => ratio(8 * nu_i + 15, 5) * p(ratio(5, 2)) / p(big(1)),
        _ => return Err(IdentityError::UnsupportedShift(i)),
    };
    Ok(value)
}

/// Classical right-hand sides: `2^{−2ν}C(2ν,ν)` and friends.
pub mod classical {
    use super::*;
    use crate::comb::binomial;

    /// `2^{−2ν} C(2ν, ν)`.
    pub fn knuth_even_rhs(nu: u64) -> BigRational {
        binomial(2 * nu, nu as i64) / pow2(2 * nu)
    }

    /// `2^{−2ν} (2ν+1) C(2ν, ν)`.
    pub fn riordan_even_rhs(nu: u64) -> BigRational {
        big(2 * nu as i64 + 1) * binomial(2 * nu, nu as i64) / pow2(2 * nu)
    }

    /// `2^{−2ν−1} (ν+1) C(2ν+2, ν+1)`.
    pub fn riordan_odd_rhs(nu: u64) -> BigRational {
        big(nu as i64 + 1) * binomial(2 * nu + 2, nu as i64 + 1) / pow2(2 * nu + 1)
    }

    fn pow2(e: u64) -> BigRational {
        BigRational::from_integer(BigInt::from(2).pow(e as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergeom::hyp2f1_terminating;

    #[test]
    fn oracle_small_values() {
        assert_eq!(knuth_lhs(2, 0), ratio(1, 2));
        assert_eq!(knuth_lhs(1, 0), big(0));
        assert_eq!(knuth_lhs(2, 1), ratio(3, 2));
        assert_eq!(knuth_lhs(2, 2), ratio(7, 2));
    }

    #[test]
    fn reduction_examples() {
        let (pre, spec) = reduce_to_2f1(2, 0);
        assert_eq!(pre, big(1));
        assert_eq!(pre * hyp2f1_terminating(&spec), knuth_lhs(2, 0));

        let (pre, spec) = reduce_to_2f1(0, 5);
        assert_eq!(pre, big(1));
        assert_eq!(hyp2f1_terminating(&spec), big(1));

        let (pre, spec) = reduce_to_2f1(2, 2);
        assert_eq!(pre, big(6));
        assert_eq!(pre * hyp2f1_terminating(&spec), ratio(7, 2));
    }

    #[test]
    fn theorem_spot_values() {
        assert_eq!(theorem_rhs(1, 0, Parity::Even).unwrap(), ratio(1, 2));
        assert_eq!(theorem_rhs(1, 1, Parity::Odd).unwrap(), ratio(3, 2));
        assert_eq!(theorem_rhs(1, 2, Parity::Even).unwrap(), ratio(7, 2));
        for nu in 0..=20 {
            assert_eq!(theorem_rhs(nu, 0, Parity::Odd).unwrap(), big(0));
        }
    }

    #[test]
    fn theorem_matches_oracle_small_grid() {
        for nu in 0..=8 {
            for i in 0..=8 {
                assert_eq!(
                    theorem_rhs(nu, i, Parity::Even).unwrap(),
                    knuth_lhs(2 * nu, i),
                    "even nu={nu} i={i}"
                );
                assert_eq!(
                    theorem_rhs(nu, i, Parity::Odd).unwrap(),
                    knuth_lhs(2 * nu + 1, i),
                    "odd nu={nu} i={i}"
                );
            }
        }
    }

    #[test]
    fn corollary_spot_values() {
        assert_eq!(corollary_rhs(1, 0, Parity::Even).unwrap(), ratio(1, 2));
        assert_eq!(corollary_rhs(0, 2, Parity::Odd).unwrap(), big(2));
        assert_eq!(corollary_rhs(1, 3, Parity::Even).unwrap(), ratio(13, 2));
        assert_eq!(
            corollary_rhs(1, 0, Parity::Even).unwrap(),
            classical::knuth_even_rhs(1)
        );
        assert_eq!(
            corollary_rhs(0, 2, Parity::Odd).unwrap(),
            knuth_lhs(1, 2)
        );
        assert_eq!(corollary_rhs(4, 99, Parity::Even), Err(IdentityError::UnsupportedShift(99)));
    }

    #[test]
    fn classical_forms_match_pochhammer_forms() {
        for nu in 0..=50 {
            assert_eq!(
                classical::knuth_even_rhs(nu),
                corollary_rhs(nu, 0, Parity::Even).unwrap()
            );
            assert_eq!(
                classical::riordan_even_rhs(nu),
                corollary_rhs(nu, 1, Parity::Even).unwrap()
            );
            assert_eq!(
                classical::riordan_odd_rhs(nu),
                corollary_rhs(nu, 1, Parity::Odd).unwrap()
            );
        }
    }
}
