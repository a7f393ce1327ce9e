//! Exact values of the form `Σ qₑ·π^(e/2)` with rational coefficients.
//!
//! This is the smallest ring closed under products of Gamma at half-integer
//! arguments: Γ(½) = √π contributes `π^(1/2)`, and the theorem prefactors
//! contribute integer powers of π. Values are kept in canonical sparse form
//! (no zero coefficients), so equality is plain term-wise comparison.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::BigRational;

/// Finite formal sum `Σ qₑ·π^(e/2)`, keyed by the doubled exponent `e`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PiVal {
    terms: BTreeMap<i64, BigRational>,
}

/// A nonzero power of π survived where a plain rational was required.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("value is not rational: nonzero coefficient at pi^({0}/2)")]
pub struct NotRational(pub i64);

impl PiVal {
    pub fn zero() -> Self {
        PiVal::default()
    }

    pub fn one() -> Self {
        PiVal::from_rational(BigRational::from_integer(1.into()))
    }

    /// π itself, i.e. `π^(2/2)`.
    pub fn pi() -> Self {
        PiVal::term(BigRational::from_integer(1.into()), 2)
    }

    /// √π, i.e. `π^(1/2)`.
    pub fn sqrt_pi() -> Self {
        PiVal::term(BigRational::from_integer(1.into()), 1)
    }

    /// The single term `q·π^(e/2)`.
    pub fn term(q: BigRational, half_exponent: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(half_exponent, q);
        }
        PiVal { terms }
    }

    pub fn from_rational(q: BigRational) -> Self {
        PiVal::term(q, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(e, q)| (*e, q))
    }

    pub fn add(&self, other: &PiVal) -> PiVal {
        let mut out = self.terms.clone();
        for (e, q) in &other.terms {
            let entry = out.entry(*e).or_insert_with(BigRational::zero);
            *entry += q;
            if entry.is_zero() {
                out.remove(e);
            }
        }
        PiVal { terms: out }
    }

    pub fn neg(&self) -> PiVal {
        PiVal {
            terms: self.terms.iter().map(|(e, q)| (*e, -q)).collect(),
        }
    }

    pub fn sub(&self, other: &PiVal) -> PiVal {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PiVal) -> PiVal {
        let mut out: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (e1, q1) in &self.terms {
            for (e2, q2) in &other.terms {
                let e = e1 + e2;
                let entry = out.entry(e).or_insert_with(BigRational::zero);
                *entry += q1 * q2;
            }
        }
        out.retain(|_, q| !q.is_zero());
        PiVal { terms: out }
    }

    pub fn scale(&self, q: &BigRational) -> PiVal {
        if q.is_zero() {
            return PiVal::zero();
        }
        PiVal {
            terms: self.terms.iter().map(|(e, c)| (*e, c * q)).collect(),
        }
    }

    /// Multiplicative inverse of a single-term value.
    ///
    /// Returns `None` for zero or for sums of more than one π-power (those
    /// inverses leave the algebra).
    pub fn invert(&self) -> Option<PiVal> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, q) = self.terms.iter().next().unwrap();
        Some(PiVal::term(q.recip(), -e))
    }

    /// Collapses a degree-0 value to its rational coefficient.
    pub fn as_rational(&self) -> Result<BigRational, NotRational> {
        for (e, _) in &self.terms {
            if *e != 0 {
                return Err(NotRational(*e));
            }
        }
        Ok(self
            .terms
            .get(&0)
            .cloned()
            .unwrap_or_else(BigRational::zero))
    }
}

impl fmt::Display for PiVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, q) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{q}")?,
                _ => write!(f, "{q}*pi^({e}/2)")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{big, ratio};

    #[test]
    fn exponents_add_under_mul() {
        let a = PiVal::term(big(1), -1);
        assert_eq!(a.mul(&a), PiVal::term(big(1), -2));
    }

    #[test]
    fn cancellation_yields_canonical_zero() {
        let q = ratio(3, 7);
        let a = PiVal::term(q.clone(), 1);
        let b = PiVal::term(-q, 1);
        assert!(a.add(&b).is_zero());
        assert_eq!(a.add(&b), PiVal::zero());
    }

    #[test]
    fn degree_zero_product() {
        let a = PiVal::term(big(1), 2);
        let b = PiVal::term(ratio(3, 4), -2);
        assert_eq!(a.mul(&b).as_rational().unwrap(), ratio(3, 4));
    }

    #[test]
    fn as_rational_rejects_surviving_pi() {
        let v = PiVal::term(big(1), 1);
        assert_eq!(v.as_rational(), Err(NotRational(1)));
        assert_eq!(PiVal::zero().as_rational().unwrap(), big(0));
        assert_eq!(
            PiVal::from_rational(ratio(7, 2)).as_rational().unwrap(),
            ratio(7, 2)
        );
    }

    #[test]
    fn invert_single_term() {
        let v = PiVal::term(ratio(-2, 3), 1);
        let inv = v.invert().unwrap();
        assert_eq!(v.mul(&inv), PiVal::one());
        assert!(PiVal::zero().invert().is_none());
        assert!(PiVal::one().add(&PiVal::pi()).invert().is_none());
    }
}
