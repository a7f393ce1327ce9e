//! Property suites: ring laws for the √π algebra, binomial recurrences,
//! the rising-factorial/factorial identity, the duplication formula over
//! half-integers, and order-independence of the exact series sum.

use proptest::prelude::*;

use hypersum_core::comb::{binomial, factorial, gamma_half, pochhammer, rgamma_half};
use hypersum_core::hypergeom::{hyp2f1_terminating, SeriesSpec};
use hypersum_core::{big, ratio, BigRational, HalfInt, PiVal};

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| ratio(p, q))
}

fn small_pival() -> impl Strategy<Value = PiVal> {
    proptest::collection::vec((-3i64..=3, small_rational()), 0..4).prop_map(|terms| {
        terms
            .into_iter()
            .fold(PiVal::zero(), |acc, (e, q)| acc.add(&PiVal::term(q, e)))
    })
}

proptest! {
    #[test]
    fn pival_ring_laws(a in small_pival(), b in small_pival(), c in small_pival()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&PiVal::one()), a.clone());
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn binomial_symmetry_and_pascal(n in 1u64..=80, k in 0i64..=80) {
        if k <= n as i64 {
            prop_assert_eq!(binomial(n, k), binomial(n, n as i64 - k));
        }
        prop_assert_eq!(
            binomial(n, k),
            binomial(n - 1, k - 1) + binomial(n - 1, k)
        );
    }

    #[test]
    fn descending_resummation_is_identical(
        m in 0i64..=30,
        b in small_rational(),
        z in small_rational(),
    ) {
        // c chosen positive so the spec is always valid.
        let c = ratio(7, 3);
        let spec = SeriesSpec::new(-m, b.clone(), c.clone(), z.clone()).unwrap();
        let ascending = hyp2f1_terminating(&spec);

        // Independent re-sum in descending k, building each term afresh.
        let mut descending = BigRational::from_integer(0.into());
        for k in (0..=(m as u64)).rev() {
            let term = pochhammer(&big(-m), k) * pochhammer(&b, k)
                * num_traits::Pow::pow(&z, k as u32)
                / (pochhammer(&c, k) * factorial(k));
            descending += term;
        }
        prop_assert_eq!(ascending, descending);
    }
}

// (n−k)! · (−n)_k = (−1)^k · n!  for 0 <= k <= n.
#[test]
fn falling_factorial_identity() {
    for n in 0u64..=60 {
        let n_fact = factorial(n);
        for k in 0..=n {
            let lhs = factorial(n - k) * pochhammer(&big(-(n as i64)), k);
            let expect = if k % 2 == 0 {
                n_fact.clone()
            } else {
                -n_fact.clone()
            };
            assert_eq!(lhs, expect, "n={n} k={k}");
        }
    }
}

// Γ(2z)·√π = 2^(2z−1)·Γ(z)·Γ(z+½) over half-integers, poles excluded.
#[test]
fn duplication_formula_over_half_integers() {
    let mut checked = 0;
    for t in -19i64..=20 {
        let z = HalfInt::from_twice(t);
        let z_half = HalfInt::from_twice(t + 1);
        let two_z = HalfInt::from_twice(2 * t);
        let (g_z, g_zh, g_2z) = match (gamma_half(&z), gamma_half(&z_half), gamma_half(&two_z)) {
            (Some(a), Some(b), Some(c)) => (a, b, c),
            _ => continue, // pole in one of the three arguments
        };
        // 2^(2z−1) is rational only for integer z twice-values; express the
        // check pole-free as Γ(2z)·√π·2 = 2^(2z)·Γ(z)·Γ(z+½) with 2^(2z)
        // = 2^t an integer power of two.
        let pow = if t >= 0 {
            BigRational::from_integer(num_bigint::BigInt::from(2).pow(t as u32))
        } else {
            BigRational::from_integer(num_bigint::BigInt::from(2).pow((-t) as u32)).recip()
        };
        let lhs = g_2z.mul(&PiVal::sqrt_pi()).scale(&big(2));
        let rhs = g_z.mul(&g_zh).scale(&pow);
        assert_eq!(lhs, rhs, "twice_value = {t}");
        checked += 1;
    }
    assert!(checked >= 20, "only {checked} pole-free points");
}

// rgamma inverts gamma wherever gamma is finite.
#[test]
fn rgamma_is_reciprocal_of_gamma() {
    for t in -19i64..=20 {
        let x = HalfInt::from_twice(t);
        match gamma_half(&x) {
            Some(g) => assert_eq!(g.mul(&rgamma_half(&x)), PiVal::one(), "t={t}"),
            None => assert!(rgamma_half(&x).is_zero(), "t={t}"),
        }
    }
}
