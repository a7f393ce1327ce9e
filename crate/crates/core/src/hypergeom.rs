//! Terminating ₂F₁ evaluation, Gauss's second summation theorem, and the
//! two master closed forms for ₂F₁(−2n or −2n−1, α; 2α+i; 2).
//!
//! The terminating series is the oracle: it is an exact rational for any
//! rational parameters. The closed forms are evaluated in the √π algebra
//! when every Gamma argument is a half-integer, and through [`lgamma_real`]
//! otherwise. At half-integer α with positive integer lower parameter the
//! closed forms are 0·∞ indeterminate; that case is refused with
//! [`MasterError::PoleAmbiguity`] — the limit-resolved values live in the
//! `identities` module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::comb::{binomial, gamma_half, pochhammer, rgamma_half};
use crate::halfint::HalfInt;
use crate::lgamma::lgamma_real;
use crate::pival::PiVal;
use crate::{big, ratio, BigRational};

/// Parameters of a terminating Gauss series `₂F₁(a, b; c; z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSpec {
    a: i64,
    b: BigRational,
    c: BigRational,
    z: BigRational,
}

/// Evaluation path for the master closed forms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EvalMode {
    Exact,
    Float { tol: f64 },
}

/// Result of a master closed-form evaluation.
#[derive(Clone, Debug, PartialEq)]
pub enum MasterValue {
    Exact(BigRational),
    Float(f64),
}

impl MasterValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            MasterValue::Exact(q) => rational_to_f64(q),
            MasterValue::Float(x) => *x,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SpecError {
    #[error("upper parameter must be a nonpositive integer, got {0}")]
    UpperNotNonpositive(i64),
    #[error("lower parameter hits a nonpositive integer within the summation range: c + {0} = 0")]
    LowerPole(u64),
}

#[derive(Debug, Error, PartialEq)]
pub enum GaussError {
    #[error("numerator Gamma argument (a+b+1)/2 = {0} is a nonpositive integer")]
    NumeratorPole(HalfInt),
    #[error("closed form leaves the half-integer Gamma algebra for a = {a}, b = {b}")]
    NonHalfIntArgument { a: HalfInt, b: HalfInt },
}

#[derive(Debug, Error, PartialEq)]
pub enum MasterError {
    #[error("closed form is 0*inf indeterminate at alpha = {alpha}, i = {i}; use the limit-resolved identities")]
    PoleAmbiguity { alpha: BigRational, i: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

impl SeriesSpec {
    /// Validates `a <= 0` and `c + j != 0` for `0 <= j < |a|`.
    pub fn new(
        a: i64,
        b: BigRational,
        c: BigRational,
        z: BigRational,
    ) -> Result<Self, SpecError> {
        if a > 0 {
            return Err(SpecError::UpperNotNonpositive(a));
        }
        if c.is_integer() {
            let ci = &c.to_integer();
            if !ci.is_positive() {
                let m = (-ci).to_u64().unwrap_or(u64::MAX);
                if m < a.unsigned_abs() {
                    return Err(SpecError::LowerPole(m));
                }
            }
        }
        Ok(SeriesSpec { a, b, c, z })
    }

    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> &BigRational {
        &self.b
    }
    pub fn c(&self) -> &BigRational {
        &self.c
    }
    pub fn z(&self) -> &BigRational {
        &self.z
    }
}

/// Exact sum `Σ_{k=0}^{|a|} (a)_k (b)_k z^k / ((c)_k k!)` by ascending-k
/// accumulation. Exact arithmetic has no cancellation risk, so no
/// compensated summation is needed.
pub fn hyp2f1_terminating(spec: &SeriesSpec) -> BigRational {
    let terms = spec.a.unsigned_abs();
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    for k in 0..=terms {
        sum += &term;
        if k == terms {
            break;
        }
        let kq = big(k as i64);
        term *= (big(spec.a) + &kq) * (&spec.b + &kq) * &spec.z;
        term /= (&spec.c + &kq) * (&kq + BigRational::one());
    }
    sum
}

/// Closed form `Γ(½)Γ(½a+½b+½) / (Γ(½a+½)Γ(½b+½))` for
/// `₂F₁(a, b; (a+b+1)/2; ½)`, evaluated exactly.
///
/// When `b` is half-odd the middle two Gamma arguments are quarter-integers;
/// if they differ by an integer (i.e. `a` is even) their ratio is still a
/// rational Pochhammer and the value stays in the algebra. Otherwise the
/// closed form cannot be expressed here and `NonHalfIntArgument` is returned.
pub fn gauss_second(a: &HalfInt, b: &HalfInt) -> Result<PiVal, GaussError> {
    let one = HalfInt::from_int(1);
    if a.is_integer() && b.is_integer() {
        let num = half_of(&(&(a + b) + &one));
        let den_a = half_of(&(a + &one));
        let den_b = half_of(&(b + &one));
        if num.is_gamma_pole() {
            return Err(GaussError::NumeratorPole(num));
        }
        let numerator = gamma_half(&HalfInt::half())
            .unwrap()
            .mul(&gamma_half(&num).expect("pole checked above"));
        return Ok(numerator
            .mul(&rgamma_half(&den_a))
            .mul(&rgamma_half(&den_b)));
    }

    if a.is_integer() && b.is_half_odd() {
        let a_val = a.as_integer().expect("a is an integer");
        if a_val.is_even() {
            // num and den_b are quarter-integers differing by a/2:
            // Γ(x + a/2) / Γ(x) with x = (b+1)/2, never at a pole.
            let x = b.to_rational() / big(2) + ratio(1, 2);
            let shift = &a_val / 2;
            let ratio_q = gamma_shift_ratio(&x, &shift);
            let den_a = half_of(&(a + &one));
            let val = gamma_half(&HalfInt::half())
                .unwrap()
                .mul(&rgamma_half(&den_a))
                .scale(&ratio_q);
            return Ok(val);
        }
    }

    Err(GaussError::NonHalfIntArgument {
        a: a.clone(),
        b: b.clone(),
    })
}

// (a+1)/2 etc. for even twice-values only.
fn half_of(x: &HalfInt) -> HalfInt {
    debug_assert!(x.is_integer());
    HalfInt::from_twice(x.as_integer().expect("even twice-value"))
}

// Γ(x + t)/Γ(x) for integer t, as an exact rational. Caller guarantees no
// Gamma pole is crossed (x non-integer suffices).
fn gamma_shift_ratio(x: &BigRational, t: &BigInt) -> BigRational {
    let steps = t.abs().to_u64().expect("shift fits in u64");
    if t.is_negative() {
        let base = x - BigRational::from_integer(t.abs());
        pochhammer(&base, steps).recip()
    } else {
        pochhammer(x, steps)
    }
}

/// Closed form for `₂F₁(−2n, α; 2α+i; 2)`.
pub fn master_even(
    n: u64,
    alpha: &BigRational,
    i: u64,
    mode: EvalMode,
) -> Result<MasterValue, MasterError> {
    master(n, alpha, i, mode, MasterParity::Even)
}

/// Closed form for `₂F₁(−2n−1, α; 2α+i; 2)`.
pub fn master_odd(
    n: u64,
    alpha: &BigRational,
    i: u64,
    mode: EvalMode,
) -> Result<MasterValue, MasterError> {
    master(n, alpha, i, mode, MasterParity::Odd)
}

#[derive(Clone, Copy, PartialEq)]
enum MasterParity {
    Even,
    Odd,
}

fn master(
    n: u64,
    alpha: &BigRational,
    i: u64,
    mode: EvalMode,
    parity: MasterParity,
) -> Result<MasterValue, MasterError> {
    let upper_terms = match parity {
        MasterParity::Even => 2 * n,
        MasterParity::Odd => 2 * n + 1,
    };
    let c = alpha * big(2) + big(i as i64);

    if c.is_integer() {
        // alpha is a half-integer.
        let ci = c.to_integer();
        if ci.is_positive() {
            return Err(MasterError::PoleAmbiguity {
                alpha: alpha.clone(),
                i,
            });
        }
        if -&ci < BigInt::from(upper_terms) {
            return Err(MasterError::InvalidParams(format!(
                "lower parameter {c} is a nonpositive integer inside the summation range"
            )));
        }
        let exact = master_exact(n, alpha, i, parity)?;
        return Ok(match mode {
            EvalMode::Exact => MasterValue::Exact(exact),
            EvalMode::Float { .. } => MasterValue::Float(rational_to_f64(&exact)),
        });
    }

    match mode {
        EvalMode::Exact => Err(MasterError::InvalidParams(format!(
            "exact mode requires half-integer alpha, got {alpha}"
        ))),
        EvalMode::Float { .. } => Ok(MasterValue::Float(master_float(n, alpha, i, parity))),
    }
}

// Exact path: every Gamma argument is a half-integer, so the whole right
// side lives in the √π algebra and collapses to a rational.
fn master_exact(
    n: u64,
    alpha: &BigRational,
    i: u64,
    parity: MasterParity,
) -> Result<BigRational, MasterError> {
    let ambiguity = || MasterError::PoleAmbiguity {
        alpha: alpha.clone(),
        i,
    };
    let half = ratio(1, 2);
    let alpha_h = HalfInt::try_from_rational(alpha).expect("half-integer alpha");
    let c = alpha * big(2) + big(i as i64);

    let gamma_alpha = gamma_half(&alpha_h).ok_or_else(ambiguity)?;
    let one_minus_alpha =
        HalfInt::try_from_rational(&(big(1) - alpha)).expect("half-integer");
    let gamma_one_minus_alpha = gamma_half(&one_minus_alpha).ok_or_else(ambiguity)?;

    let alpha_plus_i = HalfInt::try_from_rational(&(alpha + big(i as i64))).unwrap();
    let one_minus_c = HalfInt::try_from_rational(&(big(1) - &c)).unwrap();

    // 2^(−2α−i) = 2^(−c) with integer c.
    let pow2 = pow_rational(&big(2), &-c.to_integer());
    let mut prefactor = PiVal::from_rational(pow2)
        .mul(&gamma_alpha)
        .mul(&gamma_one_minus_alpha)
        .mul(&rgamma_half(&alpha_plus_i))
        .mul(&rgamma_half(&one_minus_c));
    if parity == MasterParity::Odd {
        prefactor = prefactor.neg();
    }

    let mut sum = PiVal::zero();
    for r in 0..=i {
        let shift = ratio((i - r) as i64, 2); // (i−r)/2
        let (g_arg, h_arg, p_base, q_base) = match parity {
            MasterParity::Even => (
                &half - alpha - &shift,
                &half - &shift,
                &half + &shift,
                alpha + &half + &shift,
            ),
            MasterParity::Odd => (
                -alpha - &shift,
                -&shift,
                big(1) + &shift,
                alpha + big(1) + &shift,
            ),
        };
        let h = HalfInt::try_from_rational(&h_arg).unwrap();
        let rg_h = rgamma_half(&h);
        if rg_h.is_zero() {
            continue;
        }
        let g = HalfInt::try_from_rational(&g_arg).unwrap();
        let gamma_g = gamma_half(&g).ok_or_else(ambiguity)?;
        let q_poch = pochhammer(&q_base, n);
        if q_poch.is_zero() {
            return Err(MasterError::InvalidParams(format!(
                "denominator Pochhammer ({q_base})_{n} vanishes"
            )));
        }
        let coeff = binomial(i, r as i64) * pochhammer(&p_base, n) / q_poch;
        let signed = if r % 2 == 0 { coeff } else { -coeff };
        sum = sum.add(&gamma_g.mul(&rg_h).scale(&signed));
    }

    prefactor
        .mul(&sum)
        .as_rational()
        .map_err(|e| MasterError::InvalidParams(format!("internal algebra error: {e}")))
}

// Float path for generic (non-half-integer) rational alpha: no Gamma
// argument other than h_r can sit on a pole, and h_r poles kill their term.
fn master_float(n: u64, alpha: &BigRational, i: u64, parity: MasterParity) -> f64 {
    let a = rational_to_f64(alpha);
    let i_f = i as f64;
    let c = 2.0 * a + i_f;

    let lg = |x: f64| lgamma_real(x).expect("pole-free by construction");
    let (lg_a, s_a) = lg(a);
    let (lg_1a, s_1a) = lg(1.0 - a);
    let (lg_ai, s_ai) = lg(a + i_f);
    let (lg_1c, s_1c) = lg(1.0 - c);

    let pref_log = -c * std::f64::consts::LN_2 + lg_a + lg_1a - lg_ai - lg_1c;
    let mut pref_sign = (s_a * s_1a * s_ai * s_1c) as f64;
    if parity == MasterParity::Odd {
        pref_sign = -pref_sign;
    }

    let mut sum = 0.0f64;
    for r in 0..=i {
        let shift = (i - r) as f64 / 2.0;
        let (g_arg, h_arg, p_base, q_base) = match parity {
            MasterParity::Even => (0.5 - a - shift, 0.5 - shift, 0.5 + shift, a + 0.5 + shift),
            MasterParity::Odd => (-a - shift, -shift, 1.0 + shift, a + 1.0 + shift),
        };
        if h_arg <= 0.0 && h_arg.fract() == 0.0 {
            continue; // denominator Gamma pole: the term vanishes
        }
        let (lg_g, s_g) = lg(g_arg);
        let (lg_h, s_h) = lg(h_arg);
        let (p, s_p) = pochhammer_f64(p_base, n);
        let (q, s_q) = pochhammer_f64(q_base, n);
        let choose = rational_to_f64(&binomial(i, r as i64));
        let sign = (s_g * s_h * s_p * s_q) as f64 * if r % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * choose * (lg_g - lg_h + p - q).exp();
    }
    pref_sign * pref_log.exp() * sum
}

// (ln|(x)_n|, sign), with sign 0 impossible for the arguments used here.
fn pochhammer_f64(x: f64, n: u64) -> (f64, i8) {
    let mut log_abs = 0.0;
    let mut sign = 1i8;
    for k in 0..n {
        let f = x + k as f64;
        log_abs += f.abs().ln();
        if f < 0.0 {
            sign = -sign;
        }
    }
    (log_abs, sign)
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

fn pow_rational(base: &BigRational, exp: &BigInt) -> BigRational {
    let e = exp.abs().to_u32().expect("exponent fits in u32");
    let p = num_traits::Pow::pow(base, e);
    if exp.is_negative() {
        p.recip()
    } else {
        p
    }
}
