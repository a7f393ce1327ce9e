//! Grid verification: evaluate both sides of an identity over a parameter
//! grid and produce one report per point.
//!
//! Points are independent pure computations and are fanned out with rayon;
//! reports come back in lexicographic grid order regardless of how the work
//! was scheduled, so output is deterministic for any worker count.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::halfint::HalfInt;
use crate::hypergeom::{
    gauss_second, hyp2f1_terminating, master_even, master_odd, rational_to_f64, EvalMode,
    GaussError, SeriesSpec,
};
use crate::identities::{classical, corollary_rhs, knuth_lhs, theorem_rhs, Parity};
use crate::{big, BigRational};

/// Catalog of verifiable identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentityId {
    KnuthEven,
    KnuthOdd,
    RiordanEven,
    RiordanOdd,
    TheoremEven,
    TheoremOdd,
    Corollary(Parity),
    MasterEven,
    MasterOdd,
    GaussSecond,
}

impl IdentityId {
    pub const ALL: [IdentityId; 11] = [
        IdentityId::KnuthEven,
        IdentityId::KnuthOdd,
        IdentityId::RiordanEven,
        IdentityId::RiordanOdd,
        IdentityId::TheoremEven,
        IdentityId::TheoremOdd,
        IdentityId::Corollary(Parity::Even),
        IdentityId::Corollary(Parity::Odd),
        IdentityId::MasterEven,
        IdentityId::MasterOdd,
        IdentityId::GaussSecond,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            IdentityId::KnuthEven => "knuth-even",
            IdentityId::KnuthOdd => "knuth-odd",
            IdentityId::RiordanEven => "riordan-even",
            IdentityId::RiordanOdd => "riordan-odd",
            IdentityId::TheoremEven => "theorem-even",
            IdentityId::TheoremOdd => "theorem-odd",
            IdentityId::Corollary(Parity::Even) => "corollary-even",
            IdentityId::Corollary(Parity::Odd) => "corollary-odd",
            IdentityId::MasterEven => "master-even",
            IdentityId::MasterOdd => "master-odd",
            IdentityId::GaussSecond => "gauss-second",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityId::ALL
            .iter()
            .find(|id| id.name() == s)
            .copied()
            .ok_or_else(|| format!("unknown identity `{s}`"))
    }
}

/// One side of an identity: exact rational or floating point.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Rational(BigRational),
    Real(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Rational(q) => rational_to_f64(q),
            Value::Real(x) => *x,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rational(q) => write!(f, "{q}"),
            // 17 significant digits round-trips every f64.
            Value::Real(x) => write!(f, "{x:.16e}"),
        }
    }
}

/// Per-grid-point verification record.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub identity: IdentityId,
    pub nu: u64,
    pub i: Option<u64>,
    pub alpha: Option<BigRational>,
    pub mode: EvalMode,
    pub lhs: Value,
    pub rhs: Value,
    pub matched: bool,
}

/// Parameter grid for [`verify`].
#[derive(Clone, Debug)]
pub struct GridSpec {
    pub nu: RangeInclusive<u64>,
    pub i: RangeInclusive<u64>,
    /// Master identities: the α values to sweep. Gauss: the `b` values
    /// (half-integers, as rationals); empty means the default sweep of
    /// twice-values in [−19, 20].
    pub alphas: Vec<BigRational>,
    pub mode: EvalMode,
}

impl GridSpec {
    pub fn exact(nu: RangeInclusive<u64>, i: RangeInclusive<u64>) -> Self {
        GridSpec {
            nu,
            i,
            alphas: Vec::new(),
            mode: EvalMode::Exact,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum VerifyError {
    #[error("grid outside identity domain: {0}")]
    Domain(String),
}

/// Evaluates both sides of `identity` at every grid point.
pub fn verify(
    identity: IdentityId,
    grid: &GridSpec,
) -> Result<Vec<VerificationReport>, VerifyError> {
    match identity {
        IdentityId::Corollary(_) => {
            if *grid.i.end() > 3 && !grid.i.is_empty() {
                return Err(VerifyError::Domain(format!(
                    "corollary table covers shifts 0..=3, grid asks for {}",
                    grid.i.end()
                )));
            }
        }
        IdentityId::MasterEven | IdentityId::MasterOdd => {
            if grid.alphas.is_empty() {
                return Err(VerifyError::Domain(
                    "master identities need at least one alpha".into(),
                ));
            }
        }
        _ => {}
    }

    let points = enumerate_points(identity, grid);
    points
        .into_par_iter()
        .map(|p| evaluate_point(identity, grid.mode, p))
        .collect::<Result<Vec<_>, _>>()
        .map(|reports| reports.into_iter().flatten().collect())
}

#[derive(Clone, Debug)]
struct Point {
    nu: u64,
    i: Option<u64>,
    alpha: Option<BigRational>,
}

fn enumerate_points(identity: IdentityId, grid: &GridSpec) -> Vec<Point> {
    let nus = grid.nu.clone();
    let mut points = Vec::new();
    match identity {
        IdentityId::KnuthEven
        | IdentityId::KnuthOdd
        | IdentityId::RiordanEven
        | IdentityId::RiordanOdd => {
            for nu in nus {
                points.push(Point { nu, i: None, alpha: None });
            }
        }
        IdentityId::TheoremEven | IdentityId::TheoremOdd | IdentityId::Corollary(_) => {
            for nu in nus {
                for i in grid.i.clone() {
                    points.push(Point { nu, i: Some(i), alpha: None });
                }
            }
        }
        IdentityId::MasterEven | IdentityId::MasterOdd => {
            for nu in nus {
                for i in grid.i.clone() {
                    for alpha in &grid.alphas {
                        points.push(Point {
                            nu,
                            i: Some(i),
                            alpha: Some(alpha.clone()),
                        });
                    }
                }
            }
        }
        IdentityId::GaussSecond => {
            let bs: Vec<BigRational> = if grid.alphas.is_empty() {
                (-19i64..=20)
                    .map(|t| HalfInt::from_twice(t).to_rational())
                    .collect()
            } else {
                grid.alphas.clone()
            };
            for nu in nus {
                for b in &bs {
                    points.push(Point {
                        nu,
                        i: None,
                        alpha: Some(b.clone()),
                    });
                }
            }
        }
    }
    points
}

// Returns Ok(None) for grid points excluded by an identity's preconditions
// (only the Gauss sweep has those).
fn evaluate_point(
    identity: IdentityId,
    mode: EvalMode,
    p: Point,
) -> Result<Option<VerificationReport>, VerifyError> {
    let exact_report = |lhs: BigRational, rhs: BigRational, p: &Point| VerificationReport {
        identity,
        nu: p.nu,
        i: p.i,
        alpha: p.alpha.clone(),
        mode: EvalMode::Exact,
        matched: lhs == rhs,
        lhs: Value::Rational(lhs),
        rhs: Value::Rational(rhs),
    };
    let domain = |msg: String| VerifyError::Domain(msg);

    let report = match identity {
        IdentityId::KnuthEven => {
            exact_report(knuth_lhs(2 * p.nu, 0), classical::knuth_even_rhs(p.nu), &p)
        }
        IdentityId::KnuthOdd => exact_report(knuth_lhs(2 * p.nu + 1, 0), big(0), &p),
        IdentityId::RiordanEven => {
            exact_report(knuth_lhs(2 * p.nu, 1), classical::riordan_even_rhs(p.nu), &p)
        }
        IdentityId::RiordanOdd => {
            exact_report(knuth_lhs(2 * p.nu + 1, 1), classical::riordan_odd_rhs(p.nu), &p)
        }
        IdentityId::TheoremEven => {
            let i = p.i.unwrap();
            let rhs = theorem_rhs(p.nu, i, Parity::Even).map_err(|e| domain(e.to_string()))?;
            exact_report(knuth_lhs(2 * p.nu, i), rhs, &p)
        }
        IdentityId::TheoremOdd => {
            let i = p.i.unwrap();
            let rhs = theorem_rhs(p.nu, i, Parity::Odd).map_err(|e| domain(e.to_string()))?;
            exact_report(knuth_lhs(2 * p.nu + 1, i), rhs, &p)
        }
        IdentityId::Corollary(parity) => {
            let i = p.i.unwrap();
            let rhs = corollary_rhs(p.nu, i, parity).map_err(|e| domain(e.to_string()))?;
            let n = match parity {
                Parity::Even => 2 * p.nu,
                Parity::Odd => 2 * p.nu + 1,
            };
            exact_report(knuth_lhs(n, i), rhs, &p)
        }
        IdentityId::MasterEven | IdentityId::MasterOdd => {
            let i = p.i.unwrap();
            let alpha = p.alpha.clone().unwrap();
            let n = p.nu;
            let (upper, closed) = match identity {
                IdentityId::MasterEven => (
                    -2 * (n as i64),
                    master_even(n, &alpha, i, mode).map_err(|e| domain(e.to_string()))?,
                ),
                _ => (
                    -2 * (n as i64) - 1,
                    master_odd(n, &alpha, i, mode).map_err(|e| domain(e.to_string()))?,
                ),
            };
            let c = &alpha * big(2) + big(i as i64);
            let spec = SeriesSpec::new(upper, alpha, c, big(2))
                .map_err(|e| domain(e.to_string()))?;
            let series = hyp2f1_terminating(&spec);
            match closed {
                crate::hypergeom::MasterValue::Exact(rhs) => exact_report(series, rhs, &p),
                crate::hypergeom::MasterValue::Float(rhs) => {
                    let tol = match mode {
                        EvalMode::Float { tol } => tol,
                        EvalMode::Exact => unreachable!("float value out of exact mode"),
                    };
                    let lhs_f = rational_to_f64(&series);
                    // Relative tolerance with an absolute floor: the series
                    // can be exactly 0, where relative error is undefined.
                    let matched = (rhs - lhs_f).abs() <= (tol * lhs_f.abs()).max(1e-12);
                    VerificationReport {
                        identity,
                        nu: p.nu,
                        i: p.i,
                        alpha: p.alpha.clone(),
                        mode,
                        matched,
                        lhs: Value::Rational(series),
                        rhs: Value::Real(rhs),
                    }
                }
            }
        }
        IdentityId::GaussSecond => {
            let b = p.alpha.clone().unwrap();
            let m = p.nu;
            let a_h = HalfInt::from_int(-(m as i64));
            let b_h = match HalfInt::try_from_rational(&b) {
                Some(h) => h,
                None => return Err(domain(format!("b = {b} is not a half-integer"))),
            };
            let closed = match gauss_second(&a_h, &b_h) {
                Ok(v) => v,
                // Precondition-excluded grid points, not failures.
                Err(GaussError::NumeratorPole(_)) | Err(GaussError::NonHalfIntArgument { .. }) => {
                    return Ok(None)
                }
            };
            let rhs = closed
                .as_rational()
                .map_err(|e| domain(format!("internal algebra error: {e}")))?;
            let c = (&b + big(1) - big(m as i64)) / big(2);
            let spec = SeriesSpec::new(-(m as i64), b, c, crate::ratio(1, 2))
                .map_err(|e| domain(e.to_string()))?;
            exact_report(hyp2f1_terminating(&spec), rhs, &p)
        }
    };
    Ok(Some(report))
}

/// Convenience: the reduction contract `C(n+i, i) · ₂F₁(−n, ½; 1+i; 2)`
/// against the oracle, used by tests and the CLI.
pub fn reduction_holds(n: u64, i: u64) -> bool {
    let (pre, spec) = crate::identities::reduce_to_2f1(n, i);
    pre * hyp2f1_terminating(&spec) == knuth_lhs(n, i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    #[test]
    fn theorem_even_grid_counts_and_matches() {
        let reports = verify(
            IdentityId::TheoremEven,
            &GridSpec::exact(0..=3, 0..=2),
        )
        .unwrap();
        assert_eq!(reports.len(), 12);
        assert!(reports.iter().all(|r| r.matched));
    }

    #[test]
    fn knuth_odd_all_zero() {
        let reports = verify(IdentityId::KnuthOdd, &GridSpec::exact(0..=5, 0..=0)).unwrap();
        assert_eq!(reports.len(), 6);
        for r in &reports {
            assert!(r.matched);
            assert_eq!(r.lhs, Value::Rational(big(0)));
            assert_eq!(r.rhs, Value::Rational(big(0)));
        }
    }

    #[test]
    fn empty_grid_empty_reports() {
        #[allow(clippy::reversed_empty_ranges)]
        let grid = GridSpec::exact(1..=0, 0..=0);
        let reports = verify(IdentityId::KnuthEven, &grid).unwrap();
        assert!(reports.is_empty());
    }

    #[test]
    fn corollary_shift_domain_error() {
        let err = verify(IdentityId::Corollary(Parity::Even), &GridSpec::exact(0..=1, 0..=7));
        assert!(matches!(err, Err(VerifyError::Domain(_))));
    }

    #[test]
    fn master_grid_float() {
        let grid = GridSpec {
            nu: 0..=3,
            i: 0..=2,
            alphas: vec![ratio(1, 3), ratio(2, 5)],
            mode: EvalMode::Float { tol: 1e-9 },
        };
        let reports = verify(IdentityId::MasterEven, &grid).unwrap();
        assert_eq!(reports.len(), 4 * 3 * 2);
        assert!(reports.iter().all(|r| r.matched));
    }

    #[test]
    fn gauss_default_sweep_skips_excluded_points() {
        let grid = GridSpec::exact(0..=5, 0..=0);
        let reports = verify(IdentityId::GaussSecond, &grid).unwrap();
        assert!(!reports.is_empty());
        assert!(reports.len() < 6 * 40);
        assert!(reports.iter().all(|r| r.matched));
    }

    #[test]
    fn identity_names_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
        }
        assert!("no-such-identity".parse::<IdentityId>().is_err());
    }
}
