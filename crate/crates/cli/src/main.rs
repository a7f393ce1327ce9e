//! Verification CLI: run identity checks on parameter grids, evaluate
//! single expressions, and emit value tables.
//!
//! Exit codes: 0 — all verifications matched; 1 — at least one mismatch
//! (mismatching points listed on stderr); 2 — usage or domain error.

mod format;

use std::fs;
use std::ops::RangeInclusive;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use format::{emit_table, emit_value_table, OutputFormat};
use hypersum_core::hypergeom::{gauss_second, master_even, master_odd, EvalMode, MasterValue};
use hypersum_core::identities::{corollary_rhs, knuth_lhs, theorem_rhs, Parity};
use hypersum_core::verify::{verify, GridSpec, IdentityId, Value, VerificationReport};
use hypersum_core::{big, BigRational, HalfInt};

#[derive(Parser)]
#[command(name = "hypersum", version, about = "Exact verification of binomial and hypergeometric identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify an identity (or all of them) over a parameter grid.
    Verify(VerifyArgs),
    /// Evaluate a single expression and print its value.
    Eval(EvalArgs),
    /// Emit a table of closed-form values over a grid.
    Table(TableArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity name, or `all` for every exact identity.
    #[arg(long, default_value = "all")]
    identity: String,
    /// Inclusive range `a..b` for the outer parameter.
    #[arg(long, default_value = "0..10")]
    nu: String,
    /// Inclusive range `a..b` for the shift parameter.
    #[arg(long, default_value = "0..3")]
    i: String,
    /// Rational `p/q`; repeatable. Alphas for the master identities,
    /// `b` values for gauss-second.
    #[arg(long)]
    alpha: Vec<String>,
    /// Evaluation mode: `exact` or `float`.
    #[arg(long, default_value = "exact")]
    mode: String,
    /// Float-mode relative tolerance.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Output format: csv|json|markdown|latex.
    #[arg(long, default_value = "csv")]
    format: String,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<String>,
    /// Grid parallelism (results are worker-count independent).
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Test hook: corrupt the first report's right-hand side.
    #[arg(long, hide = true)]
    inject_mismatch: bool,
}

#[derive(Args)]
struct EvalArgs {
    /// One of: knuth-lhs, theorem-even, theorem-odd, corollary-even,
    /// corollary-odd, master-even, master-odd, gauss-second.
    #[arg(long)]
    identity: String,
    /// Oracle summation bound (knuth-lhs, master-*, gauss-second).
    #[arg(long)]
    n: Option<u64>,
    /// Outer parameter for closed forms.
    #[arg(long)]
    nu: Option<u64>,
    /// Shift parameter.
    #[arg(long)]
    i: Option<u64>,
    /// Rational `p/q` (alpha for master-*, b for gauss-second).
    #[arg(long)]
    alpha: Option<String>,
    /// Evaluation mode: `exact` or `float`.
    #[arg(long, default_value = "exact")]
    mode: String,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    identity: String,
    #[arg(long, default_value = "0..10")]
    nu: String,
    #[arg(long, default_value = "0..3")]
    i: String,
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long)]
    out: Option<String>,
}

struct UsageError(String);

macro_rules! usage_from {
    ($($ty:ty),*) => {$(
        impl From<$ty> for UsageError {
            fn from(e: $ty) -> Self {
                UsageError(e.to_string())
            }
        }
    )*};
}

usage_from!(
    String,
    hypersum_core::verify::VerifyError,
    hypersum_core::identities::IdentityError,
    hypersum_core::hypergeom::MasterError,
    hypersum_core::hypergeom::GaussError
);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => run_verify(args),
        Command::Eval(args) => run_eval(args),
        Command::Table(args) => run_table(args),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<u64>, UsageError> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| UsageError(format!("range `{s}` must be `a..b` (inclusive)")))?;
    let a: u64 = a.trim().parse().map_err(|_| UsageError(format!("bad range start `{a}`")))?;
    let b: u64 = b.trim().parse().map_err(|_| UsageError(format!("bad range end `{b}`")))?;
    Ok(a..=b)
}

fn parse_rational(s: &str) -> Result<BigRational, UsageError> {
    BigRational::from_str(s.trim())
        .map_err(|e| UsageError(format!("bad rational `{s}`: {e}")))
}

fn parse_mode(mode: &str, tol: f64) -> Result<EvalMode, UsageError> {
    match mode {
        "exact" => Ok(EvalMode::Exact),
        "float" => {
            if tol <= 0.0 {
                return Err(UsageError("tolerance must be positive".into()));
            }
            Ok(EvalMode::Float { tol })
        }
        other => Err(UsageError(format!("unknown mode `{other}` (exact|float)"))),
    }
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode, UsageError> {
    let nu = parse_range(&args.nu)?;
    let i = parse_range(&args.i)?;
    let mode = parse_mode(&args.mode, args.tol)?;
    let format = OutputFormat::from_str(&args.format)?;
    if args.workers == 0 {
        return Err(UsageError("--workers must be at least 1".into()));
    }
    let alphas = args
        .alpha
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<_>, _>>()?;

    let identities: Vec<IdentityId> = if args.identity == "all" {
        let mut ids = vec![
            IdentityId::KnuthEven,
            IdentityId::KnuthOdd,
            IdentityId::RiordanEven,
            IdentityId::RiordanOdd,
            IdentityId::TheoremEven,
            IdentityId::TheoremOdd,
            IdentityId::Corollary(Parity::Even),
            IdentityId::Corollary(Parity::Odd),
            IdentityId::GaussSecond,
        ];
        if !alphas.is_empty() {
            ids.push(IdentityId::MasterEven);
            ids.push(IdentityId::MasterOdd);
        }
        ids
    } else {
        vec![args.identity.parse::<IdentityId>()?]
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.workers)
        .build()
        .map_err(|e| UsageError(e.to_string()))?;

    let mut reports: Vec<VerificationReport> = Vec::new();
    for id in identities {
        let grid = GridSpec {
            nu: nu.clone(),
            // The corollary table stops at shift 3; clamp only in `all`
            // mode where the shared grid is a convenience.
            i: if matches!(id, IdentityId::Corollary(_)) && args.identity == "all" {
                *i.start()..=(*i.end()).min(3)
            } else {
                i.clone()
            },
            alphas: alphas.clone(),
            mode: match id {
                IdentityId::MasterEven | IdentityId::MasterOdd => match mode {
                    EvalMode::Exact => EvalMode::Float { tol: args.tol },
                    m => m,
                },
                _ => EvalMode::Exact,
            },
        };
        let mut batch = pool.install(|| verify(id, &grid))?;
        reports.append(&mut batch);
    }

    if args.inject_mismatch {
        if let Some(first) = reports.first_mut() {
            first.rhs = Value::Rational(match &first.rhs {
                Value::Rational(q) => q + big(1),
                Value::Real(x) => big(1) + BigRational::from_float(*x).unwrap_or_else(|| big(0)),
            });
            first.matched = false;
        }
    }

    let text = emit_table(&reports, format);
    write_out(&args.out, &text)?;

    let mismatches: Vec<&VerificationReport> = reports.iter().filter(|r| !r.matched).collect();
    if mismatches.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        for r in &mismatches {
            eprintln!(
                "mismatch: {} nu={} i={} alpha={} lhs={} rhs={}",
                r.identity,
                r.nu,
                r.i.map(|v| v.to_string()).unwrap_or_default(),
                r.alpha.as_ref().map(|q| q.to_string()).unwrap_or_default(),
                r.lhs,
                r.rhs
            );
        }
        Ok(ExitCode::from(1))
    }
}

fn run_eval(args: EvalArgs) -> Result<ExitCode, UsageError> {
    let need = |v: Option<u64>, name: &str| {
        v.ok_or_else(|| UsageError(format!("--{name} is required for this identity")))
    };
    let mode = parse_mode(&args.mode, args.tol)?;
    let value: String = match args.identity.as_str() {
        "knuth-lhs" => {
            let n = need(args.n, "n")?;
            let i = need(args.i, "i")?;
            knuth_lhs(n, i).to_string()
        }
        "theorem-even" => theorem_rhs(need(args.nu, "nu")?, need(args.i, "i")?, Parity::Even)?
            .to_string(),
        "theorem-odd" => theorem_rhs(need(args.nu, "nu")?, need(args.i, "i")?, Parity::Odd)?
            .to_string(),
        "corollary-even" => corollary_rhs(need(args.nu, "nu")?, need(args.i, "i")?, Parity::Even)?
            .to_string(),
        "corollary-odd" => corollary_rhs(need(args.nu, "nu")?, need(args.i, "i")?, Parity::Odd)?
            .to_string(),
        "master-even" | "master-odd" => {
            let n = need(args.n, "n")?;
            let i = need(args.i, "i")?;
            let alpha = parse_rational(
                args.alpha
                    .as_deref()
                    .ok_or_else(|| UsageError("--alpha is required".into()))?,
            )?;
            let v = if args.identity == "master-even" {
                master_even(n, &alpha, i, mode)?
            } else {
                master_odd(n, &alpha, i, mode)?
            };
            match v {
                MasterValue::Exact(q) => q.to_string(),
                MasterValue::Float(x) => format!("{x:.16e}"),
            }
        }
        "gauss-second" => {
            let m = need(args.n, "n")?;
            let b = parse_rational(
                args.alpha
                    .as_deref()
                    .ok_or_else(|| UsageError("--alpha is required (the b parameter)".into()))?,
            )?;
            let b = HalfInt::try_from_rational(&b)
                .ok_or_else(|| UsageError("b must be a half-integer".into()))?;
            let v = gauss_second(&HalfInt::from_int(-(m as i64)), &b)?;
            match v.as_rational() {
                Ok(q) => q.to_string(),
                Err(_) => v.to_string(),
            }
        }
        other => return Err(UsageError(format!("unknown eval identity `{other}`"))),
    };
    println!("{value}");
    Ok(ExitCode::SUCCESS)
}

fn run_table(args: TableArgs) -> Result<ExitCode, UsageError> {
    let nu = parse_range(&args.nu)?;
    let i_range = parse_range(&args.i)?;
    let format = OutputFormat::from_str(&args.format)?;
    let id: IdentityId = args.identity.parse()?;

    let mut rows: Vec<(String, u64, Option<u64>, Value)> = Vec::new();
    for nu_v in nu {
        match id {
            IdentityId::KnuthEven => rows.push((
                id.to_string(),
                nu_v,
                None,
                Value::Rational(hypersum_core::identities::classical::knuth_even_rhs(nu_v)),
            )),
            IdentityId::KnuthOdd => {
                rows.push((id.to_string(), nu_v, None, Value::Rational(big(0))))
            }
            IdentityId::RiordanEven => rows.push((
                id.to_string(),
                nu_v,
                None,
                Value::Rational(hypersum_core::identities::classical::riordan_even_rhs(nu_v)),
            )),
            IdentityId::RiordanOdd => rows.push((
                id.to_string(),
                nu_v,
                None,
                Value::Rational(hypersum_core::identities::classical::riordan_odd_rhs(nu_v)),
            )),
            IdentityId::TheoremEven | IdentityId::TheoremOdd => {
                let parity = if id == IdentityId::TheoremEven {
                    Parity::Even
                } else {
                    Parity::Odd
                };
                for i in i_range.clone() {
                    rows.push((
                        id.to_string(),
                        nu_v,
                        Some(i),
                        Value::Rational(theorem_rhs(nu_v, i, parity)?),
                    ));
                }
            }
            IdentityId::Corollary(parity) => {
                for i in i_range.clone() {
                    rows.push((
                        id.to_string(),
                        nu_v,
                        Some(i),
                        Value::Rational(corollary_rhs(nu_v, i, parity)?),
                    ));
                }
            }
            IdentityId::MasterEven | IdentityId::MasterOdd | IdentityId::GaussSecond => {
                return Err(UsageError(format!(
                    "`table` covers closed-form identities; `{id}` needs `verify`"
                )))
            }
        }
    }

    let text = emit_value_table(&rows, format);
    write_out(&args.out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn write_out(path: &Option<String>, text: &str) -> Result<(), UsageError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| UsageError(format!("cannot write {p}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
