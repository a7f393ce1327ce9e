//! Report rendering: CSV and JSON are lossless machine formats (rationals
//! as `p/q` strings, floats at 17 significant digits); Markdown and LaTeX
//! are human tables. Row order is the deterministic grid order, so output
//! is byte-stable across runs and worker counts.

use std::fmt::Write as _;

use hypersum_core::hypergeom::EvalMode;
use hypersum_core::verify::{Value, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
    Markdown,
    Latex,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "markdown" => Ok(OutputFormat::Markdown),
            "latex" => Ok(OutputFormat::Latex),
            _ => Err(format!("unknown format `{s}` (csv|json|markdown|latex)")),
        }
    }
}

pub const CSV_HEADER: &str = "identity,nu,i,alpha,mode,lhs,rhs,matched";

fn mode_str(mode: EvalMode) -> String {
    match mode {
        EvalMode::Exact => "exact".into(),
        EvalMode::Float { tol } => format!("float({tol:e})"),
    }
}

fn opt_u64(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn opt_rational(v: &Option<hypersum_core::BigRational>) -> String {
    v.as_ref().map(|q| q.to_string()).unwrap_or_default()
}

pub fn emit_table(reports: &[VerificationReport], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => emit_csv(reports),
        OutputFormat::Json => emit_json(reports),
        OutputFormat::Markdown => emit_markdown(reports),
        OutputFormat::Latex => emit_latex(reports),
    }
}

fn emit_csv(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in reports {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.identity,
            r.nu,
            opt_u64(r.i),
            opt_rational(&r.alpha),
            mode_str(r.mode),
            r.lhs,
            r.rhs,
            r.matched
        )
        .unwrap();
    }
    out
}

fn emit_json(reports: &[VerificationReport]) -> String {
    let rows: Vec<serde_json::Value> = reports
        .iter()
        .map(|r| {
            serde_json::json!({
                "identity": r.identity.to_string(),
                "nu": r.nu,
                "i": r.i,
                "alpha": r.alpha.as_ref().map(|q| q.to_string()),
                "mode": mode_str(r.mode),
                "lhs": r.lhs.to_string(),
                "rhs": r.rhs.to_string(),
                "matched": r.matched,
            })
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("report serialization");
    s.push('\n');
    s
}

fn emit_markdown(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    out.push_str("| identity | nu | i | alpha | mode | lhs | rhs | matched |\n");
    out.push_str("|---|---|---|---|---|---|---|---|\n");
    for r in reports {
        writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} |",
            r.identity,
            r.nu,
            opt_u64(r.i),
            opt_rational(&r.alpha),
            mode_str(r.mode),
            r.lhs,
            r.rhs,
            r.matched
        )
        .unwrap();
    }
    out
}

fn latex_value(v: &Value) -> String {
    match v {
        Value::Rational(q) => {
            if q.is_integer() {
                format!("${q}$")
            } else {
                let sign = if q < &hypersum_core::big(0) { "-" } else { "" };
                let numer = q.numer().magnitude();
                format!("${sign}\\frac{{{}}}{{{}}}$", numer, q.denom())
            }
        }
        Value::Real(x) => format!("${x:.16e}$"),
    }
}

fn emit_latex(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    out.push_str("\\begin{tabular}{llllllll}\n");
    out.push_str("identity & $\\nu$ & $i$ & $\\alpha$ & mode & lhs & rhs & matched \\\\\n\\hline\n");
    for r in reports {
        writeln!(
            out,
            "{} & {} & {} & {} & {} & {} & {} & {} \\\\",
            r.identity,
            r.nu,
            opt_u64(r.i),
            opt_rational(&r.alpha),
            mode_str(r.mode),
            latex_value(&r.lhs),
            latex_value(&r.rhs),
            r.matched
        )
        .unwrap();
    }
    out.push_str("\\end{tabular}\n");
    out
}

/// Closed-form value tables (the `table` subcommand): identity, grid point,
/// and the closed-form value only.
pub fn emit_value_table(
    rows: &[(String, u64, Option<u64>, Value)],
    format: OutputFormat,
) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            out.push_str("identity,nu,i,value\n");
            for (id, nu, i, v) in rows {
                writeln!(out, "{id},{nu},{},{v}", opt_u64(*i)).unwrap();
            }
        }
        OutputFormat::Json => {
            let vals: Vec<serde_json::Value> = rows
                .iter()
                .map(|(id, nu, i, v)| {
                    serde_json::json!({
                        "identity": id, "nu": nu, "i": i, "value": v.to_string(),
                    })
                })
                .collect();
            out = serde_json::to_string_pretty(&vals).expect("table serialization");
            out.push('\n');
        }
        OutputFormat::Markdown => {
            out.push_str("| identity | nu | i | value |\n|---|---|---|---|\n");
            for (id, nu, i, v) in rows {
                writeln!(out, "| {id} | {nu} | {} | {v} |", opt_u64(*i)).unwrap();
            }
        }
        OutputFormat::Latex => {
            out.push_str("\\begin{tabular}{llll}\n");
            out.push_str("identity & $\\nu$ & $i$ & value \\\\\n\\hline\n");
            for (id, nu, i, v) in rows {
                writeln!(out, "{id} & {nu} & {} & {} \\\\", opt_u64(*i), latex_value(v)).unwrap();
            }
            out.push_str("\\end{tabular}\n");
        }
    }
    out
}
