//! `ncinst`: exact verification of the θ-deformed instanton from the
//! command line.
//!
//! Exit codes: `0` when every check passes, `1` when one fails, `2` on a
//! usage or parse error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ncinst::algebra::Deformation;
use ncinst::frontend::{parse_element, run_suite, RunOptions};
use ncinst::geometry::{presentation, AlgebraKind};
use ncinst::index::{moduli_index, numeric_charge, top_charge, ChernVector};
use ncinst::symmetry::brackets::{check_table, monomial_panel, Expected};
use ncinst::symmetry::{s4_action, s7_action, Generator, Variant};

#[derive(Parser)]
#[command(name = "ncinst", version, about = "Exact symbolic checks for the θ-deformed instanton on the four-sphere")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algebra {
    S4,
    S7,
    Chart,
}

impl Algebra {
    fn kind(self) -> AlgebraKind {
        match self {
            Algebra::S4 => AlgebraKind::S4,
            Algebra::S7 => AlgebraKind::S7,
            Algebra::Chart => AlgebraKind::Chart,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Sphere {
    S4,
    S7,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and print one line per check.
    Verify {
        /// A suite name or `all`.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Worker threads; 0 uses one per core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Record wall-clock times (reports then differ between runs).
        #[arg(long)]
        timings: bool,
    },
    /// Print the normal form of an expression.
    Eval {
        #[arg(long, value_enum)]
        algebra: Algebra,
        expr: String,
        /// Evaluate at q = 1.
        #[arg(long)]
        q1: bool,
    },
    /// Compute the topological charge and the moduli index.
    Index {
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Integrate the classical charge density numerically.
    Charge {
        #[arg(long, default_value_t = 1e-6, allow_negative_numbers = true)]
        rtol: f64,
    },
    /// Verify the so(5,1) bracket table on a sphere and print the extracted
    /// structure constants.
    Brackets {
        #[arg(long, value_enum)]
        algebra: Sphere,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn write_json(path: &PathBuf, text: &str) -> Result<(), ExitCode> {
    std::fs::write(path, text).map_err(|e| {
        eprintln!("cannot write {}: {}", path.display(), e);
        ExitCode::from(2)
    })
}

/// Writes to stdout, ignoring a closed pipe (as in `ncinst ... | head`).
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn verify(suite: &str, opts: RunOptions, json: Option<PathBuf>) -> Result<ExitCode, ExitCode> {
    let report = run_suite(suite, opts).map_err(|e| {
        eprintln!("{}", e);
        ExitCode::from(2)
    })?;
    emit(&report.to_text());
    if let Some(path) = json {
        write_json(&path, &report.to_json())?;
    }
    Ok(status(report.all_passed()))
}

fn eval(algebra: Algebra, expr: &str, q1: bool) -> Result<ExitCode, ExitCode> {
    let d = if q1 { Deformation::Classical } else { Deformation::Formal };
    let pres = presentation(algebra.kind(), d);
    let e = parse_element(expr, &pres).map_err(|e| {
        eprintln!("{}", e);
        ExitCode::from(2)
    })?;
    emit(&(e.render() + "\n"));
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct IndexOutput {
    top_charge: String,
    moduli_index: String,
}

fn index(json: Option<PathBuf>) -> Result<ExitCode, ExitCode> {
    let top = top_charge(ChernVector::instanton().ch2_gamma5_coeff);
    let idx = moduli_index(&ChernVector::spinor_minus(), &ChernVector::adjoint()).map_err(|e| {
        eprintln!("{}", e);
        ExitCode::from(1)
    })?;
    emit(&format!("top_charge = {}\nmoduli_index = {}\n", top, idx));
    if let Some(path) = json {
        let out = IndexOutput { top_charge: top.to_string(), moduli_index: idx.to_string() };
        write_json(&path, &(serde_json::to_string_pretty(&out).expect("serializes") + "\n"))?;
    }
    Ok(status(top == 1.into() && idx == 5.into()))
}

fn charge(rtol: f64) -> Result<ExitCode, ExitCode> {
    if !(rtol > 0.0 && rtol < 1.0) {
        eprintln!("--rtol must lie in (0, 1), got {}", rtol);
        return Err(ExitCode::from(2));
    }
    let c = numeric_charge(rtol).map_err(|e| {
        eprintln!("{}", e);
        ExitCode::from(1)
    })?;
    let ok = (c - 1.0).abs() <= rtol;
    emit(&format!("charge = {:.12} ({} rtol {:e})\n", c, if ok { "within" } else { "outside" }, rtol));
    Ok(status(ok))
}

#[derive(Serialize)]
struct BracketRow {
    bracket: String,
    expected: String,
    constant: Option<String>,
    status: &'static str,
    detail: Option<String>,
}

fn brackets(sphere: Sphere, json: Option<PathBuf>) -> Result<ExitCode, ExitCode> {
    let d = Deformation::Formal;
    let action = match sphere {
        Sphere::S4 => s4_action(d, Variant::Corrected),
        Sphere::S7 => s7_action(d, Variant::Corrected),
    };
    let panel = monomial_panel(action.presentation(), 50, 0);
    let reports = check_table(&action, &Generator::all(), &panel);
    let mut rows = Vec::new();
    let mut text = String::new();
    for r in &reports {
        let constant = r.constant.as_ref().map(|c| c.to_string());
        let expected = match (&r.expected, &constant) {
            (Expected::Proportional(g), Some(c)) => format!("({})*{}", c, g),
            (e, _) => e.to_string(),
        };
        let ok = r.holds();
        text.push_str(&format!("{} = {}: {}\n", r.label(), expected, if ok { "pass" } else { "fail" }));
        if !ok {
            text.push_str(&format!("  {}\n", r.failures.join("; ")));
        }
        rows.push(BracketRow {
            bracket: r.label(),
            expected,
            constant,
            status: if ok { "pass" } else { "fail" },
            detail: if ok { None } else { Some(r.failures.join("; ")) },
        });
    }
    emit(&text);
    if let Some(path) = json {
        write_json(&path, &(serde_json::to_string_pretty(&rows).expect("serializes") + "\n"))?;
    }
    Ok(status(reports.iter().all(|r| r.holds())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify { suite, seed, json, jobs, timings } => verify(&suite, RunOptions { seed, jobs, timings }, json),
        Command::Eval { algebra, expr, q1 } => eval(algebra, &expr, q1),
        Command::Index { json } => index(json),
        Command::Charge { rtol } => charge(rtol),
        Command::Brackets { algebra, json } => brackets(algebra, json),
    };
    outcome.unwrap_or_else(|code| code)
}
