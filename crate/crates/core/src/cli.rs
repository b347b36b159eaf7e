//! Command-line front end. `main.rs` only forwards to [`run`].
//!
//! Exit codes: 0 on success, 1 for usage errors (unknown flags or values),
//! 2 for data errors (unreadable or invalid files, arity mismatches,
//! unwritable outputs).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::bench::{format_summary, summarize, sweep, write_csv, BenchmarkConfig};
use crate::degree::{count_fully_occupied, DegreeKind};
use crate::horner::{factorize_greedy, factorize_optimal, SearchError, DEFAULT_NODE_BUDGET};
use crate::io::{read_polynomial, to_json, write_polynomial};
use crate::recipe::compile;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "polyhorner", version, about = "Horner factorisation and evaluation of multivariate polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the Horner factorisation of a polynomial file.
    Factorize(FactorizeArgs),
    /// Evaluate a polynomial file at a point.
    Eval(EvalArgs),
    /// Write a partial derivative as a polynomial file.
    Diff(DiffArgs),
    /// Count the monomials of a fully occupied polynomial.
    Count(CountArgs),
    /// Run the random-occupancy benchmark sweep.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct FactorizeArgs {
    input: PathBuf,
    /// Search for a minimal factorisation instead of using the greedy heuristic.
    #[arg(long)]
    optimal: bool,
    /// Maximum number of expanded search states.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET, value_parser = positive)]
    budget: usize,
    /// Append the compiled instruction listing.
    #[arg(long)]
    dump_recipe: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct EvalArgs {
    input: PathBuf,
    /// Comma-separated coordinates, e.g. "-2,3,1".
    #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
    point: Point,
    /// Evaluate the sum of monomials directly.
    #[arg(long, conflicts_with = "horner")]
    canonical: bool,
    /// Evaluate through the compiled Horner recipe (default).
    #[arg(long)]
    horner: bool,
}

#[derive(Debug, Clone)]
struct Point(Vec<f64>);

fn parse_point(s: &str) -> Result<Point, String> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| format!("`{v}` is not a number"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Point)
}

#[derive(Debug, Args)]
struct DiffArgs {
    input: PathBuf,
    /// Variable to differentiate by, 1-based.
    #[arg(long)]
    var: usize,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CountArgs {
    #[arg(long, value_parser = positive)]
    dim: usize,
    #[arg(long)]
    degree: u64,
    /// total, euclidean or maximal
    #[arg(long, value_parser = |s: &str| s.parse::<DegreeKind>().map_err(|e| e.to_string()))]
    kind: DegreeKind,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(format!("`{s}` is not a positive integer")),
    }
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 7, value_parser = positive)]
    max_dim: usize,
    #[arg(long, default_value_t = 7, value_parser = positive)]
    max_degree: usize,
    #[arg(long, default_value_t = 5, value_parser = positive)]
    polys_per_cell: usize,
    #[arg(long, default_value_t = 100, value_parser = positive)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV output path.
    #[arg(long)]
    out: PathBuf,
}

struct DataError(String);

impl<E: std::fmt::Display> From<E> for DataError {
    fn from(e: E) -> Self {
        DataError(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Factorize(a) => cmd_factorize(a, stdout, stderr),
        Command::Eval(a) => cmd_eval(a, stdout),
        Command::Diff(a) => cmd_diff(a, stdout),
        Command::Count(a) => cmd_count(a, stdout),
        Command::Bench(a) => cmd_bench(a, stdout, stderr),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(DataError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_DATA
        }
    }
}

fn cmd_factorize(a: FactorizeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), DataError> {
    let file = read_polynomial(&a.input)?;
    let p = &file.polynomial;
    let mut search = None;
    let f = if a.optimal {
        match factorize_optimal(p, a.budget) {
            Ok(r) => {
                search = Some((r.expansions, r.exhausted));
                r.factorisation
            }
            Err(SearchError::BudgetExhausted { budget, fallback }) => {
                writeln!(err, "warning: search budget {budget} exhausted, using greedy factorisation")?;
                search = Some((budget, true));
                *fallback
            }
        }
    } else {
        factorize_greedy(p)
    };
    let rendered = f.render(p.coefficients())?;
    let recipe = a.dump_recipe.then(|| compile(&f));

    if a.json {
        let mut doc = json!({
            "factorisation": rendered,
            "ops_horner": f.op_count(),
            "ops_canonical": p.num_ops_canonical(),
            "method": if a.optimal { "optimal" } else { "greedy" },
        });
        if let Some(name) = &file.name {
            doc["name"] = json!(name);
        }
        if let Some((expansions, exhausted)) = search {
            doc["search"] = json!({ "expansions": expansions, "exhausted": exhausted });
        }
        if let Some(r) = &recipe {
            doc["recipe"] = json!(r.instructions().iter().map(|i| i.to_string()).collect::<Vec<_>>());
        }
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    } else {
        writeln!(out, "{rendered}")?;
        writeln!(out, "ops_horner: {}", f.op_count())?;
        writeln!(out, "ops_canonical: {}", p.num_ops_canonical())?;
        if let Some((expansions, exhausted)) = search {
            writeln!(out, "search_expansions: {expansions}")?;
            writeln!(out, "search_exhausted: {exhausted}")?;
        }
        if let Some(r) = &recipe {
            writeln!(out, "recipe:")?;
            write!(out, "{}", r.dump())?;
        }
    }
    Ok(())
}

fn cmd_eval(a: EvalArgs, out: &mut dyn Write) -> Result<(), DataError> {
    let file = read_polynomial(&a.input)?;
    let p = &file.polynomial;
    let x = &a.point.0;
    let value = if a.canonical {
        p.eval(x)?
    } else {
        compile(&factorize_greedy(p)).eval(p.coefficients(), x)?
    };
    writeln!(out, "{value}")?;
    Ok(())
}

fn cmd_diff(a: DiffArgs, out: &mut dyn Write) -> Result<(), DataError> {
    let file = read_polynomial(&a.input)?;
    let p = &file.polynomial;
    if a.var == 0 || a.var > p.dimension() {
        return Err(DataError(format!(
            "--var {} out of range 1..={}",
            a.var,
            p.dimension()
        )));
    }
    let d = p.partial_derivative(a.var - 1)?;
    let name = file.name.as_ref().map(|n| format!("d({n})/dx_{}", a.var));
    match &a.out {
        Some(path) => write_polynomial(path, &d, name.as_deref())?,
        None => write!(out, "{}", to_json(&d, name.as_deref()))?,
    }
    Ok(())
}

fn cmd_count(a: CountArgs, out: &mut dyn Write) -> Result<(), DataError> {
    let count = count_fully_occupied(a.dim, a.degree, a.kind)?;
    writeln!(out, "{count}")?;
    Ok(())
}

fn cmd_bench(a: BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), DataError> {
    let config = BenchmarkConfig::new(a.max_dim, a.max_degree, a.polys_per_cell, a.trials, a.seed);
    let report = sweep(&config)?;
    for s in &report.skipped {
        writeln!(err, "skipped cell m={} n={}: {}", s.m, s.n, s.reason)?;
    }
    let mut csv = Vec::new();
    write_csv(&mut csv, &report.records)?;
    fs::write(&a.out, csv).map_err(|e| DataError(format!("cannot write {}: {e}", a.out.display())))?;
    if !report.records.is_empty() {
        write!(out, "{}", format_summary(&summarize(&report.records)?))?;
    }
    Ok(())
}
