//! Command-line front end. [`run`] returns the process exit code:
//! 0 pass, 1 property violated, 2 input or build error, 3 search budget exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::calibrate::calibrate_interpretation;
use crate::coloring::{build_matrix, classify, InterpretationConfig};
use crate::coverage::partition_coverage;
use crate::io::{self, Format};
use crate::search::{min_colors_exhaustive, verify_bound_witness, SearchParams, SearchStatus, WitnessStatus};
use crate::verifier::{
    distinct_histogram, verify_fast_with, verify_naive_with, Violation, VerifyOptions, DEFAULT_MAX_STORED,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Largest order for which `bench` also times the naive verifier.
pub const NAIVE_BENCH_LIMIT: usize = 60;

#[derive(Debug, Parser)]
#[command(name = "almost-rainbow", version, about = "Almost-rainbow C4 colorings of K_{n,n}")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the coloring matrix for order n.
    Generate(GenerateArgs),
    /// Check that every 2x2 submatrix has at least three colors.
    Verify(VerifyArgs),
    /// Build and verify every even n in a range, one JSON record per line.
    Sweep(SweepArgs),
    /// Exact minimum color count for tiny K_{rows,cols} by backtracking.
    Search(SearchArgs),
    /// Time the naive and fast verifiers.
    Bench(BenchArgs),
    /// Try every interpretation variant on a list of orders.
    Calibrate(CalibrateArgs),
    /// Count quadruples and violations per proof region.
    Coverage(CoverageArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Naive,
    Fast,
    Both,
}

#[derive(Debug, Args)]
pub struct InterpretationArg {
    /// Interpretation variant, e.g. `default` or `asc-shifted-1`.
    #[arg(long, default_value = "default")]
    pub interpretation: String,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "json")]
    pub format: FormatArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub interp: InterpretationArg,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["n", "input"])))]
pub struct VerifyArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "fast")]
    pub algo: Algo,
    #[arg(long, default_value_t = DEFAULT_MAX_STORED)]
    pub max_stored: usize,
    /// Also print the distinct-color histogram (naive enumeration).
    #[arg(long)]
    pub histogram: bool,
    #[command(flatten)]
    pub interp: InterpretationArg,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub from: usize,
    #[arg(long)]
    pub to: usize,
    /// JSON-lines findings file; stdout when absent.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[command(flatten)]
    pub interp: InterpretationArg,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub rows: usize,
    #[arg(long)]
    pub cols: usize,
    #[arg(long, default_value_t = 3)]
    pub q: u8,
    /// Defaults to rows * cols.
    #[arg(long)]
    pub max_colors: Option<u32>,
    #[arg(long, default_value_t = crate::search::DEFAULT_NODE_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct CoverageArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub interp: InterpretationArg,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let _ = if code == EXIT_PASS { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(CliError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

type CliResult = Result<i32, CliError>;

fn interpretation(arg: &InterpretationArg) -> Result<InterpretationConfig, CliError> {
    InterpretationConfig::from_name(&arg.interpretation)
        .ok_or_else(|| CliError(format!("unknown interpretation {:?}", arg.interpretation)))
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Generate(a) => cmd_generate(&a, out),
        Command::Verify(a) => cmd_verify(&a, out, err),
        Command::Sweep(a) => cmd_sweep(&a, out, err),
        Command::Search(a) => cmd_search(&a, out, err),
        Command::Bench(a) => cmd_bench(&a, out),
        Command::Calibrate(a) => cmd_calibrate(&a, out),
        Command::Coverage(a) => cmd_coverage(&a, out),
    }
}

fn cmd_generate(a: &GenerateArgs, out: &mut dyn Write) -> CliResult {
    let cfg = interpretation(&a.interp)?;
    let mat = build_matrix(a.n, &cfg)?;
    let text = io::write(&mat, a.format.into());
    match &a.out {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_PASS)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let grid = match (&a.input, a.n) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
            let parsed = io::parse(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
            parsed.grid
        }
        (None, Some(n)) => build_matrix(n, &interpretation(&a.interp)?)?.into_grid(),
        (None, None) => return Err(CliError("one of --n or --input is required".into())),
    };
    let opts = VerifyOptions { max_stored: a.max_stored };
    let report = match a.algo {
        Algo::Naive => verify_naive_with(&grid, &opts),
        Algo::Fast => verify_fast_with(&grid, &opts),
        Algo::Both => {
            let naive = verify_naive_with(&grid, &opts);
            let fast = verify_fast_with(&grid, &opts);
            if naive != fast {
                writeln!(err, "error: naive and fast reports differ")?;
                writeln!(err, "naive: {}", naive.to_json())?;
                writeln!(err, "fast:  {}", fast.to_json())?;
                return Ok(EXIT_VIOLATION);
            }
            fast
        }
    };
    writeln!(out, "{}", report.to_json())?;
    if a.histogram {
        let h = distinct_histogram(&grid);
        writeln!(out, "{}", serde_json::json!({ "distinct_histogram": { "1": h[1], "2": h[2], "3": h[3], "4": h[4] } }))?;
    }
    Ok(if report.passes() { EXIT_PASS } else { EXIT_VIOLATION })
}

/// One line of the sweep findings report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRecord {
    pub n: usize,
    #[serde(rename = "type")]
    pub type_tag: String,
    pub status: WitnessStatus,
    pub colors_used: usize,
    pub violations: u64,
    pub elapsed_ms: f64,
    /// One of the hand-specified exception orders (6, 10, 16, 22).
    pub exceptional: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Sweep records for every even `n` in `from..=to`, in ascending order.
pub fn sweep_records(from: usize, to: usize, cfg: &InterpretationConfig) -> Vec<SweepRecord> {
    (from..=to)
        .filter(|n| n % 2 == 0)
        .map(|n| {
            let w = verify_bound_witness(n, cfg);
            SweepRecord {
                n,
                type_tag: w.type_label.to_string(),
                status: w.status,
                colors_used: w.colors_used,
                violations: w.violations,
                elapsed_ms: w.elapsed_ms,
                exceptional: classify(n).is_exceptional(),
                counterexample: w.first_violation,
                detail: w.detail,
            }
        })
        .collect()
}

fn cmd_sweep(a: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    if a.from > a.to {
        return Err(CliError(format!("--from {} is greater than --to {}", a.from, a.to)));
    }
    let cfg = interpretation(&a.interp)?;
    let records = sweep_records(a.from, a.to, &cfg);
    let mut lines = String::new();
    for r in &records {
        lines.push_str(&serde_json::to_string(r)?);
        lines.push('\n');
    }
    match &a.report {
        Some(path) => fs::write(path, lines)?,
        None => out.write_all(lines.as_bytes())?,
    }
    let mut failed = false;
    for r in &records {
        let bad = matches!(r.status, WitnessStatus::Fail | WitnessStatus::CornerMismatch | WitnessStatus::BuildError);
        if !bad {
            continue;
        }
        if r.exceptional {
            let detail = r.counterexample.as_ref().map(|v| format!(" first counterexample {v:?}")).unwrap_or_default();
            writeln!(err, "finding: exceptional n={} is {:?} ({} violations){detail}", r.n, r.status, r.violations)?;
        } else {
            failed = true;
            writeln!(err, "FAIL: n={} is {:?} ({} violations)", r.n, r.status, r.violations)?;
        }
    }
    Ok(if failed { EXIT_VIOLATION } else { EXIT_PASS })
}

fn cmd_search(a: &SearchArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let max_colors = a.max_colors.unwrap_or((a.rows * a.cols) as u32);
    let params = SearchParams { budget: a.budget, ..SearchParams::new(a.rows, a.cols, a.q, max_colors) };
    let result = min_colors_exhaustive(&params)?;
    writeln!(out, "{}", serde_json::to_string(&result)?)?;
    Ok(match result.status {
        SearchStatus::Exact => EXIT_PASS,
        SearchStatus::Infeasible => {
            writeln!(err, "no coloring with at most {max_colors} colors: min_colors > {max_colors}")?;
            EXIT_PASS
        }
        SearchStatus::Budget => {
            writeln!(err, "node budget {} exhausted; minimum unknown (>= {})", a.budget, result.lower_bound)?;
            EXIT_BUDGET
        }
    })
}

#[derive(Serialize)]
struct BenchRecord {
    n: usize,
    fast_ms: f64,
    naive_ms: Option<f64>,
}

fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> CliResult {
    let cfg = InterpretationConfig::default();
    let opts = VerifyOptions::default();
    let mut records = Vec::new();
    for &n in &a.n {
        let mat = build_matrix(n, &cfg)?;
        let start = Instant::now();
        verify_fast_with(mat.grid(), &opts);
        let fast_ms = start.elapsed().as_secs_f64() * 1e3;
        let naive_ms = (n <= NAIVE_BENCH_LIMIT).then(|| {
            let start = Instant::now();
            verify_naive_with(mat.grid(), &opts);
            start.elapsed().as_secs_f64() * 1e3
        });
        records.push(BenchRecord { n, fast_ms, naive_ms });
    }
    writeln!(out, "{}", serde_json::to_string(&records)?)?;
    Ok(EXIT_PASS)
}

fn cmd_calibrate(a: &CalibrateArgs, out: &mut dyn Write) -> CliResult {
    let (_, report) = calibrate_interpretation(&a.n)?;
    writeln!(out, "{}", serde_json::to_string(&report)?)?;
    Ok(if report.passing == report.total { EXIT_PASS } else { EXIT_VIOLATION })
}

fn cmd_coverage(a: &CoverageArgs, out: &mut dyn Write) -> CliResult {
    let mat = build_matrix(a.n, &interpretation(&a.interp)?)?;
    let map = partition_coverage(&mat)?;
    writeln!(out, "{}", serde_json::to_string(&map)?)?;
    Ok(if map.total_violations() == 0 { EXIT_PASS } else { EXIT_VIOLATION })
}
