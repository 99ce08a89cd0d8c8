//! The `reelcut` command line.
//!
//! Exit codes: 0 success, 1 I/O, parse or usage error, 2 schedule
//! violations (`validate` only), 3 unsatisfiable pool.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};

use crate::error::SolveError;
use crate::heuristics::{solve, Algorithm, SolveOptions, SolveResult, MAX_EXACT_ROLLS};
use crate::io::{parse_pool, parse_schedule, render_report, IoError, PoolFormat, ReportFormat};
use crate::model::{lower_bound_reels, total_demand_width, trim_loss, validate_schedule, DeckleSpec, OrderPool, Unit};

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_UNSATISFIABLE: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "reelcut",
    version,
    about = "Plan how jumbo paper reels are slit into customer rolls"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a pool and print the cutting schedule.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Algorithm::Coupling)]
        algorithm: Algorithm,
        #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
        format: ReportFormat,
        /// Print construction steps to standard error.
        #[arg(long)]
        trace: bool,
    },
    /// Check a JSON schedule document against a pool.
    Validate {
        #[command(flatten)]
        input: InputArgs,
        /// Schedule document to check.
        #[arg(long)]
        schedule: PathBuf,
    },
    /// Print the total demand width and the reel lower bound.
    Bound {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Run every solver on one pool and summarise the results.
    Compare {
        #[command(flatten)]
        input: InputArgs,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Pool file: `.json` for a pool document, anything else is read as CSV.
    pub pool: PathBuf,
    /// Nominal deckle width (CSV input only).
    #[arg(long)]
    pub deckle_width: Option<u64>,
    /// Width lost to trimming on every reel (CSV input only, default 0).
    #[arg(long)]
    pub trim_allowance: Option<u64>,
    /// Length unit, cm or mm (CSV input only).
    #[arg(long)]
    pub unit: Option<Unit>,
}

enum Failure {
    Error(String),
    Unsatisfiable(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Error(e.to_string())
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        if e.is_unsatisfiable() {
            Failure::Unsatisfiable(e.to_string())
        } else {
            Failure::Error(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Error(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            code
        }
    }
}

/// Runs a parsed command, writing the report to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(Failure::Error(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
        Err(Failure::Unsatisfiable(msg)) => {
            let _ = writeln!(err, "error: unsatisfiable pool: {msg}");
            EXIT_UNSATISFIABLE
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, Failure> {
    match &cli.command {
        Command::Solve {
            input,
            algorithm,
            format,
            trace,
        } => {
            let pool = load_pool(input)?;
            let options = SolveOptions {
                trace: *trace,
                ..SolveOptions::default()
            };
            let result = solve(&pool, *algorithm, &options)?;
            for line in result.trace.iter().flatten() {
                writeln!(err, "trace: {line}")?;
            }
            out.write_all(render_report(&result, &pool, *format)?.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Validate { input, schedule } => {
            let pool = load_pool(input)?;
            let parsed = parse_schedule(&read(schedule)?)?;
            let report = validate_schedule(&parsed.schedule, &pool);
            if report.is_valid() {
                let metrics = trim_loss(&parsed.schedule, &pool).map_err(SolveError::from)?;
                writeln!(
                    out,
                    "valid: {} reels, {} waste ({})",
                    metrics.used_reels,
                    metrics.trim_loss,
                    pool.deckle().unit()
                )?;
                Ok(EXIT_OK)
            } else {
                writeln!(out, "invalid: {} violation(s)", report.violations.len())?;
                for v in &report.violations {
                    writeln!(out, "  {v}")?;
                }
                Ok(EXIT_INVALID)
            }
        }
        Command::Bound { input } => {
            let pool = load_pool(input)?;
            let bound = lower_bound_reels(&pool).map_err(SolveError::from)?;
            writeln!(out, "demand_width={} lower_bound={bound}", total_demand_width(&pool))?;
            Ok(EXIT_OK)
        }
        Command::Compare { input } => {
            let pool = load_pool(input)?;
            compare(&pool, out)?;
            Ok(EXIT_OK)
        }
    }
}

fn compare(pool: &OrderPool, out: &mut dyn Write) -> Result<(), Failure> {
    let bound = lower_bound_reels(pool).map_err(SolveError::from)?;
    let rolls = pool.total_rolls();
    let algorithms: Vec<Algorithm> = Algorithm::ALL
        .into_iter()
        .filter(|&a| a != Algorithm::Exact || rolls <= MAX_EXACT_ROLLS)
        .collect();
    let timed = |algorithm: Algorithm| -> (Result<SolveResult, SolveError>, Duration) {
        let start = Instant::now();
        let result = solve(pool, algorithm, &SolveOptions::default());
        (result, start.elapsed())
    };
    let results: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = algorithms.iter().map(|&a| scope.spawn(move || timed(a))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("solver thread panicked"))
            .collect()
    });

    writeln!(out, "demand_width={} lower_bound={bound}", total_demand_width(pool))?;
    writeln!(
        out,
        "{:<10} {:>7} {:>10} {:>10}",
        "algorithm", "reels", "trim_loss", "time_ms"
    )?;
    for (algorithm, (result, elapsed)) in algorithms.iter().zip(results) {
        let result = result?;
        writeln!(
            out,
            "{:<10} {:>7} {:>10} {:>10.3}",
            algorithm.as_str(),
            result.used_reels(),
            result.trim_loss(),
            elapsed.as_secs_f64() * 1e3
        )?;
    }
    if rolls > MAX_EXACT_ROLLS {
        writeln!(
            out,
            "exact skipped: {rolls} rolls exceeds the limit of {MAX_EXACT_ROLLS}"
        )?;
    }
    Ok(())
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::Error(format!("{}: {e}", path.display())))
}

fn load_pool(input: &InputArgs) -> Result<OrderPool, Failure> {
    let text = read(&input.pool)?;
    let is_json = input
        .pool
        .extension()
        .is_some_and(|ext| ext.eq_ignore_ascii_case("json"));
    let format = if is_json {
        if input.deckle_width.is_some() || input.trim_allowance.is_some() || input.unit.is_some() {
            return Err(Failure::Error(
                "deckle flags apply to CSV input only; JSON pools carry their own deckle".to_owned(),
            ));
        }
        PoolFormat::Structured
    } else {
        let (Some(width), Some(unit)) = (input.deckle_width, input.unit) else {
            return Err(Failure::Error("CSV input needs --deckle-width and --unit".to_owned()));
        };
        let deckle = DeckleSpec::new(width, input.trim_allowance.unwrap_or(0), unit)
            .map_err(|e| Failure::Error(e.to_string()))?;
        PoolFormat::Csv { deckle }
    };
    parse_pool(&text, format).map_err(|e| Failure::Error(format!("{}: {e}", input.pool.display())))
}
