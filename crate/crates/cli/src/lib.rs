//! Front end for `disperse-core`: argument parsing, sweep dispatch and
//! CSV/JSON output.

mod args;
pub mod emit;
pub mod number;

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use disperse_core::scan::{linspace, Scanner};
use disperse_core::SystemParams;

pub use args::{parse_args, Command, Format, RunConfig};

/// Environment variable capping sweep threads (0 or unset: all cores).
pub const THREADS_ENV: &str = "LAMBDA_DISPERSE_THREADS";

#[derive(Debug)]
pub enum RunError {
    Io { path: Option<PathBuf>, source: io::Error },
    Compute(disperse_core::Error),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Io { path: Some(p), source } => write!(f, "{}: {source}", p.display()),
            RunError::Io { path: None, source } => write!(f, "standard output: {source}"),
            RunError::Compute(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for RunError {}

impl From<disperse_core::Error> for RunError {
    fn from(e: disperse_core::Error) -> Self {
        RunError::Compute(e)
    }
}

/// What a successful run produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Done,
    /// `validate` ran to completion but the report did not pass.
    ValidationFailed,
}

/// Parses the thread cap from the raw environment value.
pub fn thread_cap(value: Option<&str>) -> Result<usize, String> {
    match value.map(str::trim) {
        None | Some("") => Ok(0),
        Some(v) => v.parse().map_err(|_| format!("{THREADS_ENV} must be a non-negative integer, got `{v}`")),
    }
}

/// The parameter sets swept by `validate`, splitting-major.
pub fn validation_cases(base: &SystemParams, omegas: &[f64], rates: &[f64]) -> Vec<SystemParams> {
    omegas.iter().flat_map(|&w| rates.iter().map(move |&r| base.with_omega(w).with_rate(r))).collect()
}

/// Runs `config` with at most `threads` sweep threads (0: all cores).
pub fn run(config: &RunConfig, threads: usize) -> Result<Outcome, RunError> {
    disperse_core::exec::with_thread_cap(threads, || run_inner(config))
}

fn run_inner(config: &RunConfig) -> Result<Outcome, RunError> {
    let scanner = Scanner::default();
    let p = &config.params;
    let mut buf = Vec::new();
    let mut outcome = Outcome::Done;
    let io_err = |source| RunError::Io { path: None, source };
    match &config.command {
        Command::Spectrum { delta_min, delta_max, points } => {
            let series = scanner.spectrum(p, *delta_min, *delta_max, *points)?;
            emit::spectrum(&mut buf, &series, config.format).map_err(io_err)?;
        }
        Command::RegimeMap { r, omega } => {
            let grid = scanner.regime_map(p, *r, *omega)?;
            emit::regime_map(&mut buf, &grid, config.format).map_err(io_err)?;
        }
        Command::GroupIndex { omegas, r_min, r_max, n_r } => {
            let curves = scanner.group_index(p, omegas, *r_min, *r_max, *n_r)?;
            emit::group_index(&mut buf, p, &curves, config.format).map_err(io_err)?;
        }
        Command::Validate { omegas, rates, delta, tolerance } => {
            let cases = validation_cases(p, omegas, rates);
            let grid = linspace(delta.0, delta.1, delta.2)?;
            let report = scanner.validate(&cases, &grid, *tolerance)?;
            emit::validation(&mut buf, p, &cases, &grid, &report, config.format).map_err(io_err)?;
            for f in &report.failures {
                eprintln!("case {}: {}", f.case_id, f.message);
            }
            eprintln!(
                "validate: {} cases, {} points, max |Δχ| = {:e} (tolerance {:e}): {}",
                cases.len(),
                report.cases.len(),
                report.max_error,
                report.tolerance,
                if report.pass { "pass" } else { "FAIL" }
            );
            if !report.pass {
                outcome = Outcome::ValidationFailed;
            }
        }
    }
    write_output(config.output.as_ref(), &buf)?;
    Ok(outcome)
}

fn write_output(path: Option<&PathBuf>, bytes: &[u8]) -> Result<(), RunError> {
    match path {
        Some(path) => {
            let wrap = |source| RunError::Io { path: Some(path.clone()), source };
            let mut w = BufWriter::new(File::create(path).map_err(wrap)?);
            w.write_all(bytes).map_err(wrap)?;
            w.flush().map_err(wrap)
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes).and_then(|()| out.flush()).map_err(|source| RunError::Io { path: None, source })
        }
    }
}
