//! Experiment orchestration behind the `polyent` binary.
//!
//! A run takes an [`ExperimentConfig`] (usually from TOML), produces a
//! [`ReportSet`], and maps the outcome onto the exit-code contract:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | every check passed |
//! | 2 | inequality violations after escalation, or failed checkpoints |
//! | 3 | config or input error |
//! | 4 | numerical failure |
//!
//! JSONL output is byte-identical for identical configs apart from the
//! `wall_clock_s` metadata field.

mod config;
mod report;
mod run;

pub use config::{beta_grid, Command, ExperimentConfig, Format, DEFAULT_BETA_STEP, DEFAULT_SUITE_BETAS};
pub use report::{Checkpoint, Metadata, Record, ReportSet, Summary, CSV_COLUMNS};
pub use run::{run_check, run_random_suite, run_reproduce_paper, run_sweep_beta};

use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

/// Environment variable that caps the worker pool.
pub const THREADS_ENV: &str = "POLYENT_THREADS";

pub fn exit_code(outcome: &Result<ReportSet>) -> i32 {
    match outcome {
        Ok(set) if set.passed() => EXIT_OK,
        Ok(_) => EXIT_VIOLATIONS,
        Err(e) => error_code(e),
    }
}

pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::NumericalFailure(_) | Error::NotPsd(_) => EXIT_NUMERICAL,
        _ => EXIT_CONFIG,
    }
}

/// Sizes the global rayon pool from `POLYENT_THREADS`; unset means all cores.
pub fn init_thread_pool() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Config(format!("{THREADS_ENV}={raw} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))
}

/// Runs `cfg` under `command`.
pub fn run(command: Command, cfg: &ExperimentConfig) -> Result<ReportSet> {
    match command {
        Command::ReproducePaper => run_reproduce_paper(cfg),
        Command::RandomSuite => run_random_suite(cfg),
        Command::SweepBeta => run_sweep_beta(cfg),
        Command::Check => run_check(cfg),
    }
}

/// Writes to `cfg.output` when set, else to stdout.
pub fn emit(set: &ReportSet, cfg: &ExperimentConfig) -> Result<()> {
    match &cfg.output {
        Some(path) => {
            let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
            set.write(cfg.format, &mut f)?;
            std::io::Write::flush(&mut f)?;
            Ok(())
        }
        None => set.write(cfg.format, &mut std::io::stdout().lock()),
    }
}
