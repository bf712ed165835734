use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use polyent::cli::{self, Command, ExperimentConfig, Format};
use polyent::polyineq::WeightMode;

#[derive(Parser)]
#[command(name = "polyent", version, about = "Entanglement of assistance and weighted polygamy checks")]
struct Args {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Three-qubit W-state checkpoints.
    ReproducePaper {
        /// Write JSONL here; the checkpoint table always goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random-state suite.
    RandomSuite {
        #[arg(long)]
        config: PathBuf,
    },
    /// Slack over a β grid for one state.
    SweepBeta {
        #[arg(long)]
        config: PathBuf,
    },
    /// One inequality on one state file.
    Check {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value = "A")]
        focus: String,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        mode: WeightMode,
        #[arg(long, default_value = "table")]
        format: Format,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn build(cmd: Cmd) -> polyent::Result<(Command, ExperimentConfig, bool)> {
    Ok(match cmd {
        Cmd::ReproducePaper { out } => {
            let cfg = ExperimentConfig { output: out, ..Default::default() };
            (Command::ReproducePaper, cfg, true)
        }
        Cmd::RandomSuite { config } => (Command::RandomSuite, ExperimentConfig::load(config)?, false),
        Cmd::SweepBeta { config } => (Command::SweepBeta, ExperimentConfig::load(config)?, false),
        Cmd::Check { state, focus, beta, mode, format, restarts, seed } => {
            let mut cfg = ExperimentConfig {
                focus,
                betas: vec![beta],
                modes: vec![mode],
                format,
                state_file: Some(state),
                ..Default::default()
            };
            cfg.roof.seed = seed;
            if let Some(r) = restarts {
                cfg.roof.restarts = r;
            }
            (Command::Check, cfg, false)
        }
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Err(e) = cli::init_thread_pool() {
        eprintln!("error: {e}");
        return ExitCode::from(cli::error_code(&e) as u8);
    }
    let (command, cfg, table_to_stdout) = match build(args.cmd) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(cli::error_code(&e) as u8);
        }
    };
    let outcome = cli::run(command, &cfg);
    let code = cli::exit_code(&outcome);
    match &outcome {
        Ok(set) => {
            let resolved = &set.metadata.config;
            let written = if table_to_stdout {
                let table = set.write_table(&mut std::io::stdout().lock());
                table.and_then(|_| match &resolved.output {
                    Some(_) => cli::emit(set, resolved),
                    None => Ok(()),
                })
            } else {
                cli::emit(set, resolved)
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(cli::EXIT_CONFIG as u8);
            }
            let s = &set.metadata.summary;
            let _ = writeln!(
                std::io::stderr(),
                "{}: {} reports, {} violations, {} failed checkpoints, {:.2}s",
                set.metadata.command,
                s.reports,
                s.violations,
                s.checkpoints_failed,
                set.metadata.wall_clock_s
            );
        }
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(code as u8)
}
