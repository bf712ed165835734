//! Slack of all three weightings over a β grid, as CSV on stdout.

use polyent::cli::{run_sweep_beta, ExperimentConfig, Format};
use polyent::states::{StateKind, StateSpec};

fn main() -> polyent::Result<()> {
    let mut cfg = ExperimentConfig {
        states: vec![StateSpec::new(StateKind::W, 4, 2)],
        beta_step: 0.1,
        ..Default::default()
    };
    cfg.roof.restarts = 8;
    let set = run_sweep_beta(&cfg)?;
    set.write(Format::Csv, &mut std::io::stdout().lock())?;
    eprintln!("chain failures: {}", set.metadata.summary.chain_failures);
    Ok(())
}
