//! Three-qubit W-state checkpoints, printed as a table.
//!
//! ```text
//! cargo run --release --example reproduce_w_state
//! ```

use polyent::cli::{run_reproduce_paper, ExperimentConfig};

fn main() -> polyent::Result<()> {
    let set = run_reproduce_paper(&ExperimentConfig::default())?;
    set.write_table(&mut std::io::stdout().lock())?;
    println!("all checkpoints pass: {}", set.passed());
    Ok(())
}
