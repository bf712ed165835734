//! A small seeded random-state suite driven by an inline TOML config.

use polyent::cli::{run_random_suite, ExperimentConfig, Format};

const CONFIG: &str = r#"
betas = [0.3, 0.5, 0.8]
modes = ["hamming", "unit", "index"]

[roof]
restarts = 4
max_iters = 30
step_tol = 1e-7
seed = 1

[[states]]
kind = "haar_pure"
parties = 4
dim = 2
samples = 5
seed = 100

[[states]]
kind = "haar_pure"
parties = 3
dim = 3
samples = 3
seed = 200
"#;

fn main() -> polyent::Result<()> {
    let cfg = ExperimentConfig::from_toml(CONFIG)?;
    let set = run_random_suite(&cfg)?;
    set.write(Format::Table, &mut std::io::stdout().lock())?;
    let s = &set.metadata.summary;
    println!("violations {}, chain failures {}, {:.1} s", s.violations, s.chain_failures, set.metadata.wall_clock_s);
    Ok(())
}
