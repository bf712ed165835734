//! Roof search for the entanglement of assistance on a few two-qubit states,
//! next to the entropy upper bound.

use polyent::assisted::{eoa, eoa_upper_bound, RoofConfig};
use polyent::measures::Bipartition;
use polyent::qcore::{reduced_from_pure, DensityMatrix, SystemLayout};
use polyent::states::{random_mixed, w_state};

fn main() -> polyent::Result<()> {
    let two = SystemLayout::uniform(2, 2)?;
    let states = [
        ("W marginal (A,B)", reduced_from_pure(&w_state(3)?, &["A", "B"])?),
        ("diag(1/2,0,0,1/2)", DensityMatrix::diagonal(two.clone(), &[0.5, 0.0, 0.0, 0.5])?),
        ("random rank 3", random_mixed(&two, 3, 42)?),
        ("maximally mixed", DensityMatrix::maximally_mixed(two.clone())),
    ];
    let cfg = RoofConfig::default();
    println!("{:<20} {:>10} {:>10} {:>8}", "state", "E_a", "bound", "members");
    for (name, rho) in &states {
        let cut = Bipartition::new(rho.layout(), &["A"])?;
        let r = eoa(rho, &cut, &cfg)?;
        println!("{name:<20} {:>10.6} {:>10.6} {:>8}", r.value, eoa_upper_bound(rho, &cut)?, r.best.len());
    }

    // the running maximum over restarts shows how quickly the search settles
    let rho = &states[2].1;
    let cut = Bipartition::new(rho.layout(), &["A"])?;
    let r = eoa(rho, &cut, &cfg.with_restarts(8))?;
    let trace: Vec<String> = r.restart_trace.iter().map(|v| format!("{v:.6}")).collect();
    println!("\nrestart trace (random rank 3): {}", trace.join(" "));
    Ok(())
}
