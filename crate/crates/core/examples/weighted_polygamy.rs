//! Unit, Hamming and index weights on one Haar-random four-qubit state.

use polyent::assisted::RoofConfig;
use polyent::polyineq::{estimate_terms, evaluate, CheckOptions, WeightMode};
use polyent::qcore::SystemLayout;
use polyent::states::haar_pure;

fn main() -> polyent::Result<()> {
    let psi = haar_pure(&SystemLayout::uniform(4, 2)?, 2024);
    // terms are estimated once; every (β, mode) evaluation reuses them
    let est = estimate_terms(&psi, "A", &RoofConfig::default().with_restarts(16))?;
    println!("E(A|BCD) = {:.6}", est.lhs);
    for t in &est.terms {
        println!("E_a(A|{}) = {:.6}  (bound {:.6})", t.party, t.value, t.upper_bound);
    }
    println!("\n{:>5} {:<8} {:>9} {:>9} {:>9} {:<5} cond", "beta", "mode", "lhs", "rhs", "slack", "holds");
    for beta in [0.25, 0.5, 0.75, 1.0] {
        for mode in WeightMode::ALL {
            let r = evaluate(&est, beta, mode, &CheckOptions::default())?;
            println!(
                "{beta:>5.2} {:<8} {:>9.6} {:>9.6} {:>9.6} {:<5} {:?}",
                mode.as_str(),
                r.lhs,
                r.rhs,
                r.slack,
                r.holds,
                r.condition_met
            );
        }
    }
    Ok(())
}
