//! Qubit tangle polygamy on W and GHZ states, with the closed-form
//! concurrence of assistance as a lower-bound oracle for each term.

use polyent::assisted::{tangle_of_assistance, RoofConfig};
use polyent::measures::concurrence_of_assistance;
use polyent::polyineq::check_tangle_polygamy;
use polyent::qcore::reduced_from_pure;
use polyent::states::{ghz_state, w_state};

fn main() -> polyent::Result<()> {
    let cfg = RoofConfig::default();
    for (name, psi) in [("W", w_state(3)?), ("GHZ", ghz_state(3, 2)?), ("W4", w_state(4)?)] {
        let r = check_tangle_polygamy(&psi, "A", &cfg, None)?;
        println!("{name}: τ(A|rest) = {:.6}, Σ τ_a = {:.6}, slack {:.6}", r.lhs, r.rhs, r.slack);
        let rho = reduced_from_pure(&psi, &["A", "B"])?;
        let ca = concurrence_of_assistance(&rho)?;
        let ta = tangle_of_assistance(&rho, &cfg)?.value;
        println!("    τ_a(A|B) = {ta:.6} ≥ C_a² = {:.6}", ca * ca);
    }
    Ok(())
}
