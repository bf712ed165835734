//! Padding the non-focus parties to a power of two with a pure filler leaves
//! the Hamming-weighted right-hand side unchanged.

use polyent::assisted::RoofConfig;
use polyent::polyineq::{check_polygamy, pad_to_power_of_two, CheckOptions, WeightMode};
use polyent::qcore::{DensityMatrix, SystemLayout};
use polyent::states::haar_pure;

fn main() -> polyent::Result<()> {
    let psi = haar_pure(&SystemLayout::uniform(4, 2)?, 9);
    let filler = DensityMatrix::diagonal(SystemLayout::from_pairs(&[("F", 2)])?, &[1.0, 0.0])?;
    let padded = pad_to_power_of_two(&psi.density(), "A", Some(&filler))?;
    let cfg = RoofConfig::default().with_restarts(8);
    let opts = CheckOptions::default();
    for beta in [0.3, 0.6, 1.0] {
        let a = check_polygamy(&psi, "A", beta, WeightMode::Hamming, &cfg, &opts)?;
        let b = check_polygamy(&padded, "A", beta, WeightMode::Hamming, &cfg, &opts)?;
        let f = b.terms.iter().find(|t| t.party == "F").map_or(f64::NAN, |t| t.estimate);
        println!("β={beta}: rhs {:.9} → {:.9} after padding, E_a(A|F) = {f:.1e}", a.rhs, b.rhs);
    }
    Ok(())
}
