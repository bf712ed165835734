//! Building, reducing, purifying and serialising states.

use polyent::measures::{entropy_of_entanglement, von_neumann_entropy, Bipartition};
use polyent::qcore::{
    partial_trace, purify, read_state_file, reduced_from_pure, write_state_file, MaxAbs, QuantumState,
    SystemLayout,
};
use polyent::states::{ghz_state, random_mixed};

fn main() -> polyent::Result<()> {
    let ghz = ghz_state(3, 3)?;
    let cut = Bipartition::new(ghz.layout(), &["A"])?;
    println!("qutrit GHZ: E(A|BC) = {:.6} (log2 3 = {:.6})", entropy_of_entanglement(&ghz, &cut)?.value, 3f64.log2());

    let rho = random_mixed(&SystemLayout::from_pairs(&[("A", 2), ("B", 3)])?, 2, 5)?;
    let psi = purify(&rho)?;
    println!("purified into {:?} with dims {:?}", psi.layout().labels(), psi.layout().dims());
    let back = reduced_from_pure(&psi, &["A", "B"])?;
    println!("round trip error {:.1e}", (back.matrix() - rho.matrix()).max_abs());
    println!("S(A) = {:.6}", von_neumann_entropy(&partial_trace(&rho, &["A"])?));

    let path = std::env::temp_dir().join("polyent_state_io.json");
    write_state_file(&path, &QuantumState::Mixed(rho.clone()))?;
    let loaded = read_state_file(&path)?;
    println!("reloaded {} from {}: identical = {}", if matches!(loaded, QuantumState::Mixed(_)) { "mixed state" } else { "pure state" }, path.display(), loaded.density().matrix() == rho.matrix());
    Ok(())
}
