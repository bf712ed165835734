//! Index weights `β^j` on a state built so every assisted term is known:
//! the focus holds one qubit of each of several Schmidt pairs, so
//! `E_a(A|B_j)` equals the entanglement of pair `j`.

use nalgebra::DVector;
use polyent::assisted::RoofConfig;
use polyent::polyineq::{condition_thm2, estimate_terms, evaluate, CheckOptions, WeightMode};
use polyent::qcore::{PureState, SystemLayout};
use polyent::C64;

/// `(cos t, sin t)` pair with `e` ebits, by bisection on the binary entropy.
fn schmidt(e: f64) -> [f64; 2] {
    let h = |p: f64| -p * p.log2() - (1.0 - p) * (1.0 - p).log2();
    let (mut lo, mut hi) = (1e-300, 0.5);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if h(mid) < e { lo = mid } else { hi = mid }
    }
    [lo.sqrt(), (1.0 - lo).sqrt()]
}

fn paired(ents: &[f64]) -> polyent::Result<PureState> {
    let k = ents.len();
    let labels: Vec<String> = (0..k).map(|j| format!("B{j}")).collect();
    let mut pairs = vec![("A", 1usize << k)];
    pairs.extend(labels.iter().map(|l| (l.as_str(), 2)));
    let layout = SystemLayout::from_pairs(&pairs)?;
    let c: Vec<[f64; 2]> = ents.iter().map(|&e| schmidt(e)).collect();
    let amps = DVector::from_fn(layout.total_dim(), |idx, _| {
        let (a, b) = (idx >> k, idx & ((1 << k) - 1));
        let amp = if a == b { (0..k).map(|j| c[j][(a >> (k - 1 - j)) & 1]).product() } else { 0.0 };
        C64::new(amp, 0.0)
    });
    PureState::new(layout, amps)
}

fn main() -> polyent::Result<()> {
    let ents = [1.0, 0.5, 0.25, 0.125];
    let psi = paired(&ents)?;
    let est = estimate_terms(&psi, "A", &RoofConfig::default().with_restarts(2))?;
    let values: Vec<f64> = est.terms.iter().map(|t| t.value).collect();
    println!("terms {values:?}, dominance condition: {}", condition_thm2(&values));
    for beta in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let [u, h, i] = WeightMode::ALL.map(|m| evaluate(&est, beta, m, &CheckOptions::default()).unwrap());
        println!(
            "β={beta:.1}  lhs {:.6}  rhs unit {:.6} ≥ hamming {:.6} ≥ index {:.6}  index holds: {}",
            i.lhs, u.rhs, h.rhs, i.rhs, i.holds
        );
    }
    Ok(())
}
