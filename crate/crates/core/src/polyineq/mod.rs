//! Hamming-weight coefficients, subsystem ordering and the polygamy
//! inequality evaluators.
//!
//! Every evaluator compares `E_a(A|B_0…B_{N−1})^β` against
//! `Σ_j c_j E_a(A|B_j)^β` where the coefficients `c_j` come from a
//! [`WeightMode`] and the parties are first sorted by decreasing assisted
//! entanglement.

mod check;
mod weights;

pub use check::{
    check_polygamy, check_tangle_polygamy, estimate_terms, evaluate, pad_to_power_of_two, tangle_estimates,
    CheckOptions, Ordering, PolygamyReport, TermEstimate, TermEstimates, TermReport,
    ANALYTIC_TOLERANCE, ESTIMATED_TOLERANCE,
};
pub use weights::{hamming_weight, BinaryIndex, WeightMode};

use crate::{Error, Result};

/// Values at or below this are treated as exactly zero when raised to a power.
pub const ZERO_FLOOR: f64 = 1e-12;

/// `x^β` with zero mapped to zero for every `β`, so that at `β = 0` each
/// nonzero term counts once and zero terms drop out.
pub fn powered(x: f64, beta: f64) -> f64 {
    if x <= ZERO_FLOOR {
        0.0
    } else {
        x.powf(beta)
    }
}

pub(crate) fn check_beta(beta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::InvalidArgument(format!("beta {beta} outside [0, 1]")));
    }
    Ok(())
}

/// Stable descending order of `values`; returns positions into the input.
pub fn order_subsystems<S: AsRef<str>>(values: &[(S, f64)]) -> Result<Vec<usize>> {
    if let Some((l, v)) = values.iter().find(|(_, v)| !(*v >= 0.0)) {
        return Err(Error::InvalidArgument(format!(
            "negative or NaN value {v} for `{}`",
            l.as_ref()
        )));
    }
    let mut perm: Vec<usize> = (0..values.len()).collect();
    perm.sort_by(|&a, &b| values[b].1.total_cmp(&values[a].1));
    Ok(perm)
}

/// `Σ_j c_j values_j^β`, with `values` already in the intended order.
pub fn weighted_sum(values: &[f64], beta: f64, mode: WeightMode) -> Result<f64> {
    check_beta(beta)?;
    if let Some(v) = values.iter().find(|v| !(**v >= 0.0)) {
        return Err(Error::InvalidArgument(format!("negative or NaN value {v}")));
    }
    Ok(values
        .iter()
        .enumerate()
        .map(|(j, &v)| mode.coefficient(j, beta) * powered(v, beta))
        .sum())
}

/// `values_i ≥ Σ_{j>i} values_j` for every `i < N−1`, on the order given.
pub fn condition_thm2(values: &[f64]) -> bool {
    let mut tail = 0.0;
    for i in (0..values.len()).rev() {
        if i + 1 < values.len() && values[i] < tail {
            return false;
        }
        tail += values[i];
    }
    true
}

/// `(1 + βx^β) − (1 + x)^β` on `[0,1]²`; nonnegative up to rounding.
pub fn scalar_lemma_gap(x: f64, beta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidArgument(format!("x {x} outside [0, 1]")));
    }
    check_beta(beta)?;
    let x_beta = if x == 0.0 && beta == 0.0 { 1.0 } else { x.powf(beta) };
    Ok(1.0 + beta * x_beta - (1.0 + x).powf(beta))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_examples() {
        assert_eq!(order_subsystems(&[("B", 0.2), ("C", 0.9)]).unwrap(), vec![1, 0]);
        assert_eq!(order_subsystems(&[("B", 0.5), ("C", 0.5), ("D", 0.5)]).unwrap(), vec![0, 1, 2]);
        assert_eq!(
            order_subsystems(&[("B0", 1.0), ("B1", 0.5), ("B2", 0.7)]).unwrap(),
            vec![0, 2, 1]
        );
        assert!(order_subsystems(&[("B", -0.1)]).is_err());
    }

    #[test]
    fn weighted_sum_examples() {
        let two_thirds = 2.0 / 3.0;
        let s = weighted_sum(&[two_thirds, two_thirds], 0.5, WeightMode::Hamming).unwrap();
        assert!((s - two_thirds.sqrt() * 1.5).abs() < 1e-15);
        assert!((s - 1.224745).abs() < 1e-6);

        let v = [0.9, 0.4, 0.3, 0.1];
        for mode in WeightMode::ALL {
            assert!((weighted_sum(&v, 1.0, mode).unwrap() - 1.7).abs() < 1e-15);
        }
        assert_eq!(weighted_sum(&[1.0; 4], 0.5, WeightMode::Hamming).unwrap(), 2.25);
        assert!(weighted_sum(&v, 1.5, WeightMode::Unit).is_err());
        assert!(weighted_sum(&v, -0.1, WeightMode::Unit).is_err());
    }

    #[test]
    fn mode_monotonicity() {
        let v = [0.8, 0.6, 0.6, 0.3, 0.2, 0.1];
        for k in 0..=20 {
            let beta = k as f64 / 20.0;
            let u = weighted_sum(&v, beta, WeightMode::Unit).unwrap();
            let h = weighted_sum(&v, beta, WeightMode::Hamming).unwrap();
            let i = weighted_sum(&v, beta, WeightMode::Index).unwrap();
            assert!(u >= h && h >= i, "beta {beta}: {u} {h} {i}");
        }
    }

    #[test]
    fn condition_examples() {
        let t = 2.0 / 3.0;
        assert!(condition_thm2(&[t, t]));
        assert!(!condition_thm2(&[1.0, 0.5, 0.6]));
        assert!(condition_thm2(&[4.0, 2.0, 1.0]));
        assert!(condition_thm2(&[]));
        assert!(condition_thm2(&[0.3]));
    }

    #[test]
    fn scalar_lemma_examples() {
        for beta in [0.0, 0.3, 0.5, 1.0] {
            assert_eq!(scalar_lemma_gap(0.0, beta).unwrap(), 0.0);
        }
        assert_eq!(scalar_lemma_gap(1.0, 1.0).unwrap(), 0.0);
        let g = scalar_lemma_gap(1.0, 0.5).unwrap();
        assert!((g - (1.5 - 2f64.sqrt())).abs() < 1e-15);
        assert!(scalar_lemma_gap(1.1, 0.5).is_err());
        assert!(scalar_lemma_gap(0.5, 1.1).is_err());
    }

    #[test]
    fn powered_zero_convention() {
        assert_eq!(powered(0.0, 0.0), 0.0);
        assert_eq!(powered(0.3, 0.0), 1.0);
        assert_eq!(powered(1e-15, 0.5), 0.0);
    }
}
