use serde::{Deserialize, Serialize};

use super::{check_beta, condition_thm2, order_subsystems, powered, WeightMode};
use crate::assisted::{assisted_roof, eoa, RoofConfig, RoofResult};
use crate::measures::{entropy_of_entanglement, tangle_pure, von_neumann_entropy, Bipartition, MeasureKind};
use crate::qcore::{
    eig_hermitian, partial_trace, reduced_from_pure, tensor_product, DensityMatrix, PureState,
    StateRef,
};
use crate::{Error, Result};

/// Default tolerance when every term is known exactly.
pub const ANALYTIC_TOLERANCE: f64 = 1e-6;
/// Default tolerance when some term comes from the roof search.
pub const ESTIMATED_TOLERANCE: f64 = 1e-2;
/// Largest party count for exhaustive ordering.
pub const MAX_EXHAUSTIVE: usize = 8;
/// A density matrix whose top eigenvalue is this close to 1 is treated as pure.
const PURITY_TOL: f64 = 1e-10;

/// How parties are arranged before coefficients are assigned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ordering {
    /// Decreasing assisted entanglement, stable on ties.
    #[default]
    Descending,
    /// Every permutation (at most [`MAX_EXHAUSTIVE`] parties); keeps the one
    /// with the largest right-hand side, preferring the descending order on ties.
    Exhaustive,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CheckOptions {
    /// `None` selects [`ANALYTIC_TOLERANCE`] or [`ESTIMATED_TOLERANCE`].
    pub tolerance: Option<f64>,
    pub ordering: Ordering,
}

/// One bipartite term `E_a(A|B_j)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermEstimate {
    pub party: String,
    pub value: f64,
    pub upper_bound: f64,
    /// Found without search (pure marginal).
    pub exact: bool,
    pub lower_bound: bool,
}

impl TermEstimate {
    fn from_roof(party: &str, r: &RoofResult) -> Self {
        Self {
            party: party.to_string(),
            value: r.value,
            upper_bound: r.upper_bound,
            exact: r.exact,
            lower_bound: r.is_lower_bound(),
        }
    }
}

/// Raw quantities for one state and focus party; independent of `β` and mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermEstimates {
    pub focus: String,
    pub measure: MeasureKind,
    /// Unpowered left-hand side.
    pub lhs: f64,
    /// False when the global state is mixed and the left side is itself a
    /// search estimate; such reports are diagnostic only.
    pub lhs_exact: bool,
    pub terms: Vec<TermEstimate>,
}

impl TermEstimates {
    pub fn any_estimated(&self) -> bool {
        !self.lhs_exact || self.terms.iter().any(|t| !t.exact)
    }

    pub fn any_lower_bound(&self) -> bool {
        self.terms.iter().any(|t| t.lower_bound)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermReport {
    pub party: String,
    pub estimate: f64,
    pub coefficient: f64,
    pub contribution: f64,
}

/// Evaluation of one inequality on one state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygamyReport {
    pub beta: f64,
    pub mode: WeightMode,
    pub focus: String,
    /// Powered left-hand side.
    pub lhs: f64,
    /// Terms in the applied order.
    pub terms: Vec<TermReport>,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
    pub tolerance: f64,
    /// Party labels in the order coefficients were assigned.
    pub ordering: Vec<String>,
    pub condition_met: Option<bool>,
    pub estimates_are_lower_bounds: bool,
    pub diagnostic: bool,
}

impl PolygamyReport {
    /// Index-mode reports whose precondition fails assert nothing.
    pub fn is_violation(&self) -> bool {
        !self.holds && self.condition_met != Some(false)
    }
}

fn global_is_pure(rho: &DensityMatrix) -> Result<bool> {
    let spec = eig_hermitian(rho)?;
    Ok(spec.eigenvalues[0] >= 1.0 - PURITY_TOL)
}

/// Left-hand side and per-party assisted entanglement for `focus`.
pub fn estimate_terms<'a>(
    state: impl Into<StateRef<'a>>,
    focus: &str,
    cfg: &RoofConfig,
) -> Result<TermEstimates> {
    let state = state.into();
    let layout = state.layout();
    layout.position(focus)?;
    if layout.len() < 2 {
        return Err(Error::InvalidArgument("need at least one party besides the focus".into()));
    }
    let whole = Bipartition::new(layout, &[focus])?;
    let (lhs, lhs_exact) = match state {
        StateRef::Pure(psi) => (entropy_of_entanglement(psi, &whole)?.value, true),
        StateRef::Mixed(rho) => {
            if global_is_pure(rho)? {
                (von_neumann_entropy(&partial_trace(rho, &[focus])?), true)
            } else {
                (eoa(rho, &whole, cfg)?.value, false)
            }
        }
    };
    let mut terms = Vec::with_capacity(layout.len() - 1);
    for label in layout.labels().into_iter().filter(|l| *l != focus) {
        let marginal = marginal(state, focus, label)?;
        let cut = Bipartition::new(marginal.layout(), &[focus])?;
        let r = eoa(&marginal, &cut, cfg)?;
        terms.push(TermEstimate::from_roof(label, &r));
    }
    Ok(TermEstimates {
        focus: focus.to_string(),
        measure: MeasureKind::EntropyOfEntanglement,
        lhs,
        lhs_exact,
        terms,
    })
}

fn marginal(state: StateRef<'_>, focus: &str, other: &str) -> Result<DensityMatrix> {
    match state {
        StateRef::Pure(psi) => reduced_from_pure(psi, &[focus, other]),
        StateRef::Mixed(rho) => partial_trace(rho, &[focus, other]),
    }
}

/// Applies `β`, the coefficient family and the ordering to raw estimates.
pub fn evaluate(
    est: &TermEstimates,
    beta: f64,
    mode: WeightMode,
    opts: &CheckOptions,
) -> Result<PolygamyReport> {
    check_beta(beta)?;
    let values: Vec<(&str, f64)> = est.terms.iter().map(|t| (t.party.as_str(), t.value)).collect();
    let descending = order_subsystems(&values)?;
    let order = match (mode, opts.ordering) {
        (WeightMode::Unit, _) => (0..values.len()).collect(),
        (_, Ordering::Descending) => descending,
        (_, Ordering::Exhaustive) => best_ordering(&values, &descending, beta, mode)?,
    };

    let mut terms = Vec::with_capacity(order.len());
    let mut rhs = 0.0;
    for (j, &p) in order.iter().enumerate() {
        let (party, estimate) = values[p];
        let coefficient = mode.coefficient(j, beta);
        let contribution = coefficient * powered(estimate, beta);
        rhs += contribution;
        terms.push(TermReport { party: party.to_string(), estimate, coefficient, contribution });
    }
    let lhs = powered(est.lhs, beta);
    let slack = rhs - lhs;
    let tolerance = opts.tolerance.unwrap_or(if est.any_estimated() {
        ESTIMATED_TOLERANCE
    } else {
        ANALYTIC_TOLERANCE
    });
    let ordered: Vec<f64> = order.iter().map(|&p| values[p].1).collect();
    Ok(PolygamyReport {
        beta,
        mode,
        focus: est.focus.clone(),
        lhs,
        rhs,
        slack,
        holds: slack >= -tolerance,
        tolerance,
        ordering: order.iter().map(|&p| values[p].0.to_string()).collect(),
        condition_met: (mode == WeightMode::Index).then(|| condition_thm2(&ordered)),
        estimates_are_lower_bounds: est.any_lower_bound(),
        diagnostic: !est.lhs_exact,
        terms,
    })
}

fn rhs_for(values: &[(&str, f64)], order: &[usize], beta: f64, mode: WeightMode) -> f64 {
    order
        .iter()
        .enumerate()
        .map(|(j, &p)| mode.coefficient(j, beta) * powered(values[p].1, beta))
        .sum()
}

fn best_ordering(
    values: &[(&str, f64)],
    descending: &[usize],
    beta: f64,
    mode: WeightMode,
) -> Result<Vec<usize>> {
    if values.len() > MAX_EXHAUSTIVE {
        return Err(Error::InvalidArgument(format!(
            "exhaustive ordering supports at most {MAX_EXHAUSTIVE} parties, got {}",
            values.len()
        )));
    }
    let mut best = descending.to_vec();
    let mut best_rhs = rhs_for(values, &best, beta, mode);
    let mut perm: Vec<usize> = (0..values.len()).collect();
    loop {
        let r = rhs_for(values, &perm, beta, mode);
        if r > best_rhs {
            best_rhs = r;
            best = perm.clone();
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(best)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Estimates terms and evaluates one inequality.
pub fn check_polygamy<'a>(
    state: impl Into<StateRef<'a>>,
    focus: &str,
    beta: f64,
    mode: WeightMode,
    cfg: &RoofConfig,
    opts: &CheckOptions,
) -> Result<PolygamyReport> {
    check_beta(beta)?;
    let est = estimate_terms(state, focus, cfg)?;
    evaluate(&est, beta, mode, opts)
}

/// Raw estimates for the qubit tangle inequality `τ(A|rest) ≤ Σ_j τ_a(A|B_j)`.
pub fn tangle_estimates(psi: &PureState, focus: &str, cfg: &RoofConfig) -> Result<TermEstimates> {
    let layout = psi.layout();
    if let Some(p) = layout.parties().iter().find(|p| p.dim != 2) {
        return Err(Error::UnsupportedDimension(format!(
            "tangle polygamy needs qubits; `{}` has dimension {}",
            p.label, p.dim
        )));
    }
    let whole = Bipartition::new(layout, &[focus])?;
    let lhs = tangle_pure(psi, &whole)?.value;
    let mut terms = Vec::new();
    for label in layout.labels().into_iter().filter(|l| *l != focus) {
        let m = reduced_from_pure(psi, &[focus, label])?;
        let cut = Bipartition::new(m.layout(), &[focus])?;
        let r = assisted_roof(&m, &cut, MeasureKind::Tangle, cfg)?;
        terms.push(TermEstimate::from_roof(label, &r));
    }
    Ok(TermEstimates { focus: focus.to_string(), measure: MeasureKind::Tangle, lhs, lhs_exact: true, terms })
}

/// Qubit tangle polygamy for a pure state; unit weights, `β = 1`.
pub fn check_tangle_polygamy(
    psi: &PureState,
    focus: &str,
    cfg: &RoofConfig,
    tolerance: Option<f64>,
) -> Result<PolygamyReport> {
    let est = tangle_estimates(psi, focus, cfg)?;
    evaluate(&est, 1.0, WeightMode::Unit, &CheckOptions { tolerance, ordering: Ordering::Descending })
}

/// `ρ ⊗ σ` where `σ` brings the number of non-focus parties up to the next
/// power of two. `filler` must be `None` when no padding is needed.
pub fn pad_to_power_of_two(
    rho: &DensityMatrix,
    focus: &str,
    filler: Option<&DensityMatrix>,
) -> Result<DensityMatrix> {
    rho.layout().position(focus)?;
    let n = rho.layout().len() - 1;
    let need = n.max(1).next_power_of_two() - n;
    match (need, filler) {
        (0, None) => Ok(rho.clone()),
        (0, Some(_)) => Err(Error::InvalidArgument(format!(
            "{n} non-focus parties is already a power of two; no filler expected"
        ))),
        (_, None) => Err(Error::InvalidArgument(format!("filler with {need} parties required"))),
        (_, Some(f)) if f.layout().len() != need => Err(Error::InvalidArgument(format!(
            "filler has {} parties, expected {need}",
            f.layout().len()
        ))),
        (_, Some(f)) => tensor_product(rho, f),
    }
}
