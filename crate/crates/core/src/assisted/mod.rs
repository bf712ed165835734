//! Assisted (concave-roof) measures: entanglement of assistance and tangle of
//! assistance.
//!
//! The roof `max Σ p_i M(ψ_i)` ranges over all pure-state ensembles of the
//! target. Size-`m` ensembles of a rank-`r` state are exactly the rows of
//! `V diag(√λ) E^T` for `m×r` isometries `V`, so the search runs over
//! isometries (see [`search`]). Reported values are the best objective found:
//! a lower bound on the true roof, bracketed above by
//! [`RoofResult::upper_bound`].

mod objective;
mod search;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use objective::{EntropyObjective, RoofObjective, TangleObjective};

use crate::measures::{
    entropy_of_entanglement, tangle_pure, von_neumann_entropy, Bipartition, MeasureKind,
};
use crate::qcore::{eig_hermitian, partial_trace, DensityMatrix, MaxAbs, PureState, RANK_TOL};
use crate::{Error, Result, C64};

/// Members lighter than this are dropped from decompositions.
pub const MIN_WEIGHT: f64 = 1e-12;
/// Entrywise tolerance for `Σ p_i |ψ_i⟩⟨ψ_i| = ρ`.
pub const MIXTURE_TOL: f64 = 1e-8;
pub const ISOMETRY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Member {
    pub weight: f64,
    pub state: PureState,
}

/// Weighted pure-state ensemble averaging to `target`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    members: Vec<Member>,
    target: DensityMatrix,
}

impl Decomposition {
    pub fn new(members: Vec<Member>, target: DensityMatrix) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidArgument("decomposition has no members".into()));
        }
        if let Some(m) = members.iter().find(|m| m.weight < 0.0 || !m.weight.is_finite()) {
            return Err(Error::InvalidArgument(format!("negative weight {}", m.weight)));
        }
        let total: f64 = members.iter().map(|m| m.weight).sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidArgument(format!("weights sum to {total}")));
        }
        let d = Self { members, target };
        let dev = (d.mixture() - d.target.matrix()).max_abs();
        if dev > MIXTURE_TOL {
            return Err(Error::InvalidDecomposition(dev));
        }
        Ok(d)
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn target(&self) -> &DensityMatrix {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `Σ p_i |ψ_i⟩⟨ψ_i|`.
    pub fn mixture(&self) -> DMatrix<C64> {
        let n = self.target.dim();
        let mut out = DMatrix::zeros(n, n);
        for m in &self.members {
            let a = m.state.amplitudes();
            out += a * a.adjoint() * C64::new(m.weight, 0.0);
        }
        out
    }

    /// `Σ p_i M(ψ_i)` with the exact pure-state measure.
    pub fn average(&self, cut: &Bipartition, measure: MeasureKind) -> Result<f64> {
        let mut acc = 0.0;
        for m in &self.members {
            let v = match measure {
                MeasureKind::EntropyOfEntanglement => entropy_of_entanglement(&m.state, cut)?.value,
                MeasureKind::Tangle => tangle_pure(&m.state, cut)?.value,
            };
            acc += m.weight * v;
        }
        Ok(acc)
    }

    /// Builds a decomposition from unnormalised rows, dropping light members.
    fn from_rows(rows: &[C64], dim: usize, target: &DensityMatrix) -> Result<Self> {
        let layout = target.layout();
        let mut members = Vec::new();
        for row in rows.chunks(dim) {
            let w: f64 = row.iter().map(|z| z.norm_sqr()).sum();
            if w < MIN_WEIGHT {
                continue;
            }
            let v = nalgebra::DVector::from_column_slice(row);
            members.push(Member { weight: w, state: PureState::normalized(layout.clone(), v)? });
        }
        let total: f64 = members.iter().map(|m| m.weight).sum();
        for m in members.iter_mut() {
            m.weight /= total;
        }
        Self::new(members, target.clone())
    }
}

/// Search budget for roof maximisation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RoofConfig {
    /// Ensemble size `m`; `None` means `rank²`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ensemble_size: Option<usize>,
    pub restarts: usize,
    /// Maximum sweeps per restart.
    pub max_iters: usize,
    pub step_tol: f64,
    pub seed: u64,
}

impl Default for RoofConfig {
    fn default() -> Self {
        Self { ensemble_size: None, restarts: 64, max_iters: 500, step_tol: 1e-9, seed: 0 }
    }
}

impl RoofConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    /// Same config with `factor` times the restarts.
    pub fn escalated(self, factor: usize) -> Self {
        self.with_restarts(self.restarts.saturating_mul(factor))
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::Config("roof.restarts must be >= 1".into()));
        }
        if !(self.step_tol >= 0.0) {
            return Err(Error::Config("roof.step_tol must be nonnegative".into()));
        }
        Ok(())
    }

    fn ensemble_for(&self, rank: usize) -> Result<usize> {
        let m = self.ensemble_size.unwrap_or(rank * rank).max(1);
        if m < rank {
            return Err(Error::InvalidArgument(format!(
                "ensemble size {m} is below the target rank {rank}"
            )));
        }
        Ok(m)
    }
}

/// Outcome of a roof maximisation.
#[derive(Debug, Clone)]
pub struct RoofResult {
    pub value: f64,
    pub best: Decomposition,
    pub upper_bound: f64,
    /// Running maximum after each restart.
    pub restart_trace: Vec<f64>,
    pub measure: MeasureKind,
    /// True when the target is pure, so the single decomposition is optimal.
    pub exact: bool,
}

impl RoofResult {
    /// True when the value may understate the roof.
    pub fn is_lower_bound(&self) -> bool {
        !self.exact && self.value < self.upper_bound - 1e-8
    }
}

/// `min(S(ρ_A), S(ρ_B))`, the concavity bound on the entanglement of assistance.
pub fn eoa_upper_bound(rho: &DensityMatrix, cut: &Bipartition) -> Result<f64> {
    cut.check(rho.layout())?;
    let sa = von_neumann_entropy(&partial_trace(rho, cut.side_a())?);
    let sb = von_neumann_entropy(&partial_trace(rho, cut.side_b())?);
    Ok(sa.min(sb))
}

/// Ensemble generated by an `m×r` isometry over the eigenbasis of `rho`.
pub fn decomposition_from_isometry(rho: &DensityMatrix, v: &DMatrix<C64>) -> Result<Decomposition> {
    let spec = eig_hermitian(rho)?;
    let r = spec.rank(RANK_TOL).max(1);
    if v.ncols() != r {
        return Err(Error::DimensionMismatch { expected: r, got: v.ncols() });
    }
    let dev = (v.adjoint() * v - DMatrix::<C64>::identity(r, r)).max_abs();
    if dev > ISOMETRY_TOL {
        return Err(Error::NotIsometry(dev));
    }
    if r == 1 {
        // every member is the same ray; keep one
        let e = spec.eigenvectors.column(0).into_owned();
        let state = PureState::normalized(rho.layout().clone(), e)?;
        return Decomposition::new(vec![Member { weight: 1.0, state }], rho.clone());
    }
    let ens = search::Ensemble::from_isometry(v, &spec.eigenvalues[..r], &spec.eigenvectors);
    Decomposition::from_rows(&ens.rows, ens.dim, rho)
}

/// Maximises `Σ p_i M(ψ_i)` over decompositions of `rho` for the given measure.
pub fn assisted_roof(
    rho: &DensityMatrix,
    cut: &Bipartition,
    measure: MeasureKind,
    cfg: &RoofConfig,
) -> Result<RoofResult> {
    cfg.validate()?;
    rho.validate()?;
    let objective = objective::objective_for(measure, rho.layout(), cut)?;
    let upper_bound = match measure {
        MeasureKind::EntropyOfEntanglement => eoa_upper_bound(rho, cut)?,
        MeasureKind::Tangle => 1.0,
    };
    let mut result = maximize_roof(rho, objective.as_ref(), cut, measure, cfg)?;
    result.upper_bound = upper_bound;
    Ok(result)
}

/// Roof search with a caller-supplied objective. `measure` selects the exact
/// pure-state measure used to re-score the final decompositions.
pub fn maximize_roof(
    rho: &DensityMatrix,
    objective: &dyn RoofObjective,
    cut: &Bipartition,
    measure: MeasureKind,
    cfg: &RoofConfig,
) -> Result<RoofResult> {
    cfg.validate()?;
    let spec = eig_hermitian(rho)?;
    let rank = spec.rank(RANK_TOL).max(1);
    let lambdas = &spec.eigenvalues[..rank];

    if rank == 1 {
        let v = DMatrix::<C64>::identity(1, 1);
        let best = decomposition_from_isometry(rho, &v)?;
        let value = best.average(cut, measure)?;
        return Ok(RoofResult {
            value,
            best,
            upper_bound: value,
            restart_trace: vec![value; cfg.restarts],
            measure,
            exact: true,
        });
    }

    let m = cfg.ensemble_for(rank)?;
    let runs: Vec<Result<(f64, Decomposition)>> = (0..cfg.restarts)
        .into_par_iter()
        .map(|k| {
            let seed = cfg.seed.wrapping_add(k as u64);
            let v = search::random_isometry(m, rank, seed);
            let mut ens = search::Ensemble::from_isometry(&v, lambdas, &spec.eigenvectors);
            search::ascend(objective, &mut ens, cfg.max_iters, cfg.step_tol);
            let dec = Decomposition::from_rows(&ens.rows, ens.dim, rho)?;
            let value = dec.average(cut, measure)?;
            Ok((value, dec))
        })
        .collect();

    let mut trace = Vec::with_capacity(cfg.restarts);
    let mut best: Option<(f64, Decomposition)> = None;
    for run in runs {
        let (value, dec) = run?;
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, dec));
        }
        trace.push(best.as_ref().map(|(b, _)| *b).unwrap_or(value));
    }
    let (value, best) = best.expect("restarts >= 1");
    Ok(RoofResult { value, best, upper_bound: f64::INFINITY, restart_trace: trace, measure, exact: false })
}

/// Entanglement of assistance in bits.
pub fn eoa(rho: &DensityMatrix, cut: &Bipartition, cfg: &RoofConfig) -> Result<RoofResult> {
    assisted_roof(rho, cut, MeasureKind::EntropyOfEntanglement, cfg)
}

/// Tangle of assistance of a two-qubit state, first qubit on side A.
pub fn tangle_of_assistance(rho: &DensityMatrix, cfg: &RoofConfig) -> Result<RoofResult> {
    if rho.layout().dims() != [2, 2] {
        return Err(Error::UnsupportedDimension(format!(
            "tangle of assistance needs dims [2, 2], got {:?}",
            rho.layout().dims()
        )));
    }
    let first = rho.layout().labels()[0].to_string();
    let cut = Bipartition::new(rho.layout(), &[first])?;
    assisted_roof(rho, &cut, MeasureKind::Tangle, cfg)
}

#[cfg(test)]
mod tests;
