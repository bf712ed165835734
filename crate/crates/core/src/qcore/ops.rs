use nalgebra::{DMatrix, DVector};

use super::{eig_hermitian, DensityMatrix, Party, PureState, SystemLayout};
#[cfg(test)]
use super::MaxAbs;
use crate::{Error, Result, C64};

/// Eigenvalues at or below this count as outside the support.
pub const RANK_TOL: f64 = 1e-12;

/// Split of composite indices into a kept factor and a traced factor.
///
/// `index[t * keep_dim + k]` is the composite index whose kept digits read `k`
/// and whose traced digits read `t`, both party-major.
#[derive(Debug, Clone)]
pub(crate) struct IndexSplit {
    pub keep_dim: usize,
    pub rest_dim: usize,
    pub index: Vec<usize>,
}

impl IndexSplit {
    pub fn new(layout: &SystemLayout, keep: &[usize]) -> Self {
        let dims = layout.dims();
        let n = dims.len();
        let is_kept: Vec<bool> = (0..n).map(|i| keep.contains(&i)).collect();
        let keep_dim: usize = (0..n).filter(|&i| is_kept[i]).map(|i| dims[i]).product();
        let rest_dim: usize = (0..n).filter(|&i| !is_kept[i]).map(|i| dims[i]).product();
        let total = layout.total_dim();
        let mut index = vec![0; total];
        let mut digits = vec![0usize; n];
        for composite in 0..total {
            let mut rem = composite;
            for p in (0..n).rev() {
                digits[p] = rem % dims[p];
                rem /= dims[p];
            }
            let (mut k, mut t) = (0, 0);
            for p in 0..n {
                if is_kept[p] {
                    k = k * dims[p] + digits[p];
                } else {
                    t = t * dims[p] + digits[p];
                }
            }
            index[t * keep_dim + k] = composite;
        }
        Self { keep_dim, rest_dim, index }
    }

    #[inline]
    pub fn at(&self, k: usize, t: usize) -> usize {
        self.index[t * self.keep_dim + k]
    }
}

/// Kronecker product in party order.
pub fn tensor_product(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    let layout = a.layout().concat(b.layout())?;
    let matrix = a.matrix().kronecker(b.matrix());
    DensityMatrix::from_parts_unchecked(layout, matrix)
}

/// Kronecker product of pure states.
pub fn tensor_product_pure(a: &PureState, b: &PureState) -> Result<PureState> {
    let layout = a.layout().concat(b.layout())?;
    let amps = a.amplitudes().kronecker(b.amplitudes());
    PureState::new(layout, amps)
}

/// Reduced state on `keep`, parties kept in their original relative order.
pub fn partial_trace<S: AsRef<str>>(rho: &DensityMatrix, keep: &[S]) -> Result<DensityMatrix> {
    let layout = rho.layout();
    let pos = layout.positions(keep)?;
    let split = IndexSplit::new(layout, &pos);
    let m = rho.matrix();
    let kd = split.keep_dim;
    let mut out = DMatrix::zeros(kd, kd);
    for k1 in 0..kd {
        for k2 in 0..kd {
            let mut acc = C64::new(0.0, 0.0);
            for t in 0..split.rest_dim {
                acc += m[(split.at(k1, t), split.at(k2, t))];
            }
            out[(k1, k2)] = acc;
        }
    }
    DensityMatrix::from_parts_unchecked(layout.select(&pos)?, out)
}

/// Reduced state of `|ψ⟩⟨ψ|` on `keep`, without forming the global density matrix.
pub fn reduced_from_pure<S: AsRef<str>>(psi: &PureState, keep: &[S]) -> Result<DensityMatrix> {
    let layout = psi.layout();
    let pos = layout.positions(keep)?;
    let split = IndexSplit::new(layout, &pos);
    let v = psi.amplitudes();
    let kd = split.keep_dim;
    let mut out = DMatrix::zeros(kd, kd);
    for t in 0..split.rest_dim {
        for k1 in 0..kd {
            let a = v[split.at(k1, t)];
            if a == C64::new(0.0, 0.0) {
                continue;
            }
            for k2 in 0..kd {
                out[(k1, k2)] += a * v[split.at(k2, t)].conj();
            }
        }
    }
    DensityMatrix::from_parts_unchecked(layout.select(&pos)?, out)
}

/// Purification `Σ_j √λ_j |e_j⟩|j⟩` with an ancilla of dimension equal to the
/// numerical rank of `rho`. The ancilla is appended last and labelled `anc`
/// (or a fresh variant if `anc` is taken).
pub fn purify(rho: &DensityMatrix) -> Result<PureState> {
    let spec = eig_hermitian(rho)?;
    let rank = spec.rank(RANK_TOL).max(1);
    let d = rho.dim();
    let label = rho.layout().fresh_label("anc");
    let mut parties = rho.layout().parties().to_vec();
    parties.push(Party::new(label, rank));
    let layout = SystemLayout::with_trivial_factors(parties)?;
    let mut amps = DVector::zeros(d * rank);
    for j in 0..rank {
        let w = spec.eigenvalues[j].sqrt();
        for i in 0..d {
            amps[i * rank + j] = spec.eigenvectors[(i, j)] * w;
        }
    }
    PureState::new(layout, amps).map_err(|e| match e {
        Error::NotNormalized(n) => {
            Error::NumericalFailure(format!("purification lost normalisation ({n})"))
        }
        other => other,
    })
}
