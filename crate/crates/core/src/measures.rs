//! Bipartite entanglement of pure states, plus the two-qubit closed forms
//! used as oracles for the roof search.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::qcore::{
    hermitian_eigen, hermitian_eigenvalues, reduced_from_pure, DensityMatrix, PureState,
    SystemLayout,
};
use crate::{Error, Result, C64};

/// Eigenvalues at or below this are dropped from entropy sums.
pub const ENTROPY_EIG_FLOOR: f64 = 1e-12;
/// Eigenvalues below this are solver noise when forming `√ρ`.
const SQRT_EIG_FLOOR: f64 = 1e-14;

/// A cut of the parties into two nonempty complementary sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    side_a: Vec<String>,
    side_b: Vec<String>,
}

impl Bipartition {
    /// `side_a` against everything else in `layout`.
    pub fn new<S: AsRef<str>>(layout: &SystemLayout, side_a: &[S]) -> Result<Self> {
        let pos = layout.positions(side_a).map_err(|e| match e {
            Error::EmptySelection => Error::InvalidBipartition("side A is empty".into()),
            other => other,
        })?;
        if pos.len() == layout.len() {
            return Err(Error::InvalidBipartition("side B is empty".into()));
        }
        let labels = layout.labels();
        let side_a = pos.iter().map(|&i| labels[i].to_string()).collect();
        let side_b = (0..layout.len())
            .filter(|i| !pos.contains(i))
            .map(|i| labels[i].to_string())
            .collect();
        Ok(Self { side_a, side_b })
    }

    pub fn side_a(&self) -> &[String] {
        &self.side_a
    }

    pub fn side_b(&self) -> &[String] {
        &self.side_b
    }

    pub fn swapped(&self) -> Self {
        Self { side_a: self.side_b.clone(), side_b: self.side_a.clone() }
    }

    /// Errors unless this cut partitions exactly the parties of `layout`.
    pub fn check(&self, layout: &SystemLayout) -> Result<()> {
        let mut all: Vec<&str> = self.side_a.iter().chain(&self.side_b).map(String::as_str).collect();
        all.sort_unstable();
        let mut want = layout.labels();
        want.sort_unstable();
        if all != want {
            return Err(Error::InvalidBipartition(format!(
                "cut {:?}|{:?} does not match layout {:?}",
                self.side_a,
                self.side_b,
                layout.labels()
            )));
        }
        Ok(())
    }

    pub(crate) fn side_dims(&self, layout: &SystemLayout) -> Result<(usize, usize)> {
        let dim = |side: &[String]| -> Result<usize> {
            side.iter().map(|l| Ok(layout.parties()[layout.position(l)?].dim)).product()
        };
        Ok((dim(&self.side_a)?, dim(&self.side_b)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureKind {
    EntropyOfEntanglement,
    Tangle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureValue {
    pub value: f64,
    pub kind: MeasureKind,
}

/// `−Σ λ log2 λ` over eigenvalues above [`ENTROPY_EIG_FLOOR`].
pub fn entropy_bits(eigenvalues: &[f64]) -> f64 {
    let s: f64 = eigenvalues
        .iter()
        .filter(|&&l| l > ENTROPY_EIG_FLOOR)
        .map(|&l| -l * l.log2())
        .sum();
    s.max(0.0)
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    match hermitian_eigenvalues(rho.matrix()) {
        Ok(v) => entropy_bits(&v),
        // SymmetricEigen cannot fail on a validated density matrix in practice;
        // fall back to the diagonal bound rather than propagating.
        Err(_) => entropy_bits(&rho.matrix().diagonal().iter().map(|z| z.re).collect::<Vec<_>>()),
    }
}

/// `S(ρ_A)` for the reduced state of a pure state, evaluated on the smaller side.
pub fn entropy_of_entanglement(psi: &PureState, cut: &Bipartition) -> Result<MeasureValue> {
    cut.check(psi.layout())?;
    let (da, db) = cut.side_dims(psi.layout())?;
    let side = if da <= db { cut.side_a() } else { cut.side_b() };
    let reduced = reduced_from_pure(psi, side)?;
    let value = entropy_bits(&hermitian_eigenvalues(reduced.matrix())?);
    Ok(MeasureValue { value, kind: MeasureKind::EntropyOfEntanglement })
}

/// `4 det ρ_A` where side A is a single qubit.
pub fn tangle_pure(psi: &PureState, cut: &Bipartition) -> Result<MeasureValue> {
    cut.check(psi.layout())?;
    let (da, _) = cut.side_dims(psi.layout())?;
    if cut.side_a().len() != 1 || da != 2 {
        return Err(Error::UnsupportedDimension(format!(
            "tangle needs a single qubit on side A, got {:?} of dimension {da}",
            cut.side_a()
        )));
    }
    let r = reduced_from_pure(psi, cut.side_a())?;
    let m = r.matrix();
    let det = m[(0, 0)].re * m[(1, 1)].re - m[(0, 1)].norm_sqr();
    Ok(MeasureValue { value: (4.0 * det).clamp(0.0, 1.0), kind: MeasureKind::Tangle })
}

/// Square roots of the eigenvalues of `√ρ ρ̃ √ρ`, descending, where
/// `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`.
///
/// Computed as the singular values of `√ρ (σy⊗σy) √ρ*`, whose Gram matrix is
/// `√ρ ρ̃ √ρ`; this avoids square-rooting rounding noise in null directions.
pub fn spin_flip_spectrum(rho: &DensityMatrix) -> Result<[f64; 4]> {
    if rho.layout().dims() != [2, 2] {
        return Err(Error::UnsupportedDimension(format!(
            "two-qubit concurrence needs dims [2, 2], got {:?}",
            rho.layout().dims()
        )));
    }
    let (vals, vecs) = hermitian_eigen(rho.matrix())?;
    let sqrt_diag = DMatrix::from_fn(4, 4, |i, j| {
        if i == j && vals[i] > SQRT_EIG_FLOOR {
            C64::new(vals[i].sqrt(), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let root = &vecs * sqrt_diag * vecs.adjoint();
    // σy⊗σy is the anti-diagonal with signs (-1, 1, 1, -1)
    let sign = [-1.0, 1.0, 1.0, -1.0];
    let yy = DMatrix::from_fn(4, 4, |i, j| {
        if i + j == 3 {
            C64::new(sign[i], 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let m = &root * yy * root.map(|z| z.conj());
    let sv = m.singular_values();
    let mut out = [0.0; 4];
    for (o, s) in out.iter_mut().zip(sv.iter()) {
        *o = *s;
    }
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(out)
}

/// Wootters concurrence `max(0, λ1 − λ2 − λ3 − λ4)`.
pub fn concurrence_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    let l = spin_flip_spectrum(rho)?;
    Ok((l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0))
}

/// Concurrence of assistance `Σ λ_i`.
pub fn concurrence_of_assistance(rho: &DensityMatrix) -> Result<f64> {
    let l = spin_flip_spectrum(rho)?;
    Ok(l.iter().sum::<f64>().clamp(0.0, 1.0))
}
