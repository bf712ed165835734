use nalgebra::{DMatrix, DVector};

use super::{linalg, SystemLayout};
use crate::{Error, Result, C64};

pub const NORM_TOL: f64 = 1e-10;
pub const HERMITIAN_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
/// Smallest admissible eigenvalue of a density matrix.
pub const PSD_TOL: f64 = 1e-9;

/// Unit vector on a multipartite Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: DVector<C64>,
    layout: SystemLayout,
}

impl PureState {
    /// Wraps amplitudes that are already normalised within `1e-10`.
    pub fn new(layout: SystemLayout, amplitudes: DVector<C64>) -> Result<Self> {
        check_len(&layout, amplitudes.len())?;
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { amplitudes, layout })
    }

    /// Normalises `amplitudes` first.
    pub fn normalized(layout: SystemLayout, amplitudes: DVector<C64>) -> Result<Self> {
        check_len(&layout, amplitudes.len())?;
        let norm = amplitudes.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { amplitudes: amplitudes.unscale(norm), layout })
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn layout(&self) -> &SystemLayout {
        &self.layout
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn density(&self) -> DensityMatrix {
        DensityMatrix {
            matrix: &self.amplitudes * self.amplitudes.adjoint(),
            layout: self.layout.clone(),
        }
    }

    /// Same amplitudes on a relabelled layout of identical dimensions.
    pub fn with_layout(&self, layout: SystemLayout) -> Result<Self> {
        if layout.dims() != self.layout.dims() {
            return Err(Error::InvalidLayout("relabelled layout must keep dimensions".into()));
        }
        Ok(Self { amplitudes: self.amplitudes.clone(), layout })
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix on a layout.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: DMatrix<C64>,
    layout: SystemLayout,
}

impl DensityMatrix {
    /// Validates Hermiticity, trace and positivity.
    pub fn new(layout: SystemLayout, matrix: DMatrix<C64>) -> Result<Self> {
        let rho = Self::from_parts_unchecked(layout, matrix)?;
        rho.validate()?;
        Ok(rho)
    }

    /// Only checks shape. For matrices produced by trace-preserving maps of
    /// already-validated states.
    pub(crate) fn from_parts_unchecked(layout: SystemLayout, matrix: DMatrix<C64>) -> Result<Self> {
        check_len(&layout, matrix.nrows())?;
        check_len(&layout, matrix.ncols())?;
        Ok(Self { matrix, layout })
    }

    pub fn validate(&self) -> Result<()> {
        let dev = hermitian_deviation(&self.matrix);
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let tr = self.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidTrace(tr));
        }
        let min = linalg::hermitian_eigenvalues(&self.matrix)?
            .last()
            .copied()
            .unwrap_or(0.0);
        if min < -PSD_TOL {
            return Err(Error::NotPsd(min));
        }
        Ok(())
    }

    /// Diagonal state, e.g. `diagonal(layout, &[1.0, 0.0])` for `|0⟩⟨0|`.
    pub fn diagonal(layout: SystemLayout, probs: &[f64]) -> Result<Self> {
        check_len(&layout, probs.len())?;
        let d = DVector::from_iterator(probs.len(), probs.iter().map(|&p| C64::new(p, 0.0)));
        Self::new(layout, DMatrix::from_diagonal(&d))
    }

    /// Maximally mixed state `I/d`.
    pub fn maximally_mixed(layout: SystemLayout) -> Self {
        let d = layout.total_dim();
        let matrix = DMatrix::identity(d, d) * C64::new(1.0 / d as f64, 0.0);
        Self { matrix, layout }
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn layout(&self) -> &SystemLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diagonal().iter().map(|z| z.re).sum()
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// A global state of either kind.
#[derive(Debug, Clone, PartialEq)]
pub enum QuantumState {
    Pure(PureState),
    Mixed(DensityMatrix),
}

impl QuantumState {
    pub fn layout(&self) -> &SystemLayout {
        match self {
            Self::Pure(p) => p.layout(),
            Self::Mixed(m) => m.layout(),
        }
    }

    pub fn density(&self) -> DensityMatrix {
        match self {
            Self::Pure(p) => p.density(),
            Self::Mixed(m) => m.clone(),
        }
    }

    pub fn as_ref(&self) -> StateRef<'_> {
        match self {
            Self::Pure(p) => StateRef::Pure(p),
            Self::Mixed(m) => StateRef::Mixed(m),
        }
    }
}

impl From<PureState> for QuantumState {
    fn from(p: PureState) -> Self {
        Self::Pure(p)
    }
}

impl From<DensityMatrix> for QuantumState {
    fn from(m: DensityMatrix) -> Self {
        Self::Mixed(m)
    }
}

/// Borrowed view of a global state.
#[derive(Debug, Clone, Copy)]
pub enum StateRef<'a> {
    Pure(&'a PureState),
    Mixed(&'a DensityMatrix),
}

impl<'a> StateRef<'a> {
    pub fn layout(&self) -> &'a SystemLayout {
        match self {
            Self::Pure(p) => p.layout(),
            Self::Mixed(m) => m.layout(),
        }
    }
}

impl<'a> From<&'a PureState> for StateRef<'a> {
    fn from(p: &'a PureState) -> Self {
        Self::Pure(p)
    }
}

impl<'a> From<&'a DensityMatrix> for StateRef<'a> {
    fn from(m: &'a DensityMatrix) -> Self {
        Self::Mixed(m)
    }
}

impl<'a> From<&'a QuantumState> for StateRef<'a> {
    fn from(s: &'a QuantumState) -> Self {
        s.as_ref()
    }
}

pub(crate) fn hermitian_deviation(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

fn check_len(layout: &SystemLayout, len: usize) -> Result<()> {
    if layout.total_dim() != len {
        return Err(Error::DimensionMismatch { expected: layout.total_dim(), got: len });
    }
    Ok(())
}
