//! JSON state files.
//!
//! ```json
//! {"layout": [{"label": "A", "dim": 2}, ...], "re": [[...]], "im": [[...]]}
//! ```
//!
//! `re`/`im` hold row-major matrices for density matrices. A flat array is
//! read as a pure-state amplitude vector.

use std::path::Path;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{DensityMatrix, Party, PureState, QuantumState, SystemLayout};
use crate::{Error, Result, C64};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Grid {
    Vector(Vec<f64>),
    Matrix(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub layout: Vec<Party>,
    pub re: Grid,
    pub im: Grid,
}

impl StateFile {
    pub fn from_density(rho: &DensityMatrix) -> Self {
        let m = rho.matrix();
        let rows = |f: fn(&C64) -> f64| {
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect())
                .collect()
        };
        Self {
            layout: rho.layout().parties().to_vec(),
            re: Grid::Matrix(rows(|z| z.re)),
            im: Grid::Matrix(rows(|z| z.im)),
        }
    }

    pub fn from_pure(psi: &PureState) -> Self {
        let a = psi.amplitudes();
        Self {
            layout: psi.layout().parties().to_vec(),
            re: Grid::Vector(a.iter().map(|z| z.re).collect()),
            im: Grid::Vector(a.iter().map(|z| z.im).collect()),
        }
    }

    pub fn from_state(state: &QuantumState) -> Self {
        match state {
            QuantumState::Pure(p) => Self::from_pure(p),
            QuantumState::Mixed(m) => Self::from_density(m),
        }
    }

    pub fn into_state(self) -> Result<QuantumState> {
        let layout = SystemLayout::new(self.layout)?;
        let d = layout.total_dim();
        match (self.re, self.im) {
            (Grid::Vector(re), Grid::Vector(im)) => {
                if re.len() != d || im.len() != d {
                    return Err(Error::DimensionMismatch { expected: d, got: re.len().max(im.len()) });
                }
                let amps = DVector::from_iterator(d, re.iter().zip(&im).map(|(&r, &i)| C64::new(r, i)));
                Ok(QuantumState::Pure(PureState::new(layout, amps)?))
            }
            (Grid::Matrix(re), Grid::Matrix(im)) => {
                let ok_shape = |g: &Vec<Vec<f64>>| g.len() == d && g.iter().all(|r| r.len() == d);
                if !ok_shape(&re) || !ok_shape(&im) {
                    return Err(Error::Config(format!("state matrices must be {d}x{d}")));
                }
                let m = DMatrix::from_fn(d, d, |i, j| C64::new(re[i][j], im[i][j]));
                Ok(QuantumState::Mixed(DensityMatrix::new(layout, m)?))
            }
            _ => Err(Error::Config("`re` and `im` must have the same shape".into())),
        }
    }
}

pub fn read_state_file(path: impl AsRef<Path>) -> Result<QuantumState> {
    let text = std::fs::read_to_string(path)?;
    let file: StateFile = serde_json::from_str(&text)?;
    file.into_state()
}

pub fn write_state_file(path: impl AsRef<Path>, state: &QuantumState) -> Result<()> {
    let text = serde_json::to_string_pretty(&StateFile::from_state(state))?;
    std::fs::write(path, text)?;
    Ok(())
}
