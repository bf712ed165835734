//! Named and random state factories.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::qcore::{DensityMatrix, Party, PureState, QuantumState, SystemLayout};
use crate::{rng, Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateKind {
    W,
    Ghz,
    HaarPure,
    RandomMixed,
    Product,
}

impl StateKind {
    pub fn is_pure(self) -> bool {
        !matches!(self, Self::RandomMixed)
    }
}

impl std::str::FromStr for StateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "w" => Ok(Self::W),
            "ghz" => Ok(Self::Ghz),
            "haar_pure" => Ok(Self::HaarPure),
            "random_mixed" => Ok(Self::RandomMixed),
            "product" => Ok(Self::Product),
            other => Err(Error::Config(format!("unknown state kind `{other}`"))),
        }
    }
}

/// Recipe for one family of states, as written in config files.
///
/// The layout is given either as `parties` + `dim` (labels `A`, `B`, ...) or
/// as an explicit `layout` list. `samples` draws that many states with
/// seeds `seed`, `seed + 1`, ...
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    pub kind: StateKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parties: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layout: Option<Vec<Party>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "one")]
    pub samples: usize,
}

fn one() -> usize {
    1
}

impl StateSpec {
    pub fn new(kind: StateKind, parties: usize, dim: usize) -> Self {
        Self { kind, parties: Some(parties), dim: Some(dim), layout: None, rank: None, seed: 0, samples: 1 }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_rank(mut self, rank: usize) -> Self {
        self.rank = Some(rank);
        self
    }

    pub fn resolved_layout(&self) -> Result<SystemLayout> {
        let layout = match (&self.layout, self.parties) {
            (Some(parties), _) => SystemLayout::new(parties.clone())?,
            (None, Some(n)) => SystemLayout::uniform(n, self.dim.unwrap_or(2))?,
            (None, None) => return Err(Error::Config("state needs `parties` or `layout`".into())),
        };
        if let Some(r) = self.rank {
            if r == 0 || r > layout.total_dim() {
                return Err(Error::Config(format!(
                    "rank {r} outside [1, {}]",
                    layout.total_dim()
                )));
            }
        }
        if matches!(self.kind, StateKind::W) && layout.dims().iter().any(|&d| d != 2) {
            return Err(Error::Config("W states are defined on qubits".into()));
        }
        if matches!(self.kind, StateKind::Ghz) {
            let dims = layout.dims();
            if dims.iter().any(|&d| d != dims[0]) {
                return Err(Error::Config("GHZ states need equal local dimensions".into()));
            }
        }
        Ok(layout)
    }

    pub fn sample_seed(&self, sample: usize) -> u64 {
        self.seed.wrapping_add(sample as u64)
    }

    /// The `sample`-th state of this family.
    pub fn build(&self, sample: usize) -> Result<QuantumState> {
        let layout = self.resolved_layout()?;
        let seed = self.sample_seed(sample);
        let n = layout.len();
        let relabel = |p: PureState| p.with_layout(layout.clone());
        Ok(match self.kind {
            StateKind::W => QuantumState::Pure(relabel(w_state(n)?)?),
            StateKind::Ghz => QuantumState::Pure(relabel(ghz_state(n, layout.dims()[0])?)?),
            StateKind::Product => QuantumState::Pure(product_state(&layout)),
            StateKind::HaarPure => QuantumState::Pure(haar_pure(&layout, seed)),
            StateKind::RandomMixed => {
                let rank = self.rank.unwrap_or(layout.total_dim());
                QuantumState::Mixed(random_mixed(&layout, rank, seed)?)
            }
        })
    }
}

/// Equal superposition of the `n` single-excitation basis states.
pub fn w_state(n: usize) -> Result<PureState> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("W state needs n >= 2, got {n}")));
    }
    let layout = SystemLayout::uniform(n, 2)?;
    let amp = C64::new(1.0 / (n as f64).sqrt(), 0.0);
    let mut v = DVector::zeros(layout.total_dim());
    for k in 0..n {
        v[1 << k] = amp;
    }
    PureState::new(layout, v)
}

/// `Σ_k |k⟩^{⊗n} / √d`.
pub fn ghz_state(n: usize, d: usize) -> Result<PureState> {
    if n < 2 || d < 2 {
        return Err(Error::InvalidArgument(format!("GHZ state needs n, d >= 2, got n={n}, d={d}")));
    }
    let layout = SystemLayout::uniform(n, d)?;
    let step: usize = (0..n).map(|p| d.pow(p as u32)).sum();
    let amp = C64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut v = DVector::zeros(layout.total_dim());
    for k in 0..d {
        v[k * step] = amp;
    }
    PureState::new(layout, v)
}

/// `|0…0⟩`.
pub fn product_state(layout: &SystemLayout) -> PureState {
    let mut v = DVector::zeros(layout.total_dim());
    v[0] = C64::new(1.0, 0.0);
    PureState::new(layout.clone(), v).expect("basis vector is normalised")
}

/// Haar-random pure state from normalised complex Gaussian amplitudes.
pub fn haar_pure(layout: &SystemLayout, seed: u64) -> PureState {
    let mut r = rng::stream(seed, rng::STATE_STREAM);
    let v = DVector::from_iterator(
        layout.total_dim(),
        (0..layout.total_dim()).map(|_| rng::complex_gaussian(&mut r)),
    );
    PureState::normalized(layout.clone(), v).expect("Gaussian vector is almost surely nonzero")
}

/// Marginal of a Haar-random pure state on `layout ⊗ C^rank`.
pub fn random_mixed(layout: &SystemLayout, rank: usize, seed: u64) -> Result<DensityMatrix> {
    let d = layout.total_dim();
    if rank == 0 || rank > d {
        return Err(Error::InvalidArgument(format!("rank {rank} outside [1, {d}]")));
    }
    let mut r = rng::stream(seed, rng::STATE_STREAM);
    let g = rng::ginibre(&mut r, d, rank);
    let mut m = &g * g.adjoint();
    let tr: f64 = m.diagonal().iter().map(|z| z.re).sum();
    m.unscale_mut(tr);
    // exact Hermitian symmetry
    for i in 0..d {
        m[(i, i)].im = 0.0;
        for j in (i + 1)..d {
            m[(j, i)] = m[(i, j)].conj();
        }
    }
    DensityMatrix::new(layout.clone(), m)
}
