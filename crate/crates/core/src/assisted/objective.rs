use crate::measures::{Bipartition, MeasureKind, ENTROPY_EIG_FLOOR};
use crate::qcore::{hermitian_eigenvalues, small_eigenvalues, IndexSplit, SystemLayout};
use crate::{Error, Result, C64};

/// Weighted pure-state functional `‖v‖² · M(v / ‖v‖)` evaluated on an
/// unnormalised vector. The roof search maximises the sum of this over the
/// rows of an ensemble.
pub trait RoofObjective: Sync {
    fn weighted(&self, v: &[C64]) -> f64;
}

/// Reduced-matrix bookkeeping for one side of a cut.
#[derive(Debug, Clone)]
pub(crate) struct CutReducer {
    split: IndexSplit,
}

impl CutReducer {
    pub fn new(layout: &SystemLayout, side: &[String]) -> Result<Self> {
        let pos = layout.positions(side)?;
        Ok(Self { split: IndexSplit::new(layout, &pos) })
    }

    pub fn dim(&self) -> usize {
        self.split.keep_dim
    }

    /// Row-major reduced matrix of `v v†` (unnormalised) into `out`.
    #[inline]
    pub fn reduce(&self, v: &[C64], out: &mut [C64]) {
        let kd = self.split.keep_dim;
        out[..kd * kd].fill(C64::new(0.0, 0.0));
        for t in 0..self.split.rest_dim {
            for k1 in 0..kd {
                let a = v[self.split.at(k1, t)];
                for k2 in k1..kd {
                    out[k1 * kd + k2] += a * v[self.split.at(k2, t)].conj();
                }
            }
        }
        for k1 in 0..kd {
            for k2 in 0..k1 {
                out[k1 * kd + k2] = out[k2 * kd + k1].conj();
            }
        }
    }
}

/// Average entropy of entanglement across a cut.
#[derive(Debug, Clone)]
pub struct EntropyObjective {
    reducer: CutReducer,
}

impl EntropyObjective {
    pub fn new(layout: &SystemLayout, cut: &Bipartition) -> Result<Self> {
        cut.check(layout)?;
        let (da, db) = cut.side_dims(layout)?;
        let side = if da <= db { cut.side_a() } else { cut.side_b() };
        Ok(Self { reducer: CutReducer::new(layout, side)? })
    }
}

impl RoofObjective for EntropyObjective {
    fn weighted(&self, v: &[C64]) -> f64 {
        let kd = self.reducer.dim();
        let p: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if p <= 1e-300 {
            return 0.0;
        }
        let mut eig = [0.0f64; 3];
        let owned;
        let mu: &[f64] = if kd <= 3 {
            let mut buf = [C64::new(0.0, 0.0); 9];
            self.reducer.reduce(v, &mut buf);
            small_eigenvalues(&buf[..kd * kd], kd, &mut eig);
            &eig[..kd]
        } else {
            let mut buf = vec![C64::new(0.0, 0.0); kd * kd];
            self.reducer.reduce(v, &mut buf);
            let m = nalgebra::DMatrix::from_row_slice(kd, kd, &buf);
            owned = hermitian_eigenvalues(&m).unwrap_or_default();
            &owned
        };
        let mut s = 0.0;
        for &m in mu {
            let l = m / p;
            if l > ENTROPY_EIG_FLOOR {
                s -= m * l.log2();
            }
        }
        s.max(0.0)
    }
}

/// Average tangle with a single qubit on side A.
#[derive(Debug, Clone)]
pub struct TangleObjective {
    reducer: CutReducer,
}

impl TangleObjective {
    pub fn new(layout: &SystemLayout, cut: &Bipartition) -> Result<Self> {
        cut.check(layout)?;
        let (da, _) = cut.side_dims(layout)?;
        if cut.side_a().len() != 1 || da != 2 {
            return Err(Error::UnsupportedDimension(format!(
                "tangle needs a single qubit on side A, got {:?} of dimension {da}",
                cut.side_a()
            )));
        }
        Ok(Self { reducer: CutReducer::new(layout, cut.side_a())? })
    }
}

impl RoofObjective for TangleObjective {
    fn weighted(&self, v: &[C64]) -> f64 {
        let p: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if p <= 1e-300 {
            return 0.0;
        }
        let mut buf = [C64::new(0.0, 0.0); 4];
        self.reducer.reduce(v, &mut buf);
        let det = buf[0].re * buf[3].re - buf[1].norm_sqr();
        (4.0 * det / p).max(0.0)
    }
}

pub(crate) fn objective_for(
    kind: MeasureKind,
    layout: &SystemLayout,
    cut: &Bipartition,
) -> Result<Box<dyn RoofObjective>> {
    Ok(match kind {
        MeasureKind::EntropyOfEntanglement => Box::new(EntropyObjective::new(layout, cut)?),
        MeasureKind::Tangle => Box::new(TangleObjective::new(layout, cut)?),
    })
}
