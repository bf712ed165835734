//! Derivative-free ascent over size-`m` ensembles.
//!
//! An ensemble is stored as `m` unnormalised rows `ψ̃_i = Σ_j V_ij √λ_j e_j`.
//! Left-multiplying the isometry `V` by a unitary mixes rows, so every move is
//! a two-row rotation
//!
//! ```text
//! ψ̃_i' = c ψ̃_i − e^{iφ} s ψ̃_k
//! ψ̃_k' = e^{−iφ} s ψ̃_i + c ψ̃_k
//! ```
//!
//! which keeps `V†V = I` exactly. For each pair and each phase in
//! `{0, π/2}` the angle is chosen by a coarse scan of `[−π/2, π/2)` followed
//! by golden-section refinement. A sweep visits every pair once; sweeps stop
//! when the total gain falls below `step_tol`.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::DMatrix;

use super::RoofObjective;
use crate::{rng, C64};

const GRID: usize = 8;
const GOLDEN_ITERS: usize = 18;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

pub(crate) struct Ensemble {
    pub rows: Vec<C64>,
    pub m: usize,
    pub dim: usize,
}

impl Ensemble {
    /// Rows of `V diag(√λ) E^T` for eigenvalues `lambdas` and eigenvectors
    /// in the columns of `vectors`.
    pub fn from_isometry(v: &DMatrix<C64>, lambdas: &[f64], vectors: &DMatrix<C64>) -> Self {
        let (m, r) = v.shape();
        let dim = vectors.nrows();
        let mut rows = vec![C64::new(0.0, 0.0); m * dim];
        for i in 0..m {
            let row = &mut rows[i * dim..(i + 1) * dim];
            for j in 0..r {
                let coef = v[(i, j)] * lambdas[j].sqrt();
                if coef == C64::new(0.0, 0.0) {
                    continue;
                }
                for (x, e) in row.iter_mut().zip(vectors.column(j).iter()) {
                    *x += coef * e;
                }
            }
        }
        Self { rows, m, dim }
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.rows[i * self.dim..(i + 1) * self.dim]
    }
}

/// Random isometry: Q factor of an `m×r` Ginibre matrix.
pub(crate) fn random_isometry(m: usize, r: usize, seed: u64) -> DMatrix<C64> {
    let mut rng = rng::stream(seed, rng::ROOF_STREAM);
    let g = rng::ginibre(&mut rng, m, r);
    g.qr().q()
}

struct Scratch {
    a: Vec<C64>,
    b: Vec<C64>,
}

#[inline]
fn rotate(ri: &[C64], rk: &[C64], theta: f64, phase: C64, s: &mut Scratch) {
    let (sn, c) = theta.sin_cos();
    let ps = phase * sn;
    let ps_conj = ps.conj();
    for ((x, y), (a, b)) in ri.iter().zip(rk).zip(s.a.iter_mut().zip(s.b.iter_mut())) {
        *a = x * c - ps * y;
        *b = ps_conj * x + y * c;
    }
}

fn pair_value(
    obj: &dyn RoofObjective,
    ri: &[C64],
    rk: &[C64],
    theta: f64,
    phase: C64,
    s: &mut Scratch,
) -> f64 {
    rotate(ri, rk, theta, phase, s);
    obj.weighted(&s.a) + obj.weighted(&s.b)
}

/// Best angle for one pair and phase, with its pair value.
fn line_search(
    obj: &dyn RoofObjective,
    ri: &[C64],
    rk: &[C64],
    phase: C64,
    current: f64,
    s: &mut Scratch,
) -> (f64, f64) {
    let h = PI / GRID as f64;
    let mut best = (0.0, current);
    for q in 0..GRID {
        let theta = -FRAC_PI_2 + q as f64 * h;
        if theta == 0.0 {
            continue;
        }
        let v = pair_value(obj, ri, rk, theta, phase, s);
        if v > best.1 {
            best = (theta, v);
        }
    }
    let (mut lo, mut hi) = (best.0 - h, best.0 + h);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = pair_value(obj, ri, rk, x1, phase, s);
    let mut f2 = pair_value(obj, ri, rk, x2, phase, s);
    for _ in 0..GOLDEN_ITERS {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = pair_value(obj, ri, rk, x2, phase, s);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = pair_value(obj, ri, rk, x1, phase, s);
        }
    }
    let (x, f) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    if f > best.1 {
        best = (x, f);
    }
    best
}

/// Coordinate ascent from `ens`; returns the number of sweeps performed.
pub(crate) fn ascend(obj: &dyn RoofObjective, ens: &mut Ensemble, max_sweeps: usize, step_tol: f64) -> usize {
    let (m, dim) = (ens.m, ens.dim);
    let mut vals: Vec<f64> = (0..m).map(|i| obj.weighted(ens.row(i))).collect();
    let mut s = Scratch { a: vec![C64::new(0.0, 0.0); dim], b: vec![C64::new(0.0, 0.0); dim] };
    let phases = [C64::new(1.0, 0.0), C64::new(0.0, 1.0)];
    let mut sweeps = 0;
    while sweeps < max_sweeps {
        sweeps += 1;
        let mut gain = 0.0;
        for i in 0..m {
            for k in (i + 1)..m {
                for &phase in &phases {
                    let current = vals[i] + vals[k];
                    let (ri, rk) = split_rows(&mut ens.rows, dim, i, k);
                    let (theta, v) = line_search(obj, ri, rk, phase, current, &mut s);
                    if theta != 0.0 && v > current {
                        rotate(ri, rk, theta, phase, &mut s);
                        ri.copy_from_slice(&s.a);
                        rk.copy_from_slice(&s.b);
                        let (vi, vk) = (obj.weighted(ri), obj.weighted(rk));
                        gain += vi + vk - current;
                        vals[i] = vi;
                        vals[k] = vk;
                    }
                }
            }
        }
        if gain < step_tol {
            break;
        }
    }
    sweeps
}

fn split_rows(rows: &mut [C64], dim: usize, i: usize, k: usize) -> (&mut [C64], &mut [C64]) {
    debug_assert!(i < k);
    let (head, tail) = rows.split_at_mut(k * dim);
    (&mut head[i * dim..(i + 1) * dim], &mut tail[..dim])
}
