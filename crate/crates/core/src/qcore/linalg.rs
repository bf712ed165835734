//! Hermitian eigendecomposition.
//!
//! Dense problems go through nalgebra's symmetric eigensolver (which handles
//! complex Hermitian input). The roof search evaluates thousands of tiny
//! reduced matrices per sweep, so orders 1 to 3 also get closed forms.

use nalgebra::{DMatrix, SymmetricEigen};

use super::DensityMatrix;
use crate::{Error, Result, C64};

/// Eigenvalues in `[CLAMP_FLOOR, 0)` are rounded to zero.
pub const CLAMP_FLOOR: f64 = -1e-9;

const MAX_SWEEPS: usize = 100_000;

/// Largest entry modulus of a complex matrix.
pub trait MaxAbs {
    fn max_abs(&self) -> f64;
}

impl MaxAbs for DMatrix<C64> {
    fn max_abs(&self) -> f64 {
        self.iter().fold(0.0, |m, z| m.max(z.norm()))
    }
}

/// Eigen-decomposition of a density matrix.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Descending.
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector of `eigenvalues[k]`.
    pub eigenvectors: DMatrix<C64>,
    /// Set when slightly negative eigenvalues were clamped and the rest rescaled.
    pub clamped: bool,
}

impl Spectrum {
    /// `U diag(λ) U†`.
    pub fn reconstruct(&self) -> DMatrix<C64> {
        let n = self.eigenvectors.nrows();
        let mut out = DMatrix::zeros(n, n);
        for (k, &lam) in self.eigenvalues.iter().enumerate() {
            if lam == 0.0 {
                continue;
            }
            let col = self.eigenvectors.column(k);
            for i in 0..n {
                let a = col[i] * lam;
                for j in 0..n {
                    out[(i, j)] += a * col[j].conj();
                }
            }
        }
        out
    }

    /// Number of eigenvalues above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.eigenvalues.iter().filter(|&&l| l > tol).count()
    }
}

/// Eigenpairs of a Hermitian matrix, eigenvalues descending, no clamping.
pub fn hermitian_eigen(m: &DMatrix<C64>) -> Result<(Vec<f64>, DMatrix<C64>)> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: m.ncols() });
    }
    let eig = SymmetricEigen::try_new(m.clone(), f64::EPSILON, MAX_SWEEPS)
        .ok_or_else(|| Error::NumericalFailure("Hermitian eigensolver did not converge".into()))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    Ok((values, vectors))
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Result<Vec<f64>> {
    let n = m.nrows();
    if n <= 3 {
        let mut buf = [C64::new(0.0, 0.0); 9];
        for i in 0..n {
            for j in 0..n {
                buf[i * n + j] = m[(i, j)];
            }
        }
        let mut out = [0.0; 3];
        small_eigenvalues(&buf[..n * n], n, &mut out);
        return Ok(out[..n].to_vec());
    }
    let eig = SymmetricEigen::try_new(m.clone(), f64::EPSILON, MAX_SWEEPS)
        .ok_or_else(|| Error::NumericalFailure("Hermitian eigensolver did not converge".into()))?;
    let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    Ok(v)
}

/// Closed-form eigenvalues of a row-major Hermitian matrix of order 1..=3,
/// written descending into `out[..n]`.
pub(crate) fn small_eigenvalues(m: &[C64], n: usize, out: &mut [f64]) {
    match n {
        1 => out[0] = m[0].re,
        2 => {
            let a = m[0].re;
            let d = m[3].re;
            let b = m[1];
            let half_tr = 0.5 * (a + d);
            let half_diff = 0.5 * (a - d);
            let r = (half_diff * half_diff + b.norm_sqr()).sqrt();
            out[0] = half_tr + r;
            out[1] = half_tr - r;
        }
        3 => {
            let mut a = [[C64::new(0.0, 0.0); 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    a[i][j] = m[i * 3 + j];
                }
            }
            let mut d = jacobi3(&mut a);
            d.sort_by(|x, y| y.total_cmp(x));
            out[..3].copy_from_slice(&d);
        }
        _ => unreachable!("small_eigenvalues supports orders 1..=3"),
    }
}

/// Cyclic complex Jacobi on a 3×3 Hermitian matrix; returns the diagonal.
///
/// Absolute eigenvalue error stays at rounding level even for clustered
/// spectra, which the trigonometric closed form cannot guarantee.
fn jacobi3(a: &mut [[C64; 3]; 3]) -> [f64; 3] {
    let scale: f64 = a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>();
    for _ in 0..32 {
        let off = a[0][1].norm_sqr() + a[0][2].norm_sqr() + a[1][2].norm_sqr();
        if off <= 1e-34 * scale || off == 0.0 {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            let g = a[p][q].norm();
            if g == 0.0 {
                continue;
            }
            let phase = a[p][q] / g;
            let app = a[p][p].re;
            let aqq = a[q][q].re;
            let theta = (aqq - app) / (2.0 * g);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            // G = diag(1, conj(phase)) · [[c, s], [-s, c]] on coordinates (p, q)
            let gpp = C64::new(c, 0.0);
            let gpq = C64::new(s, 0.0);
            let gqp = phase.conj() * -s;
            let gqq = phase.conj() * c;
            for row in a.iter_mut() {
                let (x, y) = (row[p], row[q]);
                row[p] = x * gpp + y * gqp;
                row[q] = x * gpq + y * gqq;
            }
            for col in 0..3 {
                let (x, y) = (a[p][col], a[q][col]);
                a[p][col] = gpp.conj() * x + gqp.conj() * y;
                a[q][col] = gpq.conj() * x + gqq.conj() * y;
            }
            a[p][q] = C64::new(0.0, 0.0);
            a[q][p] = C64::new(0.0, 0.0);
        }
    }
    [a[0][0].re, a[1][1].re, a[2][2].re]
}

/// Eigendecomposition of a density matrix with the clamping rule applied.
///
/// Eigenvalues in `[-1e-9, 0)` become zero and the spectrum is rescaled to
/// unit sum; anything more negative is rejected.
pub fn eig_hermitian(rho: &DensityMatrix) -> Result<Spectrum> {
    let (mut values, vectors) = hermitian_eigen(rho.matrix())?;
    let min = values.last().copied().unwrap_or(0.0);
    if min < CLAMP_FLOOR {
        return Err(Error::NotPsd(min));
    }
    let mut clamped = false;
    for v in values.iter_mut() {
        if *v < 0.0 {
            *v = 0.0;
            clamped = true;
        }
    }
    if clamped {
        let s: f64 = values.iter().sum();
        if s > 0.0 {
            values.iter_mut().for_each(|v| *v /= s);
        }
    }
    Ok(Spectrum { eigenvalues: values, eigenvectors: vectors, clamped })
}
