//! Dominant-eigenvalue magnitude by block power iteration.
//!
//! A small orthonormal block is pushed through the matrix and
//! re-orthonormalized every step; the largest Ritz value magnitude of the
//! projected block is the estimate. Complex conjugate pairs, which are the
//! norm for random non-symmetric matrices, are captured because the block
//! spans the pair's real invariant subspace.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::CsrMatrix;
use crate::seed;

const BLOCK: usize = 8;
const MAX_ITER: usize = 10_000;
const CHECK_EVERY: usize = 10;
const REL_TOL: f64 = 1e-10;
const ZERO_SPECTRUM: f64 = 1e-12;

fn orthonormalize(m: DMatrix<f64>) -> DMatrix<f64> {
    m.qr().q()
}

fn ritz_radius(q: &DMatrix<f64>, aq: &DMatrix<f64>) -> f64 {
    let h = q.transpose() * aq;
    h.complex_eigenvalues()
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Estimates `|λ_max|` of a square sparse matrix.
pub fn spectral_radius_sparse(a: &CsrMatrix) -> f64 {
    let n = a.nrows();
    if n == 0 {
        return 0.0;
    }
    let b = BLOCK.min(n);
    let mut rng = seed::rng_from_seed(seed::derive(0x5eed_5bec, &[n as u64]));
    let start = DMatrix::from_fn(n, b, |_, _| rng.sample::<f64, _>(StandardNormal));
    let mut q = orthonormalize(start);
    let mut estimate = f64::NAN;

    for it in 1..=MAX_ITER {
        let aq = a.mul_dense(&q);
        if it % CHECK_EVERY == 0 || it == 1 {
            let next = ritz_radius(&q, &aq);
            if aq.norm() == 0.0 {
                return 0.0;
            }
            if (next - estimate).abs() <= REL_TOL * next {
                return next;
            }
            estimate = next;
        }
        q = orthonormalize(aq);
        if q.iter().any(|v| !v.is_finite()) {
            break;
        }
    }
    estimate
}

/// Estimates `|λ_max|` of a dense square matrix.
pub fn spectral_radius(w: &DMatrix<f64>) -> f64 {
    spectral_radius_sparse(&CsrMatrix::from_dense(w))
}

/// Rescales `w` so its dominant eigenvalue magnitude equals `rho`.
pub fn scale_spectral_radius(w: &DMatrix<f64>, rho: f64) -> Result<DMatrix<f64>> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "spectral radius {rho} must be positive"
        )));
    }
    let current = spectral_radius(w);
    if !(current >= ZERO_SPECTRUM) {
        return Err(Error::ZeroSpectrum(current));
    }
    Ok(w * (rho / current))
}
