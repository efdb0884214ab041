//! Dense complex linear algebra: DFT matrices, operator norms, spectral
//! radii, and a full complex eigensolver.
//!
//! Self-contained by design — the correctness story of the crate rests on a
//! small-matrix Jacobi SVD used as an internal oracle, power iterations with
//! monotone Rayleigh quotients, and residual checks, not on an external
//! library.

mod eig;
mod lu;
mod matrix;
mod power;
mod rng;
mod svd;

pub use eig::{eig, eig_pairs, eig_top_pairs, EigDecomposition, SpectrumReport, EIG_DIM_CAP};
pub use lu::det_lu;
pub use matrix::{dft_matrix, unitarity_defect, ComplexMatrix};
pub use power::{operator_norm, operator_norm_seeded, spectral_radius, spectral_radius_seeded};
pub use rng::SeededRng;
pub use svd::jacobi_singular_values;

use num_complex::Complex64;
use thiserror::Error;

/// Default seed for all deterministic random starts.
pub const DEFAULT_SEED: u64 = 0x5eed_f0f0_1234_abcd;

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("power iteration did not converge after {iterations} iterations (last estimate {last_estimate:e}, last relative change {last_change:e})")]
    NormNonConverged {
        iterations: usize,
        last_estimate: f64,
        last_change: f64,
    },
    #[error("QR iteration stuck on block {block_lo}..={block_hi} after {iterations} iterations")]
    EigNonConverged {
        block_lo: usize,
        block_hi: usize,
        iterations: usize,
    },
    #[error("power iteration restarts disagree beyond tolerance ({spread:e} > {tol:e}) and eig fallback failed")]
    RestartsDisagree { spread: f64, tol: f64 },
}

/// Fixed-order pairwise (tree) sum. Output is independent of threading and
/// chunking of callers, so CSV outputs reproduce bit-for-bit.
pub(crate) fn pairwise_sum_c64(xs: &[Complex64]) -> Complex64 {
    if xs.len() <= 32 {
        let mut s = Complex64::new(0.0, 0.0);
        for &x in xs {
            s += x;
        }
        return s;
    }
    let mid = xs.len() / 2;
    pairwise_sum_c64(&xs[..mid]) + pairwise_sum_c64(&xs[mid..])
}

pub(crate) fn pairwise_sum_f64(xs: &[f64]) -> f64 {
    if xs.len() <= 32 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum_f64(&xs[..mid]) + pairwise_sum_f64(&xs[mid..])
}

/// `Σ_k a_k · conj(b_k)` with blockwise pairwise accumulation.
pub(crate) fn dot_conj(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    debug_assert_eq!(a.len(), b.len());
    const BLOCK: usize = 128;
    let mut partials: Vec<Complex64> = Vec::with_capacity(a.len() / BLOCK + 1);
    for (ca, cb) in a.chunks(BLOCK).zip(b.chunks(BLOCK)) {
        let mut s = Complex64::new(0.0, 0.0);
        for (x, y) in ca.iter().zip(cb.iter()) {
            s += x * y.conj();
        }
        partials.push(s);
    }
    pairwise_sum_c64(&partials)
}

pub(crate) fn norm2(v: &[Complex64]) -> f64 {
    const BLOCK: usize = 128;
    let mut partials: Vec<f64> = Vec::with_capacity(v.len() / BLOCK + 1);
    for c in v.chunks(BLOCK) {
        partials.push(c.iter().map(|z| z.norm_sqr()).sum());
    }
    pairwise_sum_f64(&partials).sqrt()
}
