//! Largest singular value and spectral radius by seeded power iteration.

use super::eig::eig;
use super::svd::jacobi_singular_values;
use super::{dot_conj, norm2, ComplexMatrix, NumericsError, SeededRng, DEFAULT_SEED};
use num_complex::Complex64;

/// Dimension at or below which the Jacobi SVD oracle cross-checks (and then
/// supplies) the operator norm.
const ORACLE_DIM: usize = 64;
/// Power iteration must agree with the oracle to this relative tolerance;
/// beyond it one of the two kernels is wrong.
const ORACLE_GUARD: f64 = 1e-4;

/// Largest singular value of `a` (the ℓ²→ℓ² operator norm).
///
/// Power iteration on A†A from a seeded start; the Rayleigh quotient is
/// monotone non-decreasing, so the estimate always approaches the norm from
/// below. For max(rows, cols) ≤ 64 the result is cross-checked against the
/// one-sided Jacobi SVD and the oracle value is returned.
pub fn operator_norm(a: &ComplexMatrix, tol: f64, max_iter: usize) -> Result<f64, NumericsError> {
    operator_norm_seeded(a, tol, max_iter, DEFAULT_SEED)
}

pub fn operator_norm_seeded(
    a: &ComplexMatrix,
    tol: f64,
    max_iter: usize,
    seed: u64,
) -> Result<f64, NumericsError> {
    if a.rows() == 0 || a.cols() == 0 {
        return Err(NumericsError::InvalidArgument(
            "operator_norm: empty matrix".into(),
        ));
    }
    if !(tol > 0.0) {
        return Err(NumericsError::InvalidArgument(
            "operator_norm: tol must be positive".into(),
        ));
    }
    let small = a.rows().max(a.cols()) <= ORACLE_DIM;
    let oracle = if small {
        Some(jacobi_singular_values(a)?[0])
    } else {
        None
    };

    let power = singular_power(a, tol, max_iter, seed);

    match (power, oracle) {
        (Ok(sigma), Some(orc)) => {
            let scale = orc.max(1e-300);
            if (sigma - orc).abs() / scale > ORACLE_GUARD.max(100.0 * tol) {
                return Err(NumericsError::RestartsDisagree {
                    spread: (sigma - orc).abs() / scale,
                    tol: ORACLE_GUARD,
                });
            }
            Ok(orc)
        }
        (Ok(sigma), None) => Ok(sigma),
        // Power iteration stalls on near-degenerate leading singular values;
        // the oracle value is still trustworthy there.
        (Err(_), Some(orc)) => Ok(orc),
        (Err(e), None) => Err(e),
    }
}

fn singular_power(
    a: &ComplexMatrix,
    tol: f64,
    max_iter: usize,
    seed: u64,
) -> Result<f64, NumericsError> {
    let mut rng = SeededRng::new(seed);
    let mut v = rng.complex_vector(a.cols());
    normalize(&mut v);
    let mut sigma = 0.0f64;
    let mut steady = 0usize;
    let mut last_change = f64::INFINITY;
    for it in 0..max_iter {
        let u = a.matvec(&v);
        let new_sigma = norm2(&u);
        if new_sigma == 0.0 {
            return Ok(0.0);
        }
        let mut w = a.adjoint_matvec(&u);
        normalize(&mut w);
        v = w;
        last_change = (new_sigma - sigma).abs() / new_sigma.max(1e-300);
        sigma = new_sigma;
        if it >= 8 && last_change <= tol {
            steady += 1;
            if steady >= 3 {
                return Ok(sigma);
            }
        } else {
            steady = 0;
        }
    }
    Err(NumericsError::NormNonConverged {
        iterations: max_iter,
        last_estimate: sigma,
        last_change,
    })
}

/// Spectral radius by power iteration with 5 seeded restarts, taking the
/// largest converged Rayleigh-quotient modulus. If the restarts disagree
/// beyond `tol` (common for non-normal matrices with near-degenerate
/// moduli) the result falls back to the full eigensolver.
pub fn spectral_radius(a: &ComplexMatrix, tol: f64) -> Result<f64, NumericsError> {
    spectral_radius_seeded(a, tol, DEFAULT_SEED)
}

pub fn spectral_radius_seeded(
    a: &ComplexMatrix,
    tol: f64,
    seed: u64,
) -> Result<f64, NumericsError> {
    if !a.is_square() || a.rows() == 0 {
        return Err(NumericsError::InvalidArgument(
            "spectral_radius: matrix must be square and nonempty".into(),
        ));
    }
    const RESTARTS: u64 = 5;
    const MAX_ITER: usize = 5000;
    let mut estimates = Vec::new();
    let mut all_converged = true;
    for r in 0..RESTARTS {
        match rayleigh_power(a, tol, MAX_ITER, seed.wrapping_add(r * 0x9e37)) {
            Some(rho) => estimates.push(rho),
            None => all_converged = false,
        }
    }
    if all_converged {
        let hi = estimates.iter().cloned().fold(0.0, f64::max);
        let lo = estimates.iter().cloned().fold(f64::INFINITY, f64::min);
        if hi == 0.0 || (hi - lo) / hi.max(1e-300) <= tol {
            return Ok(hi);
        }
    }
    Ok(eig(a, tol)?.spectral_radius)
}

fn rayleigh_power(a: &ComplexMatrix, tol: f64, max_iter: usize, seed: u64) -> Option<f64> {
    let mut rng = SeededRng::new(seed);
    let mut v = rng.complex_vector(a.rows());
    normalize(&mut v);
    let mut rho = 0.0f64;
    let mut steady = 0usize;
    for it in 0..max_iter {
        let av = a.matvec(&v);
        let nav = norm2(&av);
        if nav == 0.0 {
            return Some(0.0);
        }
        let new_rho = dot_conj(&av, &v).norm();
        let change = (new_rho - rho).abs() / new_rho.max(1e-300);
        rho = new_rho;
        v = av;
        let n = 1.0 / nav;
        v.iter_mut().for_each(|z| *z *= n);
        if it >= 10 && change <= tol {
            steady += 1;
            if steady >= 3 {
                return Some(rho);
            }
        } else {
            steady = 0;
        }
    }
    None
}

fn normalize(v: &mut [Complex64]) {
    let n = norm2(v);
    if n > 0.0 {
        let inv = 1.0 / n;
        v.iter_mut().for_each(|z| *z *= inv);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::dft_matrix;

    #[test]
    fn identity_norm_is_one() {
        let n = operator_norm(&ComplexMatrix::identity(5), 1e-12, 1000).unwrap();
        assert!((n - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dft_norm_is_one() {
        for n in [2usize, 8, 33, 100, 257] {
            let f = dft_matrix(n).unwrap();
            let s = operator_norm(&f, 1e-12, 5000).unwrap();
            assert!((s - 1.0).abs() < 1e-12, "N={n}: {s}");
        }
    }

    #[test]
    fn rank_one_norm() {
        let mut rng = SeededRng::new(9);
        let mut u = rng.complex_vector(7);
        let mut v = rng.complex_vector(5);
        let (nu, nv) = (norm2(&u), norm2(&v));
        u.iter_mut().for_each(|z| *z /= nu);
        v.iter_mut().for_each(|z| *z /= nv);
        let a = ComplexMatrix::from_fn(7, 5, |i, j| 3.0 * u[i] * v[j].conj());
        let s = operator_norm(&a, 1e-12, 2000).unwrap();
        assert!((s - 3.0).abs() < 1e-11);
    }

    #[test]
    fn norm_equals_adjoint_norm() {
        let mut rng = SeededRng::new(31);
        for _ in 0..10 {
            let a = ComplexMatrix::from_fn(9, 6, |_, _| rng.next_unit_complex());
            let s = operator_norm(&a, 1e-13, 5000).unwrap();
            let sadj = operator_norm(&a.adjoint(), 1e-13, 5000).unwrap();
            assert!((s - sadj).abs() < 1e-10, "{s} vs {sadj}");
        }
    }

    #[test]
    fn radius_identity_and_diag() {
        let r = spectral_radius(&ComplexMatrix::identity(8), 1e-10).unwrap();
        assert!((r - 1.0).abs() < 1e-10);
        let d = ComplexMatrix::from_fn(2, 2, |i, j| {
            if i != j {
                Complex64::new(0.0, 0.0)
            } else if i == 0 {
                Complex64::new(0.5, 0.0)
            } else {
                Complex64::new(-0.9, 0.0)
            }
        });
        let r = spectral_radius(&d, 1e-12).unwrap();
        assert!((r - 0.9).abs() < 1e-10);
    }

    #[test]
    fn radius_nilpotent_is_zero() {
        let a = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        let r = spectral_radius(&a, 1e-10).unwrap();
        assert!(r < 1e-12);
    }
}
