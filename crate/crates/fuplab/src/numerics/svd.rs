//! One-sided Jacobi SVD — the small-matrix oracle.
//!
//! Cyclic sweeps orthogonalize column pairs with phase-adjusted real Jacobi
//! rotations; singular values are the final column norms. Slow but
//! transparently correct, which is exactly what an oracle should be.

use super::{norm2, ComplexMatrix, NumericsError};
use num_complex::Complex64;

const MAX_SWEEPS: usize = 60;

/// All singular values of `a`, descending. Intended for dimensions ≤ 64;
/// larger inputs are accepted but cost O(sweeps · n² · m).
pub fn jacobi_singular_values(a: &ComplexMatrix) -> Result<Vec<f64>, NumericsError> {
    let m = a.rows();
    let n = a.cols();
    if m == 0 || n == 0 {
        return Err(NumericsError::InvalidArgument(
            "jacobi_singular_values: empty matrix".into(),
        ));
    }
    // Column-major copy: cols[j] is the j-th column.
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..m).map(|i| a.get(i, j)).collect())
        .collect();

    // Rounding noise in the Gram entries grows with the column length; the
    // stopping tolerance has to sit above it.
    let orth_tol = 4.0 * (m as f64).sqrt() * f64::EPSILON;
    let scale2 = cols
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>())
        .fold(0.0, f64::max);
    // Columns at the rounding floor correspond to singular values that are
    // zero up to noise; rotating against them cycles forever (always the
    // case when cols > rows), so pairs involving one are skipped.
    let floor2 = scale2 * (m as f64 * f64::EPSILON).powi(2);
    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (alpha, beta, gamma) = gram_pair(&cols[p], &cols[q]);
                if alpha <= floor2 || beta <= floor2 {
                    continue;
                }
                if gamma.norm() <= orth_tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let g_abs = gamma.norm();
                let phase = gamma / g_abs;
                // Real Jacobi angle for [[α, |γ|], [|γ|, β]].
                let zeta = (beta - alpha) / (2.0 * g_abs);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let cp = cols[p][i];
                    let cq = cols[q][i];
                    cols[p][i] = c * cp - s * phase.conj() * cq;
                    cols[q][i] = s * phase * cp + c * cq;
                }
            }
        }
        if !rotated {
            let mut sv: Vec<f64> = cols.iter().map(|c| norm2(c)).collect();
            sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
            return Ok(sv);
        }
    }
    Err(NumericsError::NormNonConverged {
        iterations: MAX_SWEEPS,
        last_estimate: cols.iter().map(|c| norm2(c)).fold(0.0, f64::max),
        last_change: f64::NAN,
    })
}

fn gram_pair(p: &[Complex64], q: &[Complex64]) -> (f64, f64, Complex64) {
    let mut alpha = 0.0;
    let mut beta = 0.0;
    let mut gamma = Complex64::new(0.0, 0.0);
    for (x, y) in p.iter().zip(q.iter()) {
        alpha += x.norm_sqr();
        beta += y.norm_sqr();
        gamma += x.conj() * y;
    }
    (alpha, beta, gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{dft_matrix, SeededRng};

    #[test]
    fn identity_singular_values() {
        let sv = jacobi_singular_values(&ComplexMatrix::identity(5)).unwrap();
        for s in sv {
            assert!((s - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn dft_is_isometric() {
        for n in [2, 5, 16, 31] {
            let sv = jacobi_singular_values(&dft_matrix(n).unwrap()).unwrap();
            assert!((sv[0] - 1.0).abs() < 1e-13, "N={n}");
            assert!((sv[n - 1] - 1.0).abs() < 1e-13, "N={n}");
        }
    }

    #[test]
    fn rank_one_scaled() {
        // 3 · u v† with unit u, v has the single singular value 3.
        let mut rng = SeededRng::new(5);
        let mut u = rng.complex_vector(6);
        let mut v = rng.complex_vector(4);
        let (nu, nv) = (super::norm2(&u), super::norm2(&v));
        u.iter_mut().for_each(|z| *z /= nu);
        v.iter_mut().for_each(|z| *z /= nv);
        let a = ComplexMatrix::from_fn(6, 4, |i, j| 3.0 * u[i] * v[j].conj());
        let sv = jacobi_singular_values(&a).unwrap();
        assert!((sv[0] - 3.0).abs() < 1e-12);
        for s in &sv[1..] {
            assert!(*s < 1e-12);
        }
    }

    #[test]
    fn frobenius_is_preserved() {
        let mut rng = SeededRng::new(17);
        for _ in 0..20 {
            let m = 2 + (rng.next_u64() % 7) as usize;
            let n = 2 + (rng.next_u64() % 7) as usize;
            let a = ComplexMatrix::from_fn(m, n, |_, _| rng.next_unit_complex());
            let sv = jacobi_singular_values(&a).unwrap();
            let fro2: f64 = sv.iter().map(|s| s * s).sum();
            assert!((fro2.sqrt() - a.frobenius()).abs() < 1e-11);
        }
    }
}
