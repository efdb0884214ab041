//! Partial-pivot LU, used for determinants in spectrum cross-checks.

use super::{ComplexMatrix, NumericsError};
use num_complex::Complex64;

/// Determinant via LU with partial pivoting. Intended for dimensions ≤ 64
/// where the product-of-eigenvalues identity is checked.
pub fn det_lu(a: &ComplexMatrix) -> Result<Complex64, NumericsError> {
    if !a.is_square() {
        return Err(NumericsError::InvalidArgument(
            "det_lu requires a square matrix".into(),
        ));
    }
    let n = a.rows();
    let mut m: Vec<Complex64> = a.data().to_vec();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let (mut piv_row, mut piv_abs) = (k, m[k * n + k].norm());
        for r in k + 1..n {
            let v = m[r * n + k].norm();
            if v > piv_abs {
                piv_row = r;
                piv_abs = v;
            }
        }
        if piv_abs == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if piv_row != k {
            for c in 0..n {
                m.swap(k * n + c, piv_row * n + c);
            }
            det = -det;
        }
        let pivot = m[k * n + k];
        det *= pivot;
        for r in k + 1..n {
            let factor = m[r * n + k] / pivot;
            if factor.re == 0.0 && factor.im == 0.0 {
                continue;
            }
            for c in k..n {
                let v = m[k * n + c];
                m[r * n + c] -= factor * v;
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::SeededRng;

    #[test]
    fn diagonal_det() {
        let d = ComplexMatrix::from_fn(3, 3, |i, j| {
            if i == j {
                Complex64::new((i + 1) as f64, 1.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let want = Complex64::new(1.0, 1.0) * Complex64::new(2.0, 1.0) * Complex64::new(3.0, 1.0);
        assert!((det_lu(&d).unwrap() - want).norm() < 1e-12);
    }

    #[test]
    fn multiplicative_on_products() {
        let mut rng = SeededRng::new(23);
        for _ in 0..10 {
            let a = ComplexMatrix::from_fn(6, 6, |_, _| rng.next_unit_complex());
            let b = ComplexMatrix::from_fn(6, 6, |_, _| rng.next_unit_complex());
            let lhs = det_lu(&a.mul(&b)).unwrap();
            let rhs = det_lu(&a).unwrap() * det_lu(&b).unwrap();
            assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
        }
    }
}
