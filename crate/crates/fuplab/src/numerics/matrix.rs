//! Row-major dense complex matrices.

use super::{pairwise_sum_f64, NumericsError};
use num_complex::Complex64;

/// Immutable-after-construction dense matrix of `Complex64` in row-major
/// order. All entries are finite (checked on construction).
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self, NumericsError> {
        if rows * cols != data.len() {
            return Err(NumericsError::InvalidArgument(format!(
                "shape {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(bad) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(NumericsError::InvalidArgument(format!(
                "non-finite entry at flat index {bad}"
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub(crate) fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c).conj();
            }
        }
        out
    }

    /// `self · rhs`, accumulated row by row in a fixed order.
    pub fn mul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in mul");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let arow = self.row(i);
            let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, &aik) in arow.iter().enumerate() {
                if aik.re == 0.0 && aik.im == 0.0 {
                    continue;
                }
                let brow = rhs.row(k);
                for (o, &b) in orow.iter_mut().zip(brow.iter()) {
                    *o += aik * b;
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| dot_conj_free(self.row(r), x))
            .collect()
    }

    /// `A† x` without forming the adjoint: accumulates `conj(A[r,:]) · x[r]`
    /// row by row, which keeps memory access sequential.
    pub fn adjoint_matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.rows);
        let mut out = vec![Complex64::new(0.0, 0.0); self.cols];
        for r in 0..self.rows {
            let xr = x[r];
            if xr.re == 0.0 && xr.im == 0.0 {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(r).iter()) {
                *o += a.conj() * xr;
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        let sq: Vec<f64> = self.data.iter().map(|z| z.norm_sqr()).collect();
        pairwise_sum_f64(&sq).sqrt()
    }

    pub fn scale(&self, s: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }
}

#[inline]
fn dot_conj_free(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    // Plain (non-conjugated) dot, blocked like dot_conj.
    const BLOCK: usize = 128;
    let mut partials: Vec<Complex64> = Vec::with_capacity(a.len() / BLOCK + 1);
    for (ca, cb) in a.chunks(BLOCK).zip(b.chunks(BLOCK)) {
        let mut s = Complex64::new(0.0, 0.0);
        for (x, y) in ca.iter().zip(cb.iter()) {
            s += x * y;
        }
        partials.push(s);
    }
    super::pairwise_sum_c64(&partials)
}

/// The N×N unitary discrete Fourier transform, entry `(j,ℓ) = e^{−2πijℓ/N}/√N`.
///
/// Phases are computed from `jℓ mod N`, so the matrix is exactly symmetric
/// and entries with equal `jℓ mod N` are bit-identical.
pub fn dft_matrix(n: usize) -> Result<ComplexMatrix, NumericsError> {
    if n == 0 {
        return Err(NumericsError::InvalidArgument(
            "dft_matrix requires N >= 1".into(),
        ));
    }
    let scale = 1.0 / (n as f64).sqrt();
    let table: Vec<Complex64> = (0..n)
        .map(|m| {
            let angle = -2.0 * std::f64::consts::PI * (m as f64) / (n as f64);
            Complex64::from_polar(scale, angle)
        })
        .collect();
    let mut data = Vec::with_capacity(n * n);
    for j in 0..n {
        for l in 0..n {
            data.push(table[(j as u64 * l as u64 % n as u64) as usize]);
        }
    }
    Ok(ComplexMatrix {
        rows: n,
        cols: n,
        data,
    })
}

/// `‖A A† − I‖_max` for square A.
///
/// The Gram matrix is accumulated on split real/imaginary buffers in
/// axpy form (`G[i, j..] += a·row`): the accumulation runs over independent
/// output elements, so it vectorizes, unlike a straight dot-product
/// reduction. Rows of `A A†` are produced four at a time and scanned for
/// the worst deviation immediately; only the upper triangle is formed
/// (`A A†` is Hermitian). Summation order is fixed.
pub fn unitarity_defect(a: &ComplexMatrix) -> f64 {
    assert!(a.is_square());
    let n = a.rows();
    let re: Vec<f64> = a.data.iter().map(|z| z.re).collect();
    let im: Vec<f64> = a.data.iter().map(|z| z.im).collect();
    // Transposed copies so the inner axpy walks contiguous memory.
    let mut ret = vec![0.0f64; n * n];
    let mut imt = vec![0.0f64; n * n];
    for i in 0..n {
        for k in 0..n {
            ret[k * n + i] = re[i * n + k];
            imt[k * n + i] = im[i * n + k];
        }
    }
    let mut worst = 0.0f64;
    const IT: usize = 16;
    let mut gre = vec![0.0f64; IT * n];
    let mut gim = vec![0.0f64; IT * n];
    let mut i0 = 0;
    while i0 < n {
        let i1 = (i0 + IT).min(n);
        gre.iter_mut().for_each(|x| *x = 0.0);
        gim.iter_mut().for_each(|x| *x = 0.0);
        for k in 0..n {
            let (rtk, itk) = (&ret[k * n..(k + 1) * n], &imt[k * n..(k + 1) * n]);
            for i in i0..i1 {
                let xr = re[i * n + k];
                let xi = im[i * n + k];
                let o = (i - i0) * n;
                axpy_gram(
                    &mut gre[o + i..o + n],
                    &mut gim[o + i..o + n],
                    xr,
                    xi,
                    &rtk[i..n],
                    &itk[i..n],
                );
            }
        }
        for i in i0..i1 {
            let o = (i - i0) * n;
            for j in i..n {
                let (r, m) = (gre[o + j], gim[o + j]);
                let dev = if i == j {
                    ((r - 1.0) * (r - 1.0) + m * m).sqrt()
                } else {
                    (r * r + m * m).sqrt()
                };
                if dev > worst {
                    worst = dev;
                }
            }
        }
        i0 = i1;
    }
    worst
}

/// Gre += xr·br + xi·bi; Gim += xi·br − xr·bi, elementwise over a row.
#[inline]
fn axpy_gram(gre: &mut [f64], gim: &mut [f64], xr: f64, xi: f64, br: &[f64], bi: &[f64]) {
    let len = gre.len();
    let (br, bi, gim) = (&br[..len], &bi[..len], &mut gim[..len]);
    for j in 0..len {
        gre[j] = xi.mul_add(bi[j], xr.mul_add(br[j], gre[j]));
        gim[j] = (-xr).mul_add(bi[j], xi.mul_add(br[j], gim[j]));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dft_small_cases() {
        let f1 = dft_matrix(1).unwrap();
        assert!((f1.get(0, 0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);

        let f2 = dft_matrix(2).unwrap();
        let s = 1.0 / 2f64.sqrt();
        for (r, c, want) in [(0, 0, s), (0, 1, s), (1, 0, s), (1, 1, -s)] {
            assert!(
                (f2.get(r, c) - Complex64::new(want, 0.0)).norm() < 1e-15,
                "entry ({r},{c})"
            );
        }

        // Direct evaluation of the exponential: entry (1,3) of F_4 is
        // e^{−3πi/2}/2 = i/2.
        let f4 = dft_matrix(4).unwrap();
        assert!((f4.get(1, 3) - Complex64::new(0.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn dft_rejects_zero() {
        assert!(dft_matrix(0).is_err());
    }

    #[test]
    fn dft_exactly_symmetric() {
        for n in [2usize, 3, 5, 8, 17, 64] {
            let f = dft_matrix(n).unwrap();
            for j in 0..n {
                for l in 0..n {
                    assert_eq!(f.get(j, l), f.get(l, j), "N={n} ({j},{l})");
                }
            }
        }
    }

    #[test]
    fn dft_unitary_small() {
        for n in [1usize, 2, 3, 7, 16, 33, 100] {
            let f = dft_matrix(n).unwrap();
            assert!(unitarity_defect(&f) < 1e-13, "N={n}");
        }
    }

    #[test]
    fn unitarity_defect_matches_explicit_product() {
        let f = dft_matrix(13).unwrap();
        let explicit = f
            .mul(&f.adjoint())
            .sub(&ComplexMatrix::identity(13))
            .max_abs();
        assert!((unitarity_defect(&f) - explicit).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_finite() {
        let bad = vec![Complex64::new(f64::NAN, 0.0)];
        assert!(ComplexMatrix::new(1, 1, bad).is_err());
    }

    #[test]
    fn adjoint_matvec_consistent() {
        let mut rng = super::super::SeededRng::new(3);
        let a = ComplexMatrix::from_fn(5, 7, |_, _| rng.next_unit_complex());
        let x = rng.complex_vector(5);
        let via_adj = a.adjoint().matvec(&x);
        let direct = a.adjoint_matvec(&x);
        for (u, v) in via_adj.iter().zip(&direct) {
            assert!((u - v).norm() < 1e-13);
        }
    }
}
