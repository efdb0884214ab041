//! Complex dense eigensolver: Householder reduction to upper Hessenberg
//! form, explicitly shifted QR with Wilkinson shifts for the eigenvalues,
//! and inverse iteration on the Hessenberg form for eigenvectors.
//!
//! Everything runs on flat row-major buffers; the QR step applies its
//! Givens rotations in a row pass followed by a fused column pass so that
//! memory access stays sequential on large matrices.

use super::{norm2, ComplexMatrix, NumericsError, SeededRng, DEFAULT_SEED};
use num_complex::Complex64;

/// Hard cap on eigensolver dimension.
pub const EIG_DIM_CAP: usize = 4096;

/// Subdiagonal deflation threshold, relative to the two neighbouring
/// diagonal moduli.
const DEFLATE_REL: f64 = 1e-14;
/// QR iterations allowed per eigenvalue before declaring the block stuck.
const MAX_ITER_PER_EIG: usize = 60;

#[derive(Debug, Clone)]
pub struct SpectrumReport {
    /// Eigenvalues sorted by descending modulus (ties broken by re, then im).
    pub eigenvalues: Vec<Complex64>,
    /// Modulus of the first eigenvalue.
    pub spectral_radius: f64,
    /// max over computed eigenpairs of ‖Av − λv‖₂ with ‖v‖₂ = 1.
    pub residual_max: f64,
}

#[derive(Debug, Clone)]
pub struct EigDecomposition {
    pub values: Vec<Complex64>,
    /// Column j is the unit eigenvector for `values[j]`; may hold fewer
    /// columns than values when only the top of the spectrum was requested.
    pub vectors: ComplexMatrix,
    pub residuals: Vec<f64>,
}

impl EigDecomposition {
    pub fn report(&self) -> SpectrumReport {
        SpectrumReport {
            eigenvalues: self.values.clone(),
            spectral_radius: self.values.first().map(|z| z.norm()).unwrap_or(0.0),
            residual_max: self.residuals.iter().cloned().fold(0.0, f64::max),
        }
    }
}

/// Full spectrum with residuals for every eigenpair.
pub fn eig(a: &ComplexMatrix, tol: f64) -> Result<SpectrumReport, NumericsError> {
    Ok(eig_pairs(a, tol)?.report())
}

/// Full spectrum plus all eigenvectors.
pub fn eig_pairs(a: &ComplexMatrix, tol: f64) -> Result<EigDecomposition, NumericsError> {
    let n = a.rows();
    eig_impl(a, tol, n)
}

/// Full spectrum, eigenvectors only for the `top` largest-modulus
/// eigenvalues. Keeps the O(n²)-per-vector inverse iteration off the bulk
/// of the spectrum on large matrices.
pub fn eig_top_pairs(
    a: &ComplexMatrix,
    tol: f64,
    top: usize,
) -> Result<EigDecomposition, NumericsError> {
    eig_impl(a, tol, top.min(a.rows()))
}

fn eig_impl(a: &ComplexMatrix, tol: f64, nvec: usize) -> Result<EigDecomposition, NumericsError> {
    if !a.is_square() || a.rows() == 0 {
        return Err(NumericsError::InvalidArgument(
            "eig: matrix must be square and nonempty".into(),
        ));
    }
    if a.rows() > EIG_DIM_CAP {
        return Err(NumericsError::InvalidArgument(format!(
            "eig: dimension {} exceeds cap {EIG_DIM_CAP}",
            a.rows()
        )));
    }
    let n = a.rows();
    if n == 1 {
        return Ok(EigDecomposition {
            values: vec![a.get(0, 0)],
            vectors: ComplexMatrix::identity(1),
            residuals: vec![0.0],
        });
    }

    let hess = hessenberg(a);
    let mut work = hess.h.clone();
    let mut values = qr_eigenvalues(&mut work, n)?;
    values.sort_by(|x, y| {
        (y.norm(), y.re, y.im)
            .partial_cmp(&(x.norm(), x.re, x.im))
            .unwrap()
    });

    let scale = hess.h.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
    let mut vectors = ComplexMatrix::zeros(n, nvec);
    let mut residuals = Vec::with_capacity(nvec);
    let mut used: Vec<Complex64> = Vec::new();
    let mut scratch = vec![Complex64::new(0.0, 0.0); n * n];
    for (j, &lambda) in values.iter().take(nvec).enumerate() {
        // Separate numerically coincident eigenvalues so the shifted solve
        // stays well-posed for each of them.
        let dupes = used
            .iter()
            .filter(|u| (*u - lambda).norm() <= 1e-12 * scale)
            .count();
        used.push(lambda);
        let shift = lambda
            + Complex64::new(1.0, 1.0) * (dupes as f64 * 1e-13 * scale / std::f64::consts::SQRT_2);
        let (vec, res) = best_eigenvector(a, &hess, shift, lambda, tol, j as u64, &mut scratch);
        for r in 0..n {
            vectors.set(r, j, vec[r]);
        }
        residuals.push(res);
    }

    Ok(EigDecomposition {
        values,
        vectors,
        residuals,
    })
}

// ---------------------------------------------------------------------------
// Hessenberg reduction
// ---------------------------------------------------------------------------

struct HessForm {
    n: usize,
    /// Upper Hessenberg, row-major.
    h: Vec<Complex64>,
    /// Householder vectors (unnormalized) and β = 2/‖v‖² per column.
    reflectors: Vec<Option<(Vec<Complex64>, f64)>>,
}

fn hessenberg(a: &ComplexMatrix) -> HessForm {
    let n = a.rows();
    let mut h = a.data().to_vec();
    let mut reflectors = Vec::with_capacity(n.saturating_sub(2));
    for k in 0..n.saturating_sub(2) {
        let len = n - k - 1;
        let mut v: Vec<Complex64> = (0..len).map(|r| h[(k + 1 + r) * n + k]).collect();
        let below2: f64 = v[1..].iter().map(|z| z.norm_sqr()).sum();
        if below2 == 0.0 {
            reflectors.push(None);
            continue;
        }
        let xnorm = (v[0].norm_sqr() + below2).sqrt();
        let sign = if v[0].norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            v[0] / v[0].norm()
        };
        v[0] += sign * xnorm;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let beta = 2.0 / vnorm2;

        // Left: rows k+1.., columns k+1.. (column k is set analytically).
        let mut w = vec![Complex64::new(0.0, 0.0); n - k - 1];
        for (r, vr) in v.iter().enumerate() {
            let row = &h[(k + 1 + r) * n + k + 1..(k + 1 + r) * n + n];
            let c = vr.conj();
            for (wj, &x) in w.iter_mut().zip(row.iter()) {
                *wj += c * x;
            }
        }
        for (r, vr) in v.iter().enumerate() {
            let row = &mut h[(k + 1 + r) * n + k + 1..(k + 1 + r) * n + n];
            let f = beta * vr;
            for (x, &wj) in row.iter_mut().zip(w.iter()) {
                *x -= f * wj;
            }
        }
        // Right: all rows, columns k+1.. .
        for i in 0..n {
            let row = &mut h[i * n + k + 1..i * n + n];
            let mut u = Complex64::new(0.0, 0.0);
            for (&x, vr) in row.iter().zip(v.iter()) {
                u += x * vr;
            }
            let f = beta * u;
            for (x, vr) in row.iter_mut().zip(v.iter()) {
                *x -= f * vr.conj();
            }
        }
        h[(k + 1) * n + k] = -sign * xnorm;
        for r in k + 2..n {
            h[r * n + k] = Complex64::new(0.0, 0.0);
        }
        reflectors.push(Some((v, beta)));
    }
    HessForm { n, h, reflectors }
}

impl HessForm {
    /// Apply the accumulated similarity Q to a vector expressed in
    /// Hessenberg coordinates, returning original-matrix coordinates.
    fn back_transform(&self, y: &mut [Complex64]) {
        for (k, refl) in self.reflectors.iter().enumerate().rev() {
            if let Some((v, beta)) = refl {
                let tail = &mut y[k + 1..self.n];
                let mut s = Complex64::new(0.0, 0.0);
                for (vr, &x) in v.iter().zip(tail.iter()) {
                    s += vr.conj() * x;
                }
                let f = beta * s;
                for (x, vr) in tail.iter_mut().zip(v.iter()) {
                    *x -= f * vr;
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// QR iteration (eigenvalues only, window-restricted updates)
// ---------------------------------------------------------------------------

fn qr_eigenvalues(h: &mut [Complex64], n: usize) -> Result<Vec<Complex64>, NumericsError> {
    let tiny = h.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300) * DEFLATE_REL;
    let mut values = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut iters_on_block = 0usize;
    loop {
        // Locate the start of the active block ending at `hi`.
        let mut lo = hi;
        while lo > 0 {
            let sub = h[lo * n + lo - 1].norm();
            let mut thr = DEFLATE_REL * (h[(lo - 1) * n + lo - 1].norm() + h[lo * n + lo].norm());
            if thr == 0.0 {
                thr = tiny;
            }
            if sub <= thr {
                h[lo * n + lo - 1] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            values.push(h[hi * n + hi]);
            if hi == 0 {
                break;
            }
            hi -= 1;
            iters_on_block = 0;
            continue;
        }
        if lo + 1 == hi {
            let (l1, l2) = eig_2x2(
                h[lo * n + lo],
                h[lo * n + hi],
                h[hi * n + lo],
                h[hi * n + hi],
            );
            values.push(l2);
            values.push(l1);
            if lo == 0 {
                break;
            }
            hi = lo - 1;
            iters_on_block = 0;
            continue;
        }

        iters_on_block += 1;
        if iters_on_block > MAX_ITER_PER_EIG {
            return Err(NumericsError::EigNonConverged {
                block_lo: lo,
                block_hi: hi,
                iterations: iters_on_block,
            });
        }
        let sigma = if iters_on_block % 12 == 0 {
            // Exceptional shift to break symmetric stagnation.
            h[hi * n + hi] + Complex64::new(0.75 * h[hi * n + hi - 1].norm(), 0.0)
        } else {
            wilkinson_shift(h, n, hi)
        };
        qr_step(h, n, lo, hi, sigma);
    }
    Ok(values)
}

fn eig_2x2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let mean = (a + d) * 0.5;
    let disc = ((a - d) * (a - d) * 0.25 + b * c).sqrt();
    (mean + disc, mean - disc)
}

fn wilkinson_shift(h: &[Complex64], n: usize, hi: usize) -> Complex64 {
    let (l1, l2) = eig_2x2(
        h[(hi - 1) * n + hi - 1],
        h[(hi - 1) * n + hi],
        h[hi * n + hi - 1],
        h[hi * n + hi],
    );
    let corner = h[hi * n + hi];
    if (l1 - corner).norm() <= (l2 - corner).norm() {
        l1
    } else {
        l2
    }
}

fn qr_step(h: &mut [Complex64], n: usize, lo: usize, hi: usize, sigma: Complex64) {
    for d in lo..=hi {
        h[d * n + d] -= sigma;
    }
    // Left pass: G_i zeroes the subdiagonal of the shifted block.
    let mut rots: Vec<(f64, Complex64)> = Vec::with_capacity(hi - lo);
    for i in lo..hi {
        let f = h[i * n + i];
        let g = h[(i + 1) * n + i];
        let (c, s) = givens(f, g);
        for col in i..=hi {
            let a = h[i * n + col];
            let b = h[(i + 1) * n + col];
            h[i * n + col] = c * a + s * b;
            h[(i + 1) * n + col] = -s.conj() * a + c * b;
        }
        rots.push((c, s));
    }
    // Right pass (R ← R·G_lo†·…·G_{hi−1}†), fused row by row so each row is
    // traversed once, sequentially.
    for r in lo..=hi {
        let start = if r <= lo + 1 { lo } else { r - 1 };
        let row = &mut h[r * n..r * n + n];
        for i in start..hi {
            let (c, s) = rots[i - lo];
            let a = row[i];
            let b = row[i + 1];
            row[i] = c * a + s.conj() * b;
            row[i + 1] = -s * a + c * b;
        }
    }
    for d in lo..=hi {
        h[d * n + d] += sigma;
    }
}

fn givens(f: Complex64, g: Complex64) -> (f64, Complex64) {
    let gn = g.norm();
    if gn == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    let fn_ = f.norm();
    if fn_ == 0.0 {
        return (0.0, g.conj() / gn);
    }
    let d = (fn_ * fn_ + gn * gn).sqrt();
    (fn_ / d, (f / fn_) * g.conj() / d)
}

// ---------------------------------------------------------------------------
// Inverse iteration on the Hessenberg form
// ---------------------------------------------------------------------------

fn best_eigenvector(
    a: &ComplexMatrix,
    hess: &HessForm,
    shift: Complex64,
    lambda: Complex64,
    tol: f64,
    index: u64,
    scratch: &mut [Complex64],
) -> (Vec<Complex64>, f64) {
    let n = hess.n;
    let scale = hess.h.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
    let mut best: Option<(Vec<Complex64>, f64)> = None;
    for attempt in 0..3u64 {
        let mut rng = SeededRng::new(
            DEFAULT_SEED ^ lambda.re.to_bits() ^ index.rotate_left(17) ^ attempt.wrapping_mul(0xabcd),
        );
        let factor = HessLu::new(&hess.h, n, shift, scale, scratch);
        let mut y = rng.complex_vector(n);
        for _ in 0..3 {
            factor.solve(scratch, &mut y);
            let nrm = norm2(&y);
            if nrm == 0.0 || !nrm.is_finite() {
                y = rng.complex_vector(n);
                continue;
            }
            let inv = 1.0 / nrm;
            y.iter_mut().for_each(|z| *z *= inv);
        }
        hess.back_transform(&mut y);
        let nrm = norm2(&y);
        if nrm == 0.0 || !nrm.is_finite() {
            continue;
        }
        let inv = 1.0 / nrm;
        y.iter_mut().for_each(|z| *z *= inv);
        let av = a.matvec(&y);
        let res: f64 = norm2(
            &av.iter()
                .zip(y.iter())
                .map(|(u, v)| u - lambda * v)
                .collect::<Vec<_>>(),
        );
        if best.as_ref().map_or(true, |(_, b)| res < *b) {
            best = Some((y, res));
        }
        if best.as_ref().unwrap().1 <= tol * scale {
            break;
        }
    }
    best.unwrap_or_else(|| {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[0] = Complex64::new(1.0, 0.0);
        (e, f64::INFINITY)
    })
}

/// LU of (H − λI) with adjacent-row partial pivoting, exploiting the single
/// subdiagonal: O(n²) factorization, O(n²) solves.
struct HessLu {
    n: usize,
    mults: Vec<Complex64>,
    swaps: Vec<bool>,
}

impl HessLu {
    fn new(h: &[Complex64], n: usize, lambda: Complex64, scale: f64, m: &mut [Complex64]) -> Self {
        m.copy_from_slice(h);
        for d in 0..n {
            m[d * n + d] -= lambda;
        }
        let smallnum = f64::EPSILON * scale;
        let mut mults = vec![Complex64::new(0.0, 0.0); n.saturating_sub(1)];
        let mut swaps = vec![false; n.saturating_sub(1)];
        for k in 0..n - 1 {
            if m[(k + 1) * n + k].norm() > m[k * n + k].norm() {
                swaps[k] = true;
                for c in k..n {
                    m.swap(k * n + c, (k + 1) * n + c);
                }
            }
            let mut piv = m[k * n + k];
            if piv.norm() < smallnum {
                piv = Complex64::new(smallnum, 0.0);
                m[k * n + k] = piv;
            }
            let mult = m[(k + 1) * n + k] / piv;
            mults[k] = mult;
            if mult.re != 0.0 || mult.im != 0.0 {
                for c in k + 1..n {
                    let v = m[k * n + c];
                    m[(k + 1) * n + c] -= mult * v;
                }
            }
            m[(k + 1) * n + k] = Complex64::new(0.0, 0.0);
        }
        let last = (n - 1) * n + n - 1;
        if m[last].norm() < smallnum {
            m[last] = Complex64::new(smallnum, 0.0);
        }
        Self { n, mults, swaps }
    }

    fn solve(&self, m: &[Complex64], b: &mut [Complex64]) {
        let n = self.n;
        for k in 0..n - 1 {
            if self.swaps[k] {
                b.swap(k, k + 1);
            }
            let t = self.mults[k] * b[k];
            b[k + 1] -= t;
        }
        for k in (0..n).rev() {
            let mut s = b[k];
            for c in k + 1..n {
                s -= m[k * n + c] * b[c];
            }
            b[k] = s / m[k * n + k];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::dft_matrix;

    fn cm(rows: usize, cols: usize, vals: &[(f64, f64)]) -> ComplexMatrix {
        ComplexMatrix::new(
            rows,
            cols,
            vals.iter().map(|&(r, i)| Complex64::new(r, i)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn diagonal_spectrum() {
        let a = cm(
            3,
            3,
            &[
                (2.0, 0.0),
                (0.0, 0.0),
                (0.0, 0.0),
                (0.0, 0.0),
                (0.0, 1.0),
                (0.0, 0.0),
                (0.0, 0.0),
                (0.0, 0.0),
                (-1.0, 0.0),
            ],
        );
        let rep = eig(&a, 1e-10).unwrap();
        assert!((rep.spectral_radius - 2.0).abs() < 1e-12);
        let mut mods: Vec<f64> = rep.eigenvalues.iter().map(|z| z.norm()).collect();
        mods.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert!((mods[0] - 2.0).abs() < 1e-12);
        assert!((mods[1] - 1.0).abs() < 1e-12);
        assert!((mods[2] - 1.0).abs() < 1e-12);
        assert!(rep.residual_max < 1e-12);
    }

    #[test]
    fn nilpotent_spectrum_is_zero() {
        let a = cm(2, 2, &[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
        let rep = eig(&a, 1e-10).unwrap();
        assert!(rep.spectral_radius < 1e-13);
        assert!(rep.residual_max < 1e-12);
    }

    #[test]
    fn hessenberg_preserves_trace_and_similarity() {
        let mut rng = SeededRng::new(77);
        let a = ComplexMatrix::from_fn(8, 8, |_, _| rng.next_unit_complex());
        let hf = hessenberg(&a);
        let tr_a = a.trace();
        let tr_h: Complex64 = (0..8).map(|i| hf.h[i * 8 + i]).sum();
        assert!((tr_a - tr_h).norm() < 1e-12);
        for r in 2..8 {
            for c in 0..r - 1 {
                assert!(hf.h[r * 8 + c].norm() < 1e-14);
            }
        }
    }

    #[test]
    fn eigen_identities_random() {
        let mut rng = SeededRng::new(101);
        for trial in 0..20 {
            let n = 2 + (rng.next_u64() % 15) as usize;
            let a = ComplexMatrix::from_fn(n, n, |_, _| rng.next_unit_complex());
            let rep = eig(&a, 1e-9).unwrap();
            assert!(rep.residual_max < 1e-9, "trial {trial} res {}", rep.residual_max);
            let sum: Complex64 = rep.eigenvalues.iter().sum();
            assert!(
                (sum - a.trace()).norm() < 1e-8 * n as f64,
                "trace mismatch trial {trial}"
            );
            let prod: Complex64 = rep
                .eigenvalues
                .iter()
                .fold(Complex64::new(1.0, 0.0), |p, &z| p * z);
            let det = crate::numerics::det_lu(&a).unwrap();
            assert!(
                (prod - det).norm() <= 1e-6 * det.norm().max(1e-6),
                "det mismatch trial {trial}: {prod} vs {det}"
            );
        }
    }

    #[test]
    fn unitary_spectrum_on_circle() {
        let f = dft_matrix(16).unwrap();
        let rep = eig(&f, 1e-10).unwrap();
        for z in &rep.eigenvalues {
            assert!((z.norm() - 1.0).abs() < 1e-10);
        }
        assert!(rep.residual_max < 1e-10);
    }

    #[test]
    fn dimension_cap_enforced() {
        let a = ComplexMatrix::zeros(2, 3);
        assert!(eig(&a, 1e-8).is_err());
    }
}
