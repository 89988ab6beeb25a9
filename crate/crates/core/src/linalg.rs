//! Real/complex linear algebra helpers: realification of conjugate-linear
//! maps, SVD-based null spaces and column spaces, and subspace comparisons.
//!
//! Complex vectors are realified as `[Re(v); Im(v)]`.  A real-linear map
//! `v ↦ A v + C conj(v)` then realifies to the block matrix
//! `[[A₁+C₁, −A₂+C₂], [A₂+C₂, A₁−C₁]]` where `A = A₁+iA₂`, `C = C₁+iC₂`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;
pub type RMatrix = DMatrix<f64>;
pub type RVector = DVector<f64>;

/// Relative singular-value cutoff used everywhere a rank decision is made.
pub const RANK_TOL: f64 = 1e-8;

pub fn realify_vector(v: &CVector) -> RVector {
    let n = v.len();
    RVector::from_fn(2 * n, |i, _| if i < n { v[i].re } else { v[i - n].im })
}

pub fn complexify_vector(v: &RVector) -> CVector {
    let n = v.len() / 2;
    assert_eq!(v.len(), 2 * n, "realified vector must have even length");
    CVector::from_fn(n, |i, _| Complex64::new(v[i], v[i + n]))
}

/// Realify `v ↦ A v + C conj(v)`.
pub fn realify_map(a: &CMatrix, c: &CMatrix) -> RMatrix {
    let n = a.nrows();
    let m = a.ncols();
    assert_eq!(c.nrows(), n);
    assert_eq!(c.ncols(), m);
    let mut r = RMatrix::zeros(2 * n, 2 * m);
    for i in 0..n {
        for j in 0..m {
            r[(i, j)] = a[(i, j)].re + c[(i, j)].re;
            r[(i, j + m)] = -a[(i, j)].im + c[(i, j)].im;
            r[(i + n, j)] = a[(i, j)].im + c[(i, j)].im;
            r[(i + n, j + m)] = a[(i, j)].re - c[(i, j)].re;
        }
    }
    r
}

/// Recover the complex-linear and conjugate-linear parts of a realified map.
pub fn complexify_map(r: &RMatrix) -> (CMatrix, CMatrix) {
    let n = r.nrows() / 2;
    let m = r.ncols() / 2;
    assert_eq!(r.nrows(), 2 * n);
    assert_eq!(r.ncols(), 2 * m);
    let mut a = CMatrix::zeros(n, m);
    let mut c = CMatrix::zeros(n, m);
    for i in 0..n {
        for j in 0..m {
            let (r11, r12) = (r[(i, j)], r[(i, j + m)]);
            let (r21, r22) = (r[(i + n, j)], r[(i + n, j + m)]);
            a[(i, j)] = Complex64::new((r11 + r22) / 2.0, (r21 - r12) / 2.0);
            c[(i, j)] = Complex64::new((r11 - r22) / 2.0, (r21 + r12) / 2.0);
        }
    }
    (a, c)
}

/// Real SVD `a = u · diag(s) · vᵀ` with `s` descending, computed by faer.
/// nalgebra's bidiagonal SVD silently loses accuracy (reconstruction errors
/// around 1e-2) on rank-deficient matrices with tightly paired singular
/// values — exactly what realified complex maps produce — so every rank,
/// span, and solve decision routes through this one.  `u` is m×k with
/// `k = min(m, n)`; `v` is the complete n×n right factor, so wide matrices
/// expose their whole kernel.  Tall inputs stay thin to keep constraint
/// matrices with thousands of rows affordable.
fn svd_parts(a: &RMatrix) -> (RMatrix, RVector, RMatrix) {
    let (m, n) = (a.nrows(), a.ncols());
    let k = m.min(n);
    let f = faer::Mat::from_fn(m, n, |i, j| a[(i, j)]);
    let svd = if m >= n { f.thin_svd() } else { f.svd() }.expect("svd convergence");
    let (u, v) = (svd.U(), svd.V());
    let s = svd.S().column_vector();
    (
        RMatrix::from_fn(m, k, |i, j| u[(i, j)]),
        RVector::from_fn(k, |i, _| s[i]),
        RMatrix::from_fn(n, n, |i, j| v[(i, j)]),
    )
}

/// Thin complex SVD `a = u · diag(s) · vᴴ` with `s` real descending.
pub fn complex_svd(a: &CMatrix) -> (CMatrix, RVector, CMatrix) {
    let (m, n) = (a.nrows(), a.ncols());
    let k = m.min(n);
    let f = faer::Mat::from_fn(m, n, |i, j| a[(i, j)]);
    let svd = if m >= n { f.thin_svd() } else { f.svd() }.expect("svd convergence");
    let (u, v) = (svd.U(), svd.V());
    let s = svd.S().column_vector();
    (
        CMatrix::from_fn(m, k, |i, j| u[(i, j)]),
        RVector::from_fn(k, |i, _| s[i].re),
        CMatrix::from_fn(n, k, |i, j| v[(i, j)]),
    )
}

/// Orthonormal basis of the null space of `a`, columns of the result.
/// Singular values below `tol * max(1, σ_max)` count as zero.
pub fn null_space(a: &RMatrix, tol: f64) -> RMatrix {
    let m = a.ncols();
    if m == 0 {
        return RMatrix::zeros(0, 0);
    }
    if a.nrows() == 0 {
        return RMatrix::identity(m, m);
    }
    let (_, s, v) = svd_parts(a);
    let cut = tol * s.max().max(1.0);
    // Right-singular columns are ordered by decreasing singular value;
    // columns past the min dimension carry none and belong to the kernel.
    let kernel_cols: Vec<usize> =
        (0..m).filter(|&i| s.get(i).copied().unwrap_or(0.0) <= cut).collect();
    let mut basis = RMatrix::zeros(m, kernel_cols.len());
    for (k, &col) in kernel_cols.iter().enumerate() {
        basis.set_column(k, &v.column(col));
    }
    basis
}

/// Orthonormal basis of the column space of `a`.
pub fn column_space(a: &RMatrix, tol: f64) -> RMatrix {
    if a.ncols() == 0 || a.nrows() == 0 {
        return RMatrix::zeros(a.nrows(), 0);
    }
    let (u, s, _) = svd_parts(a);
    let cut = tol * s.max().max(1.0);
    let cols: Vec<usize> = (0..s.len()).filter(|&i| s[i] > cut).collect();
    let mut basis = RMatrix::zeros(a.nrows(), cols.len());
    for (k, &col) in cols.iter().enumerate() {
        basis.set_column(k, &u.column(col));
    }
    basis
}

pub fn rank(a: &RMatrix, tol: f64) -> usize {
    if a.ncols() == 0 || a.nrows() == 0 {
        return 0;
    }
    let (_, s, _) = svd_parts(a);
    let cut = tol * s.max().max(1.0);
    s.iter().filter(|&&x| x > cut).count()
}

/// Distance from `v` to the span of the orthonormal columns of `basis`,
/// relative to `max(1, ‖v‖)`.
pub fn distance_to_span(basis: &RMatrix, v: &RVector) -> f64 {
    let norm = v.norm();
    if basis.ncols() == 0 {
        return norm / norm.max(1.0);
    }
    let coeffs = basis.transpose() * v;
    let residual = v - basis * coeffs;
    residual.norm() / norm.max(1.0)
}

/// Worst distance from any column of `a` to the span of `b` and vice versa.
/// Zero iff the two orthonormal column families span the same subspace.
pub fn mutual_containment(a: &RMatrix, b: &RMatrix) -> f64 {
    let mut worst: f64 = 0.0;
    for j in 0..a.ncols() {
        worst = worst.max(distance_to_span(b, &a.column(j).into_owned()));
    }
    for j in 0..b.ncols() {
        worst = worst.max(distance_to_span(a, &b.column(j).into_owned()));
    }
    worst
}

/// Minimum-norm least-squares solution of `a x = b` plus the relative
/// residual `‖a x − b‖ / max(1, ‖b‖)`.
pub fn least_squares(a: &RMatrix, b: &RVector) -> (RVector, f64) {
    if a.ncols() == 0 || a.nrows() == 0 {
        return (RVector::zeros(a.ncols()), b.norm() / b.norm().max(1.0));
    }
    let (u, s, v) = svd_parts(a);
    let cut = RANK_TOL * s.max().max(1.0);
    let mut x = RVector::zeros(a.ncols());
    for i in 0..s.len() {
        if s[i] > cut {
            let coeff = u.column(i).dot(b) / s[i];
            x += v.column(i) * coeff;
        }
    }
    let residual = (a * &x - b).norm() / b.norm().max(1.0);
    (x, residual)
}

/// Orthonormal basis (columns) of the column space of a complex matrix.
pub fn complex_column_space(a: &CMatrix, tol: f64) -> CMatrix {
    if a.ncols() == 0 || a.nrows() == 0 {
        return CMatrix::zeros(a.nrows(), 0);
    }
    let (u, s, _) = complex_svd(a);
    let cut = tol * s.max().max(1.0);
    let cols: Vec<usize> = (0..s.len()).filter(|&i| s[i] > cut).collect();
    let mut basis = CMatrix::zeros(a.nrows(), cols.len());
    for (k, &col) in cols.iter().enumerate() {
        basis.set_column(k, &u.column(col));
    }
    basis
}

/// Distance from `v` to the span of the orthonormal complex columns of
/// `basis`, relative to `max(1, ‖v‖)`.
pub fn complex_distance_to_span(basis: &CMatrix, v: &CVector) -> f64 {
    let norm = v.norm();
    if basis.ncols() == 0 {
        return norm / norm.max(1.0);
    }
    let coeffs = basis.adjoint() * v;
    let residual = v - basis * coeffs;
    residual.norm() / norm.max(1.0)
}

pub fn spectral_norm(a: &CMatrix) -> f64 {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0.0;
    }
    let (_, s, _) = complex_svd(a);
    s.max()
}

/// Eigenvalues of a complex matrix.  Also via faer: nalgebra's complex QR
/// iteration can take tens of seconds on small matrices with a highly
/// degenerate spectrum, which operators like D(x,x) have by nature.
pub fn eigenvalues(a: &CMatrix) -> Vec<Complex64> {
    if a.nrows() == 0 {
        return Vec::new();
    }
    let f = faer::Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)]);
    f.eigenvalues().expect("eigenvalue convergence")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::Sampler;

    fn random_real_map(s: &mut Sampler, n: usize) -> (CMatrix, CMatrix) {
        (s.matrix(n, n), s.matrix(n, n))
    }

    #[test]
    fn realify_respects_map_action() {
        let mut s = Sampler::new(11);
        let (a, c) = random_real_map(&mut s, 4);
        let v = s.vector(4);
        let direct = &a * &v + &c * v.map(|z| z.conj());
        let lifted = realify_map(&a, &c) * realify_vector(&v);
        assert!((realify_vector(&direct) - lifted).norm() < 1e-12);
    }

    #[test]
    fn complexify_inverts_realify() {
        let mut s = Sampler::new(12);
        let (a, c) = random_real_map(&mut s, 3);
        let (a2, c2) = complexify_map(&realify_map(&a, &c));
        assert!((a - a2).norm() < 1e-14);
        assert!((c - c2).norm() < 1e-14);
    }

    #[test]
    fn null_space_of_wide_matrix_is_complete() {
        // 2x5 rank-2 matrix: kernel must be 3-dimensional and orthonormal.
        let a = RMatrix::from_row_slice(2, 5, &[
            1.0, 0.0, 2.0, 0.0, -1.0,
            0.0, 1.0, 0.0, 3.0, 0.5,
        ]);
        let k = null_space(&a, RANK_TOL);
        assert_eq!(k.ncols(), 3);
        assert!((&a * &k).norm() < 1e-12);
        assert!((k.transpose() * &k - RMatrix::identity(3, 3)).norm() < 1e-12);
    }

    #[test]
    fn svd_stays_accurate_on_paired_rank_deficient_spectra() {
        // Realified complex maps have doubled singular values; a repeated
        // column adds exact zeros on top.  This combination breaks some
        // bidiagonal SVD implementations, so pin the behaviour we rely on.
        let mut s = Sampler::new(16);
        let mut m = s.matrix(9, 9);
        let first = m.column(0).into_owned();
        m.set_column(8, &first);
        let r = realify_map(&m, &CMatrix::zeros(9, 9));
        assert_eq!(rank(&r, RANK_TOL), 16);

        let k = null_space(&r, RANK_TOL);
        assert_eq!(k.ncols(), 2);
        assert!((&r * &k).norm() < 1e-10);
        assert!((k.transpose() * &k - RMatrix::identity(2, 2)).norm() < 1e-12);

        let col = column_space(&r, RANK_TOL);
        assert_eq!(col.ncols(), 16);
        for j in 0..r.ncols() {
            assert!(distance_to_span(&col, &r.column(j).into_owned()) < 1e-10);
        }

        let x0 = RVector::from_fn(18, |i, _| (i as f64 * 0.37).sin());
        let b = &r * &x0;
        let (x, res) = least_squares(&r, &b);
        assert!(res < 1e-10, "consistent system must solve, residual {res}");
        assert!((&r * &x - &b).norm() / b.norm() < 1e-10);
    }

    #[test]
    fn complex_svd_reconstructs_rank_deficient_input() {
        let mut s = Sampler::new(17);
        let mut m = s.matrix(5, 5);
        let first = m.column(0).into_owned();
        m.set_column(4, &first);
        let (u, sv, v) = complex_svd(&m);
        let mut recon = CMatrix::zeros(5, 5);
        for i in 0..sv.len() {
            recon += u.column(i) * v.column(i).adjoint() * Complex64::new(sv[i], 0.0);
        }
        assert!((recon - &m).norm() / m.norm() < 1e-13);
        assert!((u.adjoint() * &u - CMatrix::identity(5, 5)).norm() < 1e-12);
        assert!(sv[4].abs() < 1e-13, "duplicated column forces a zero, got {}", sv[4]);
    }

    #[test]
    fn null_space_of_zero_matrix_is_everything() {
        let a = RMatrix::zeros(4, 3);
        let k = null_space(&a, RANK_TOL);
        assert_eq!(k.ncols(), 3);
    }

    #[test]
    fn column_space_and_rank_agree() {
        let mut s = Sampler::new(13);
        let m = s.matrix(5, 3);
        let r = realify_map(&m, &CMatrix::zeros(5, 3));
        assert_eq!(rank(&r, RANK_TOL), 6);
        let col = column_space(&r, RANK_TOL);
        assert_eq!(col.ncols(), 6);
        // Every original column lies in the computed span.
        for j in 0..r.ncols() {
            assert!(distance_to_span(&col, &r.column(j).into_owned()) < 1e-10);
        }
    }

    #[test]
    fn mutual_containment_detects_subspace_gaps() {
        let e1 = RMatrix::from_column_slice(3, 1, &[1.0, 0.0, 0.0]);
        let e12 = RMatrix::from_column_slice(3, 2, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        assert!(mutual_containment(&e1, &e1) < 1e-15);
        let gap = mutual_containment(&e1, &e12);
        assert!(gap > 0.9, "missing direction must surface, got {gap}");
    }

    #[test]
    fn least_squares_solves_consistent_systems() {
        let mut s = Sampler::new(14);
        let m = s.matrix(4, 4);
        let r = realify_map(&m, &CMatrix::zeros(4, 4));
        let x0 = RVector::from_fn(8, |i, _| i as f64 - 3.0);
        let b = &r * &x0;
        let (x, res) = least_squares(&r, &b);
        assert!(res < 1e-10);
        assert!((&r * &x - &b).norm() < 1e-9);
    }

    #[test]
    fn eigenvalues_match_trace() {
        let mut s = Sampler::new(15);
        let m = s.matrix(6, 6);
        let eigs = eigenvalues(&m);
        let sum: Complex64 = eigs.iter().sum();
        let trace: Complex64 = (0..6).map(|i| m[(i, i)]).sum();
        assert!((sum - trace).norm() < 1e-10);
    }
}
