//! Core representation: a finite-dimensional Jordan triple system given by
//! its dense structure tensor, plus the real-linear maps that act on it.
//!
//! The triple product is complex-linear in the outer slots and
//! conjugate-linear in the middle slot: for coordinates `x, y, z`,
//! `{x,y,z}_l = Σ_{ijk} x_i conj(y_j) z_k T[i,j,k,l]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, RMatrix, RVector};
use crate::report::CheckReport;
use crate::sampling::Sampler;

/// A map `v ↦ A v + C conj(v)`; the general morphism between triple systems
/// seen as real vector spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct RealLinearMap {
    linear: CMatrix,
    antilinear: CMatrix,
}

impl RealLinearMap {
    pub fn new(linear: CMatrix, antilinear: CMatrix) -> Result<Self> {
        if linear.nrows() != linear.ncols() || linear.shape() != antilinear.shape() {
            return Err(Error::DimensionMismatch {
                expected: linear.nrows(),
                got: antilinear.nrows(),
            });
        }
        Ok(RealLinearMap { linear, antilinear })
    }

    pub fn zero(n: usize) -> Self {
        RealLinearMap { linear: CMatrix::zeros(n, n), antilinear: CMatrix::zeros(n, n) }
    }

    pub fn identity(n: usize) -> Self {
        RealLinearMap { linear: CMatrix::identity(n, n), antilinear: CMatrix::zeros(n, n) }
    }

    pub fn from_linear(a: CMatrix) -> Self {
        let n = a.nrows();
        RealLinearMap { linear: a, antilinear: CMatrix::zeros(n, n) }
    }

    pub fn from_antilinear(c: CMatrix) -> Self {
        let n = c.nrows();
        RealLinearMap { linear: CMatrix::zeros(n, n), antilinear: c }
    }

    pub fn dim(&self) -> usize {
        self.linear.nrows()
    }

    pub fn linear_part(&self) -> &CMatrix {
        &self.linear
    }

    pub fn antilinear_part(&self) -> &CMatrix {
        &self.antilinear
    }

    pub fn apply(&self, v: &CVector) -> CVector {
        &self.linear * v + &self.antilinear * v.map(|z| z.conj())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RealLinearMap) -> RealLinearMap {
        let conj = |m: &CMatrix| m.map(|z| z.conj());
        RealLinearMap {
            linear: &self.linear * &other.linear + &self.antilinear * conj(&other.antilinear),
            antilinear: &self.linear * &other.antilinear + &self.antilinear * conj(&other.linear),
        }
    }

    pub fn add(&self, other: &RealLinearMap) -> RealLinearMap {
        RealLinearMap {
            linear: &self.linear + &other.linear,
            antilinear: &self.antilinear + &other.antilinear,
        }
    }

    pub fn sub(&self, other: &RealLinearMap) -> RealLinearMap {
        RealLinearMap {
            linear: &self.linear - &other.linear,
            antilinear: &self.antilinear - &other.antilinear,
        }
    }

    /// Left multiplication by a complex scalar.
    pub fn scale(&self, lambda: Complex64) -> RealLinearMap {
        RealLinearMap { linear: &self.linear * lambda, antilinear: &self.antilinear * lambda }
    }

    pub fn scale_re(&self, t: f64) -> RealLinearMap {
        self.scale(Complex64::new(t, 0.0))
    }

    /// Frobenius norm over both parts.
    pub fn norm(&self) -> f64 {
        self.linear.norm().hypot(self.antilinear.norm())
    }

    pub fn antilinear_norm(&self) -> f64 {
        self.antilinear.norm()
    }

    pub fn is_complex_linear(&self, tol: f64) -> bool {
        self.antilinear.norm() <= tol * self.linear.norm().max(1.0)
    }

    pub fn realify(&self) -> RMatrix {
        linalg::realify_map(&self.linear, &self.antilinear)
    }

    pub fn from_realified(r: &RMatrix) -> Self {
        let (linear, antilinear) = linalg::complexify_map(r);
        RealLinearMap { linear, antilinear }
    }

    /// Exponential as a real-linear map (computed on the realification, which
    /// is exact for both linear and antilinear parts).
    pub fn exp(&self) -> RealLinearMap {
        RealLinearMap::from_realified(&self.realify().exp())
    }

    pub fn inverse(&self) -> Result<RealLinearMap> {
        let r = self.realify();
        let inv = r.clone().try_inverse().ok_or(Error::SingularMap)?;
        let check = (&r * &inv - RMatrix::identity(r.nrows(), r.ncols())).norm();
        if check > 1e-6 * r.norm().max(1.0) {
            return Err(Error::SingularMap);
        }
        Ok(RealLinearMap::from_realified(&inv))
    }

    /// Flatten the complex-linear part as `[Re(A); Im(A)]`, column-major.
    /// Used to span spaces of maps that are known to be complex-linear.
    pub fn vec_linear(&self) -> RVector {
        let n = self.dim();
        let mut v = RVector::zeros(2 * n * n);
        for (idx, z) in self.linear.iter().enumerate() {
            v[idx] = z.re;
            v[idx + n * n] = z.im;
        }
        v
    }

    /// Inverse of [`vec_linear`]: rebuild a complex-linear map.
    pub fn from_vec_linear(v: &RVector) -> Self {
        let nn = v.len() / 2;
        let n = (nn as f64).sqrt().round() as usize;
        assert_eq!(2 * n * n, v.len(), "vectorized map must have length 2n²");
        let linear = CMatrix::from_fn(n, n, |i, j| {
            let idx = j * n + i;
            Complex64::new(v[idx], v[idx + nn])
        });
        RealLinearMap::from_linear(linear)
    }
}

/// Commutative Jordan product table with a conjugate-linear involution and a
/// unit, attached to factors that carry an algebra structure.
#[derive(Debug, Clone)]
pub struct UnitalStarAlgebra {
    dim: usize,
    // table[(i*n + j)*n + k] = coefficient of e_k in e_i ∘ e_j
    table: Vec<Complex64>,
    involution: CMatrix,
    unit: CVector,
}

impl UnitalStarAlgebra {
    pub fn from_jordan_table(table: Vec<Complex64>, involution: CMatrix, unit: CVector) -> Result<Self> {
        let n = unit.len();
        if table.len() != n * n * n {
            return Err(Error::DimensionMismatch { expected: n * n * n, got: table.len() });
        }
        if involution.nrows() != n || involution.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, got: involution.nrows() });
        }
        Ok(UnitalStarAlgebra { dim: n, table, involution, unit })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &CVector {
        &self.unit
    }

    fn basis_product(&self, i: usize, j: usize) -> &[Complex64] {
        let n = self.dim;
        &self.table[(i * n + j) * n..(i * n + j) * n + n]
    }

    /// Jordan product `x ∘ y` (bilinear).
    pub fn jordan(&self, x: &CVector, y: &CVector) -> CVector {
        let n = self.dim;
        let mut out = CVector::zeros(n);
        for i in 0..n {
            if x[i] == Complex64::ZERO {
                continue;
            }
            for j in 0..n {
                let c = x[i] * y[j];
                if c == Complex64::ZERO {
                    continue;
                }
                let row = self.basis_product(i, j);
                for l in 0..n {
                    out[l] += c * row[l];
                }
            }
        }
        out
    }

    /// Involution `x ↦ x*` (conjugate-linear).
    pub fn star(&self, x: &CVector) -> CVector {
        &self.involution * x.map(|z| z.conj())
    }

    /// Multiplication operator `L_x : y ↦ x ∘ y` (complex-linear).
    pub fn l_map(&self, x: &CVector) -> RealLinearMap {
        let n = self.dim;
        let mut m = CMatrix::zeros(n, n);
        for j in 0..n {
            let col = self.jordan(x, &CVector::from_fn(n, |i, _| if i == j { Complex64::ONE } else { Complex64::ZERO }));
            m.set_column(j, &col);
        }
        RealLinearMap::from_linear(m)
    }

    /// Unit, commutativity, and involution laws on basis elements.
    pub fn check_axioms(&self, tol: f64) -> CheckReport {
        let n = self.dim;
        let mut report = CheckReport::new("algebra-axioms", tol);
        let basis = |i: usize| CVector::from_fn(n, |k, _| if k == i { Complex64::ONE } else { Complex64::ZERO });
        for i in 0..n {
            let e = basis(i);
            let ue = self.jordan(&self.unit, &e);
            report.observe((&ue - &e).norm(), || format!("1 ∘ e_{i} ≠ e_{i}"));
            let ss = self.star(&self.star(&e));
            report.observe((&ss - &e).norm(), || format!("e_{i}** ≠ e_{i}"));
            for j in 0..n {
                let f = basis(j);
                let ef = self.jordan(&e, &f);
                let fe = self.jordan(&f, &e);
                report.observe((&ef - &fe).norm(), || format!("e_{i} ∘ e_{j} not commutative"));
                let lhs = self.star(&ef);
                let rhs = self.jordan(&self.star(&e), &self.star(&f));
                report.observe((lhs - rhs).norm(), || format!("(e_{i} ∘ e_{j})* ≠ e_{i}* ∘ e_{j}*"));
            }
        }
        report.observe((self.star(&self.unit) - &self.unit).norm(), || "1* ≠ 1".into());
        report
    }
}

/// Coordinate layout of a factor; fixes how coordinates reshape into matrices
/// and which norm the factor carries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Layout {
    /// Basis `e_{ab}` at index `a * cols + b`; spectral norm.
    Matrix { rows: usize, cols: usize },
    /// Column vector; Euclidean norm.
    Vector { len: usize },
    /// Concatenated parts; max norm over parts.
    Sum(Vec<Layout>),
}

impl Layout {
    pub fn dim(&self) -> usize {
        match self {
            Layout::Matrix { rows, cols } => rows * cols,
            Layout::Vector { len } => *len,
            Layout::Sum(parts) => parts.iter().map(Layout::dim).sum(),
        }
    }
}

/// Reshape coordinates into the row-major matrix picture of a factor.
pub fn to_matrix(x: &CVector, rows: usize, cols: usize) -> CMatrix {
    assert_eq!(x.len(), rows * cols);
    CMatrix::from_fn(rows, cols, |a, b| x[a * cols + b])
}

pub fn from_matrix(m: &CMatrix) -> CVector {
    let (rows, cols) = m.shape();
    CVector::from_fn(rows * cols, |idx, _| m[(idx / cols, idx % cols)])
}

#[inline]
fn t_index(n: usize, i: usize, j: usize, k: usize) -> usize {
    ((i * n + j) * n + k) * n
}

/// A finite-dimensional Jordan triple system with a dense structure tensor.
#[derive(Debug, Clone)]
pub struct TripleSystem {
    label: String,
    layout: Layout,
    dim: usize,
    tensor: Vec<Complex64>,
    algebra: Option<UnitalStarAlgebra>,
}

/// Full verification of the Jordan triple identity enumerates all basis
/// 5-tuples up to this dimension; above it, tuples are sampled.
const JTI_FULL_DIM: usize = 10;
const JTI_SAMPLE_SEED: u64 = 0x4a54_4953;
const JTI_SAMPLES: usize = 4096;

impl TripleSystem {
    /// `tensor[((i*n + j)*n + k)*n + l]` is the `e_l` coefficient of
    /// `{e_i, e_j, e_k}`.  The tensor must be symmetric in `i ↔ k`.
    pub fn new(
        label: impl Into<String>,
        layout: Layout,
        tensor: Vec<Complex64>,
        algebra: Option<UnitalStarAlgebra>,
    ) -> Result<Self> {
        let n = layout.dim();
        if tensor.len() != n * n * n * n {
            return Err(Error::DimensionMismatch { expected: n * n * n * n, got: tensor.len() });
        }
        if let Some(alg) = &algebra {
            if alg.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, got: alg.dim() });
            }
        }
        let scale = tensor.iter().map(|z| z.norm()).fold(0.0f64, f64::max).max(1.0);
        let mut deviation = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..i {
                    let a = t_index(n, i, j, k);
                    let b = t_index(n, k, j, i);
                    for l in 0..n {
                        deviation = deviation.max((tensor[a + l] - tensor[b + l]).norm());
                    }
                }
            }
        }
        if deviation > 1e-12 * scale {
            return Err(Error::AsymmetricTensor { deviation });
        }
        Ok(TripleSystem { label: label.into(), layout, dim: n, tensor, algebra })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tensor(&self) -> &[Complex64] {
        &self.tensor
    }

    pub fn algebra(&self) -> Option<&UnitalStarAlgebra> {
        self.algebra.as_ref()
    }

    pub fn basis_vector(&self, i: usize) -> CVector {
        CVector::from_fn(self.dim, |k, _| if k == i { Complex64::ONE } else { Complex64::ZERO })
    }

    /// `{e_i, e_j, e_k}` as a coefficient slice over `l`.
    #[inline]
    pub fn basis_product(&self, i: usize, j: usize, k: usize) -> &[Complex64] {
        let start = t_index(self.dim, i, j, k);
        &self.tensor[start..start + self.dim]
    }

    fn check_dim(&self, v: &CVector) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: v.len() });
        }
        Ok(())
    }

    /// Triple product `{x, y, z}`; conjugate-linear in `y`.
    pub fn triple(&self, x: &CVector, y: &CVector, z: &CVector) -> Result<CVector> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        self.check_dim(z)?;
        let n = self.dim;
        let mut out = CVector::zeros(n);
        for i in 0..n {
            if x[i] == Complex64::ZERO {
                continue;
            }
            for j in 0..n {
                let xy = x[i] * y[j].conj();
                if xy == Complex64::ZERO {
                    continue;
                }
                for k in 0..n {
                    let c = xy * z[k];
                    if c == Complex64::ZERO {
                        continue;
                    }
                    let row = self.basis_product(i, j, k);
                    for l in 0..n {
                        out[l] += c * row[l];
                    }
                }
            }
        }
        Ok(out)
    }

    /// `D(a,b) : z ↦ {a, b, z}`, complex-linear.
    pub fn d_operator(&self, a: &CVector, b: &CVector) -> Result<RealLinearMap> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        let n = self.dim;
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let c = a[i] * b[j].conj();
                if c == Complex64::ZERO {
                    continue;
                }
                for k in 0..n {
                    let row = self.basis_product(i, j, k);
                    for l in 0..n {
                        m[(l, k)] += c * row[l];
                    }
                }
            }
        }
        Ok(RealLinearMap::from_linear(m))
    }

    /// `Q_a : z ↦ {a, z, a}`, conjugate-linear.
    pub fn q_operator(&self, a: &CVector) -> Result<RealLinearMap> {
        self.check_dim(a)?;
        let n = self.dim;
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            for k in 0..n {
                let c = a[i] * a[k];
                if c == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    let row = self.basis_product(i, j, k);
                    for l in 0..n {
                        m[(l, j)] += c * row[l];
                    }
                }
            }
        }
        Ok(RealLinearMap::from_antilinear(m))
    }

    /// Bergman operator `B(x,y) = I − 2 D(x,y) + Q_x Q_y`.
    pub fn bergman(&self, x: &CVector, y: &CVector) -> Result<RealLinearMap> {
        let d = self.d_operator(x, y)?;
        let qq = self.q_operator(x)?.compose(&self.q_operator(y)?);
        Ok(RealLinearMap::identity(self.dim).sub(&d.scale_re(2.0)).add(&qq))
    }

    /// Factor norm: spectral for matrix layouts, Euclidean for vector
    /// layouts, max over parts for sums.
    pub fn norm(&self, x: &CVector) -> Result<f64> {
        self.check_dim(x)?;
        Ok(layout_norm(&self.layout, x.as_slice()))
    }

    /// Jordan triple identity on basis 5-tuples; exhaustive for small
    /// dimensions, seeded sampling above [`JTI_FULL_DIM`].
    pub fn check_jti(&self, tol: f64) -> CheckReport {
        let n = self.dim;
        let mut report = CheckReport::new("jti", tol);
        let eval = |report: &mut CheckReport, a: usize, b: usize, x: usize, y: usize, z: usize| {
            let residual = self.jti_residual(a, b, x, y, z);
            report.observe(residual, || format!("basis tuple (a,b,x,y,z) = ({a},{b},{x},{y},{z})"));
        };
        if n <= JTI_FULL_DIM {
            for a in 0..n {
                for b in 0..n {
                    for x in 0..n {
                        for y in 0..n {
                            for z in 0..n {
                                eval(&mut report, a, b, x, y, z);
                            }
                        }
                    }
                }
            }
        } else {
            let mut sampler = Sampler::new(JTI_SAMPLE_SEED);
            report = report.with_seed(JTI_SAMPLE_SEED);
            for _ in 0..JTI_SAMPLES {
                let idx: Vec<usize> = (0..5).map(|_| sampler.index(n)).collect();
                eval(&mut report, idx[0], idx[1], idx[2], idx[3], idx[4]);
            }
        }
        report
    }

    /// Residual of `{a,b,{x,y,z}} = {{a,b,x},y,z} − {x,{b,a,y},z} + {x,y,{a,b,z}}`
    /// on basis indices, relative to the largest term.
    fn jti_residual(&self, a: usize, b: usize, x: usize, y: usize, z: usize) -> f64 {
        let n = self.dim;
        let mut lhs = vec![Complex64::ZERO; n];
        let mut t1 = vec![Complex64::ZERO; n];
        let mut t2 = vec![Complex64::ZERO; n];
        let mut t3 = vec![Complex64::ZERO; n];
        let inner = self.basis_product(x, y, z);
        let abx = self.basis_product(a, b, x);
        let bay = self.basis_product(b, a, y);
        let abz = self.basis_product(a, b, z);
        for m in 0..n {
            if inner[m] != Complex64::ZERO {
                let row = self.basis_product(a, b, m);
                for l in 0..n {
                    lhs[l] += inner[m] * row[l];
                }
            }
            if abx[m] != Complex64::ZERO {
                let row = self.basis_product(m, y, z);
                for l in 0..n {
                    t1[l] += abx[m] * row[l];
                }
            }
            if bay[m] != Complex64::ZERO {
                // middle slot is conjugate-linear
                let row = self.basis_product(x, m, z);
                for l in 0..n {
                    t2[l] += bay[m].conj() * row[l];
                }
            }
            if abz[m] != Complex64::ZERO {
                let row = self.basis_product(x, y, m);
                for l in 0..n {
                    t3[l] += abz[m] * row[l];
                }
            }
        }
        let mut scale = 1.0f64;
        let mut residual = 0.0f64;
        for l in 0..n {
            scale = scale
                .max(lhs[l].norm())
                .max(t1[l].norm())
                .max(t2[l].norm())
                .max(t3[l].norm());
            residual = residual.max((lhs[l] - t1[l] + t2[l] - t3[l]).norm());
        }
        residual / scale
    }

    /// Analytic axioms on random probes: real nonnegative spectrum of
    /// `D(x,x)`, the cube identity `‖{x,x,x}‖ = ‖x‖³`, and the norm bound
    /// `‖{x,y,z}‖ ≤ ‖x‖ ‖y‖ ‖z‖`.
    pub fn check_jbstar_axioms(&self, sampler: &mut Sampler, samples: usize, tol: f64) -> Result<CheckReport> {
        let mut report = CheckReport::new("jbstar-axioms", tol).with_seed(sampler.seed());
        let mut spectrum = CheckReport::new("spectrum-nonnegative", tol);
        let mut cube = CheckReport::new("cube-identity", tol);
        let mut bound = CheckReport::new("norm-bound", tol);
        for probe in 0..samples {
            let x = sampler.vector(self.dim);
            let d = self.d_operator(&x, &x)?;
            let eigs = linalg::eigenvalues(d.linear_part());
            let scale = eigs.iter().map(|l| l.norm()).fold(1.0f64, f64::max);
            let worst = eigs
                .iter()
                .map(|l| (-l.re).max(l.im.abs()))
                .fold(0.0f64, f64::max);
            spectrum.observe(worst.max(0.0) / scale, || format!("probe {probe}: spectrum leaves [0,∞)"));

            let nx = self.norm(&x)?;
            let cube_val = self.norm(&self.triple(&x, &x, &x)?)?;
            let cube_res = (cube_val - nx.powi(3)).abs() / nx.powi(3).max(1.0);
            cube.observe(cube_res, || format!("probe {probe}: ‖{{x,x,x}}‖ ≠ ‖x‖³"));

            let y = sampler.vector(self.dim);
            let z = sampler.vector(self.dim);
            let lhs = self.norm(&self.triple(&x, &y, &z)?)?;
            let rhs = nx * self.norm(&y)? * self.norm(&z)?;
            bound.observe((lhs - rhs).max(0.0) / rhs.max(1.0), || {
                format!("probe {probe}: ‖{{x,y,z}}‖ exceeds ‖x‖‖y‖‖z‖")
            });
        }
        report.push_subcheck(spectrum);
        report.push_subcheck(cube);
        report.push_subcheck(bound);
        Ok(report)
    }
}

fn layout_norm(layout: &Layout, coords: &[Complex64]) -> f64 {
    match layout {
        Layout::Matrix { rows, cols } => {
            let m = CMatrix::from_fn(*rows, *cols, |a, b| coords[a * cols + b]);
            linalg::spectral_norm(&m)
        }
        Layout::Vector { .. } => coords.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(),
        Layout::Sum(parts) => {
            let mut offset = 0;
            let mut worst = 0.0f64;
            for part in parts {
                let d = part.dim();
                worst = worst.max(layout_norm(part, &coords[offset..offset + d]));
                offset += d;
            }
            worst
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Hand-rolled two-dimensional Hilbert triple `{x,y,z} = (⟨x,y⟩z + ⟨z,y⟩x)/2`.
    fn tiny_hilbert() -> TripleSystem {
        let n = 2;
        let mut tensor = vec![Complex64::ZERO; n * n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut v = 0.0;
                        if i == j && k == l {
                            v += 0.5;
                        }
                        if k == j && i == l {
                            v += 0.5;
                        }
                        tensor[t_index(n, i, j, k) + l] = Complex64::new(v, 0.0);
                    }
                }
            }
        }
        TripleSystem::new("tiny", Layout::Vector { len: n }, tensor, None).unwrap()
    }

    #[test]
    fn triple_product_slot_linearity() {
        let z = tiny_hilbert();
        let mut s = Sampler::new(1);
        let (x, y, w) = (s.vector(2), s.vector(2), s.vector(2));
        let lam = Complex64::new(0.3, -1.2);
        // outer slots complex-linear
        let a = z.triple(&(&x * lam), &y, &w).unwrap();
        let b = z.triple(&x, &y, &w).unwrap() * lam;
        assert!((a - b).norm() < 1e-12);
        // middle slot conjugate-linear
        let a = z.triple(&x, &(&y * lam), &w).unwrap();
        let b = z.triple(&x, &y, &w).unwrap() * lam.conj();
        assert!((a - b).norm() < 1e-12);
        // outer symmetry
        let a = z.triple(&x, &y, &w).unwrap();
        let b = z.triple(&w, &y, &x).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn operators_match_products() {
        let z = tiny_hilbert();
        let mut s = Sampler::new(2);
        let (a, b, v) = (s.vector(2), s.vector(2), s.vector(2));
        let d = z.d_operator(&a, &b).unwrap();
        assert!((d.apply(&v) - z.triple(&a, &b, &v).unwrap()).norm() < 1e-12);
        let q = z.q_operator(&a).unwrap();
        assert!((q.apply(&v) - z.triple(&a, &v, &a).unwrap()).norm() < 1e-12);
        // Q is conjugate-linear: Q(λv) = conj(λ) Q(v)
        let lam = Complex64::new(-0.7, 0.4);
        assert!((q.apply(&(&v * lam)) - q.apply(&v) * lam.conj()).norm() < 1e-12);
    }

    #[test]
    fn bergman_matches_definition_pointwise() {
        let z = tiny_hilbert();
        let mut s = Sampler::new(3);
        let (x, y, v) = (s.vector(2), s.vector(2), s.vector(2));
        let b = z.bergman(&x, &y).unwrap();
        let direct = &v - z.triple(&x, &y, &v).unwrap() * Complex64::new(2.0, 0.0)
            + z.triple(&x, &z.triple(&y, &v, &y).unwrap(), &x).unwrap();
        assert!((b.apply(&v) - direct).norm() < 1e-12);
    }

    #[test]
    fn jti_passes_on_hilbert_and_detects_damage() {
        let z = tiny_hilbert();
        let report = z.check_jti(1e-9);
        assert!(report.pass, "{}", report.summary());

        // A symmetric-slot-preserving perturbation must surface with a witness.
        let mut tensor = z.tensor().to_vec();
        tensor[t_index(2, 0, 1, 0) + 1] += Complex64::new(0.1, 0.0);
        let damaged = TripleSystem::new("damaged", Layout::Vector { len: 2 }, tensor, None).unwrap();
        let report = damaged.check_jti(1e-9);
        assert!(!report.pass);
        assert!(!report.witnesses.is_empty());
        assert!(report.witnesses[0].label.contains("basis tuple"));
    }

    #[test]
    fn asymmetric_tensor_is_rejected() {
        let z = tiny_hilbert();
        let mut tensor = z.tensor().to_vec();
        tensor[t_index(2, 0, 0, 1)] += Complex64::new(0.25, 0.0);
        let err = TripleSystem::new("bad", Layout::Vector { len: 2 }, tensor, None).unwrap_err();
        assert!(matches!(err, Error::AsymmetricTensor { .. }));
    }

    #[test]
    fn real_linear_map_roundtrips_and_composes() {
        let mut s = Sampler::new(4);
        let m1 = RealLinearMap::new(s.matrix(3, 3), s.matrix(3, 3)).unwrap();
        let m2 = RealLinearMap::new(s.matrix(3, 3), s.matrix(3, 3)).unwrap();
        let v = s.vector(3);
        let direct = m1.apply(&m2.apply(&v));
        let composed = m1.compose(&m2).apply(&v);
        assert!((direct - composed).norm() < 1e-12);

        let back = RealLinearMap::from_realified(&m1.realify());
        assert!((back.linear_part() - m1.linear_part()).norm() < 1e-13);
        assert!((back.antilinear_part() - m1.antilinear_part()).norm() < 1e-13);
    }

    #[test]
    fn exp_of_zero_is_identity_and_exp_is_multiplicative_on_commuting() {
        let zero = RealLinearMap::zero(3);
        let e = zero.exp();
        assert!((e.linear_part() - CMatrix::identity(3, 3)).norm() < 1e-12);
        assert!(e.antilinear_norm() < 1e-12);

        let mut s = Sampler::new(5);
        let a = RealLinearMap::from_linear(s.matrix(3, 3));
        let half = a.scale_re(0.5);
        let full = a.exp();
        let stepped = half.exp().compose(&half.exp());
        assert!((full.linear_part() - stepped.linear_part()).norm() < 1e-9);
    }

    #[test]
    fn vec_linear_roundtrip() {
        let mut s = Sampler::new(6);
        let m = RealLinearMap::from_linear(s.matrix(4, 4));
        let v = m.vec_linear();
        assert_eq!(v.len(), 32);
        let back = RealLinearMap::from_vec_linear(&v);
        assert!((back.linear_part() - m.linear_part()).norm() < 1e-14);
    }

    #[test]
    fn inverse_detects_singular_maps() {
        let singular = RealLinearMap::from_linear(CMatrix::zeros(2, 2));
        assert!(matches!(singular.inverse(), Err(Error::SingularMap)));
        let id = RealLinearMap::identity(2);
        let inv = id.inverse().unwrap();
        assert!((inv.linear_part() - CMatrix::identity(2, 2)).norm() < 1e-12);
    }
}
