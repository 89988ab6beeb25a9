//! Tripotents, Peirce decompositions, and the spectral decomposition of an
//! arbitrary element into orthogonal tripotents.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, RANK_TOL};
use crate::report::CheckReport;
use crate::triple::{from_matrix, to_matrix, Layout, RealLinearMap, TripleSystem};

/// An element with `{e,e,e} = e` (the zero element counts, with rank 0).
#[derive(Debug, Clone)]
pub struct Tripotent {
    coords: CVector,
}

impl Tripotent {
    pub fn new(z: &TripleSystem, coords: CVector, tol: f64) -> Result<Self> {
        let residual = tripotent_residual(z, &coords)?;
        if residual > tol {
            return Err(Error::NotATripotent { residual });
        }
        Ok(Tripotent { coords })
    }

    pub fn coords(&self) -> &CVector {
        &self.coords
    }
}

/// `‖{e,e,e} − e‖ / max(1, ‖e‖)`.
pub fn tripotent_residual(z: &TripleSystem, e: &CVector) -> Result<f64> {
    let cube = z.triple(e, e, e)?;
    Ok((cube - e).norm() / e.norm().max(1.0))
}

pub fn is_tripotent(z: &TripleSystem, e: &CVector, tol: f64) -> Result<bool> {
    Ok(tripotent_residual(z, e)? <= tol)
}

/// Orthogonality of tripotents through its three equivalent forms
/// `D(e,f) = 0`, `D(f,e) = 0`, `{e,e,f} = 0`.  The forms must agree; a split
/// verdict is an internal inconsistency, not a negative answer.
pub fn are_orthogonal(z: &TripleSystem, e: &Tripotent, f: &Tripotent, tol: f64) -> Result<bool> {
    let scale = e.coords().norm().max(f.coords().norm()).max(1.0);
    let r1 = z.d_operator(e.coords(), f.coords())?.norm() / scale;
    let r2 = z.d_operator(f.coords(), e.coords())?.norm() / scale;
    let r3 = z.triple(e.coords(), e.coords(), f.coords())?.norm() / scale;
    let verdicts = [r1 <= tol, r2 <= tol, r3 <= tol];
    if verdicts.iter().any(|&v| v != verdicts[0]) {
        return Err(Error::Inconsistent(format!(
            "orthogonality forms disagree: D(e,f) {r1:.3e}, D(f,e) {r2:.3e}, {{e,e,f}} {r3:.3e}"
        )));
    }
    Ok(verdicts[0])
}

/// Eigenspace label for `D(e,e)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeirceSpace {
    One,
    Half,
    Zero,
}

impl PeirceSpace {
    pub const ALL: [PeirceSpace; 3] = [PeirceSpace::One, PeirceSpace::Half, PeirceSpace::Zero];

    pub fn eigenvalue(self) -> f64 {
        match self {
            PeirceSpace::One => 1.0,
            PeirceSpace::Half => 0.5,
            PeirceSpace::Zero => 0.0,
        }
    }

    fn index(self) -> usize {
        match self {
            PeirceSpace::One => 0,
            PeirceSpace::Half => 1,
            PeirceSpace::Zero => 2,
        }
    }
}

/// The three Peirce projections of a tripotent and orthonormal bases of
/// their ranges.
#[derive(Debug, Clone)]
pub struct PeirceDecomposition {
    projections: [RealLinearMap; 3],
    bases: [CMatrix; 3],
}

impl PeirceDecomposition {
    pub fn projection(&self, space: PeirceSpace) -> &RealLinearMap {
        &self.projections[space.index()]
    }

    pub fn basis(&self, space: PeirceSpace) -> &CMatrix {
        &self.bases[space.index()]
    }

    pub fn dim(&self, space: PeirceSpace) -> usize {
        self.bases[space.index()].ncols()
    }

    pub fn dims(&self) -> [usize; 3] {
        [self.dim(PeirceSpace::One), self.dim(PeirceSpace::Half), self.dim(PeirceSpace::Zero)]
    }

    pub fn project(&self, space: PeirceSpace, v: &CVector) -> CVector {
        self.projection(space).apply(v)
    }
}

/// Peirce decomposition of `e`: `P₁ = Q_e²`, `P_½ = 2(D(e,e) − Q_e²)`,
/// `P₀ = B(e,e)`.
pub fn peirce(z: &TripleSystem, e: &Tripotent) -> Result<PeirceDecomposition> {
    let q = z.q_operator(e.coords())?;
    let qq = q.compose(&q);
    let d = z.d_operator(e.coords(), e.coords())?;
    let p1 = qq.clone();
    let phalf = d.sub(&qq).scale_re(2.0);
    let p0 = z.bergman(e.coords(), e.coords())?;
    let bases = [&p1, &phalf, &p0].map(|p| linalg::complex_column_space(p.linear_part(), RANK_TOL));
    Ok(PeirceDecomposition { projections: [p1, phalf, p0], bases })
}

/// Full audit of a Peirce decomposition: projection algebra, agreement with
/// the spectrum of `D(e,e)`, and the multiplication rules
/// `{Z_i, Z_j, Z_k} ⊆ Z_{i−j+k}` together with `D(Z₀, Z₁) = D(Z₁, Z₀) = 0`.
pub fn check_peirce_rules(z: &TripleSystem, e: &Tripotent, tol: f64) -> Result<CheckReport> {
    let n = z.dim();
    let dec = peirce(z, e)?;
    let d = z.d_operator(e.coords(), e.coords())?;
    let mut report = CheckReport::new("peirce-rules", tol);

    let mut proj = CheckReport::new("projections", tol);
    let mut sum = RealLinearMap::zero(n);
    for space in PeirceSpace::ALL {
        let p = dec.projection(space);
        let name = space.eigenvalue();
        proj.observe(p.antilinear_norm(), || format!("P_{name} is not complex-linear"));
        let idem = p.compose(p).sub(p);
        proj.observe(idem.norm() / p.norm().max(1.0), || format!("P_{name}² ≠ P_{name}"));
        // eigenspace property: D(e,e) P_k = k P_k
        let dp = d.compose(p).sub(&p.scale_re(space.eigenvalue()));
        proj.observe(dp.norm() / p.norm().max(1.0), || format!("D(e,e) P_{name} ≠ {name}·P_{name}"));
        for other in PeirceSpace::ALL {
            if other.index() <= space.index() {
                continue;
            }
            let mixed = p.compose(dec.projection(other));
            proj.observe(mixed.norm(), || {
                format!("P_{name} P_{} ≠ 0", other.eigenvalue())
            });
        }
        sum = sum.add(p);
    }
    let identity_gap = sum.sub(&RealLinearMap::identity(n)).norm();
    proj.observe(identity_gap / (n as f64).sqrt(), || "P₁ + P_½ + P₀ ≠ I".into());
    report.push_subcheck(proj);

    let mut spectral = CheckReport::new("eigenspace-dims", tol);
    let mut counts = [0usize; 3];
    for lambda in linalg::eigenvalues(d.linear_part()) {
        let mut placed = false;
        for space in PeirceSpace::ALL {
            if (lambda - Complex64::new(space.eigenvalue(), 0.0)).norm() < 1e-6 {
                counts[space.index()] += 1;
                placed = true;
                break;
            }
        }
        spectral.observe_bool(placed, || format!("eigenvalue {lambda} of D(e,e) is not in {{0, ½, 1}}"));
    }
    for space in PeirceSpace::ALL {
        spectral.observe_bool(counts[space.index()] == dec.dim(space), || {
            format!(
                "eigenvalue {} has multiplicity {} but P has rank {}",
                space.eigenvalue(),
                counts[space.index()],
                dec.dim(space)
            )
        });
    }
    report.push_subcheck(spectral);

    let mut rules = CheckReport::new("multiplication-rules", tol);
    for si in PeirceSpace::ALL {
        for sj in PeirceSpace::ALL {
            for sk in PeirceSpace::ALL {
                let target = si.eigenvalue() - sj.eigenvalue() + sk.eigenvalue();
                let target_space = PeirceSpace::ALL
                    .iter()
                    .copied()
                    .find(|s| (s.eigenvalue() - target).abs() < 1e-12);
                for a in 0..dec.dim(si) {
                    let u = dec.basis(si).column(a).into_owned();
                    for b in 0..dec.dim(sj) {
                        let v = dec.basis(sj).column(b).into_owned();
                        for c in 0..dec.dim(sk) {
                            let w = dec.basis(sk).column(c).into_owned();
                            let prod = z.triple(&u, &v, &w)?;
                            let residual = match target_space {
                                Some(s) => linalg::complex_distance_to_span(dec.basis(s), &prod),
                                None => prod.norm(),
                            };
                            rules.observe(residual, || {
                                format!(
                                    "{{Z_{}, Z_{}, Z_{}}} leaves Z_{target} (basis triple {a},{b},{c})",
                                    si.eigenvalue(),
                                    sj.eigenvalue(),
                                    sk.eigenvalue()
                                )
                            });
                        }
                    }
                }
            }
        }
    }
    // Z₀ and Z₁ never interact through D.
    for a in 0..dec.dim(PeirceSpace::Zero) {
        let u = dec.basis(PeirceSpace::Zero).column(a).into_owned();
        for b in 0..dec.dim(PeirceSpace::One) {
            let v = dec.basis(PeirceSpace::One).column(b).into_owned();
            rules.observe(z.d_operator(&u, &v)?.norm(), || format!("D(Z₀, Z₁) ≠ 0 at pair {a},{b}"));
            rules.observe(z.d_operator(&v, &u)?.norm(), || format!("D(Z₁, Z₀) ≠ 0 at pair {a},{b}"));
        }
    }
    report.push_subcheck(rules);
    Ok(report)
}

/// Coefficients below this relative cutoff are treated as zero when an
/// element is decomposed into tripotents.
const DECOMPOSITION_CUT: f64 = 1e-12;

/// Spectral decomposition `x = Σ σ_k e_k` with `σ_k > 0` descending and the
/// `e_k` pairwise orthogonal tripotents.  The zero element yields an empty
/// sum.
pub fn tripotent_decomposition(z: &TripleSystem, x: &CVector, tol: f64) -> Result<Vec<(f64, Tripotent)>> {
    if x.len() != z.dim() {
        return Err(Error::DimensionMismatch { expected: z.dim(), got: x.len() });
    }
    decompose_layout(z, z.layout().clone(), x, 0, tol)
}

fn decompose_layout(
    z: &TripleSystem,
    layout: Layout,
    x: &CVector,
    offset: usize,
    tol: f64,
) -> Result<Vec<(f64, Tripotent)>> {
    let embed = |local: CVector, off: usize| -> CVector {
        let mut full = CVector::zeros(z.dim());
        for i in 0..local.len() {
            full[off + i] = local[i];
        }
        full
    };
    match layout {
        Layout::Matrix { rows, cols } => {
            let local = CVector::from_fn(rows * cols, |i, _| x[offset + i]);
            let m = to_matrix(&local, rows, cols);
            let (u, s, v) = linalg::complex_svd(&m);
            let cut = DECOMPOSITION_CUT * s.max().max(1.0);
            let mut out = Vec::new();
            for k in 0..s.len() {
                let sigma = s[k];
                if sigma <= cut {
                    continue;
                }
                let rank_one = u.column(k) * v.column(k).adjoint();
                let e = embed(from_matrix(&rank_one), offset);
                out.push((sigma, Tripotent::new(z, e, tol)?));
            }
            Ok(out)
        }
        Layout::Vector { len } => {
            let local = CVector::from_fn(len, |i, _| x[offset + i]);
            let norm = local.norm();
            if norm <= DECOMPOSITION_CUT {
                return Ok(Vec::new());
            }
            let e = embed(local / Complex64::new(norm, 0.0), offset);
            Ok(vec![(norm, Tripotent::new(z, e, tol)?)])
        }
        Layout::Sum(parts) => {
            let mut out = Vec::new();
            let mut off = offset;
            for part in parts {
                let d = part.dim();
                out.extend(decompose_layout(z, part, x, off, tol)?);
                off += d;
            }
            Ok(out)
        }
    }
}

/// Rank of a tripotent: the number of unit singular values in its matrix
/// picture (each part separately for sums).  Singular values must sit near
/// `{0, 1}`; anything else means the element is not a tripotent.
pub fn tripotent_rank(z: &TripleSystem, e: &Tripotent, tol: f64) -> Result<usize> {
    rank_layout(z.layout().clone(), e.coords(), 0, tol)
}

fn rank_layout(layout: Layout, coords: &CVector, offset: usize, tol: f64) -> Result<usize> {
    match layout {
        Layout::Matrix { rows, cols } => {
            let local = CVector::from_fn(rows * cols, |i, _| coords[offset + i]);
            let m = to_matrix(&local, rows, cols);
            let (_, s, _) = linalg::complex_svd(&m);
            let mut rank = 0usize;
            for k in 0..s.len() {
                let sigma = s[k];
                if (sigma - 1.0).abs() <= tol.max(1e-9) {
                    rank += 1;
                } else if sigma > tol.max(1e-9) {
                    return Err(Error::NotATripotent { residual: (sigma - 1.0).abs().min(sigma) });
                }
            }
            Ok(rank)
        }
        Layout::Vector { len } => {
            let norm = (0..len).map(|i| coords[offset + i].norm_sqr()).sum::<f64>().sqrt();
            if (norm - 1.0).abs() <= tol.max(1e-9) {
                Ok(1)
            } else if norm <= tol.max(1e-9) {
                Ok(0)
            } else {
                Err(Error::NotATripotent { residual: (norm - 1.0).abs().min(norm) })
            }
        }
        Layout::Sum(parts) => {
            let mut total = 0usize;
            let mut off = offset;
            for part in parts {
                let d = part.dim();
                total += rank_layout(part, coords, off, tol)?;
                off += d;
            }
            Ok(total)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factories::make_factor;
    use crate::sampling::Sampler;

    fn factor(s: &str) -> TripleSystem {
        make_factor(&s.parse().unwrap()).unwrap()
    }

    fn unit_of(z: &TripleSystem) -> CVector {
        z.algebra().unwrap().unit().clone()
    }

    #[test]
    fn tripotent_validation() {
        let z = factor("cstar:2");
        let e11 = z.basis_vector(0);
        assert!(is_tripotent(&z, &e11, 1e-12).unwrap());
        let double = &e11 * Complex64::new(2.0, 0.0);
        assert!(!is_tripotent(&z, &double, 1e-9).unwrap());
        assert!(matches!(
            Tripotent::new(&z, double, 1e-9),
            Err(Error::NotATripotent { .. })
        ));
        // zero is a tripotent of rank 0
        let zero = Tripotent::new(&z, CVector::zeros(4), 1e-12).unwrap();
        assert_eq!(tripotent_rank(&z, &zero, 1e-9).unwrap(), 0);
    }

    #[test]
    fn orthogonality_of_matrix_units() {
        let z = factor("cstar:2");
        let e11 = Tripotent::new(&z, z.basis_vector(0), 1e-12).unwrap();
        let e22 = Tripotent::new(&z, z.basis_vector(3), 1e-12).unwrap();
        let e12 = Tripotent::new(&z, z.basis_vector(1), 1e-12).unwrap();
        assert!(are_orthogonal(&z, &e11, &e22, 1e-9).unwrap());
        assert!(!are_orthogonal(&z, &e11, &e12, 1e-9).unwrap());
    }

    #[test]
    fn peirce_dimensions_for_standard_tripotents() {
        let z2 = factor("cstar:2");
        let e11 = Tripotent::new(&z2, z2.basis_vector(0), 1e-12).unwrap();
        assert_eq!(peirce(&z2, &e11).unwrap().dims(), [1, 2, 1]);

        let z3 = factor("cstar:3");
        let e11 = Tripotent::new(&z3, z3.basis_vector(0), 1e-12).unwrap();
        assert_eq!(peirce(&z3, &e11).unwrap().dims(), [1, 4, 4]);
        let diag2 = Tripotent::new(&z3, &z3.basis_vector(0) + z3.basis_vector(4), 1e-12).unwrap();
        assert_eq!(peirce(&z3, &diag2).unwrap().dims(), [4, 4, 1]);
        let unit = Tripotent::new(&z3, unit_of(&z3), 1e-12).unwrap();
        let dec = peirce(&z3, &unit).unwrap();
        assert_eq!(dec.dims(), [9, 0, 0]);
        // P₁ at the unit is the identity
        let gap = dec.projection(PeirceSpace::One).sub(&RealLinearMap::identity(9)).norm();
        assert!(gap < 1e-12);

        let zero = Tripotent::new(&z3, CVector::zeros(9), 1e-12).unwrap();
        assert_eq!(peirce(&z3, &zero).unwrap().dims(), [0, 0, 9]);
    }

    #[test]
    fn peirce_rules_hold_for_e11_in_m3() {
        let z = factor("cstar:3");
        let e11 = Tripotent::new(&z, z.basis_vector(0), 1e-12).unwrap();
        let report = check_peirce_rules(&z, &e11, 1e-10).unwrap();
        assert!(report.pass, "{}", serde_json::to_string_pretty(&report).unwrap());
    }

    #[test]
    fn decomposition_reconstructs_random_elements() {
        let z = factor("type1:2x3");
        let mut s = Sampler::new(31);
        for probe in 0..5 {
            let x = s.vector(6);
            let parts = tripotent_decomposition(&z, &x, 1e-10).unwrap();
            assert!(parts.len() <= 2, "rank of a 2x3 matrix is at most 2");
            let mut rebuilt = CVector::zeros(6);
            for (sigma, e) in &parts {
                assert!(*sigma > 0.0);
                rebuilt += e.coords() * Complex64::new(*sigma, 0.0);
                assert_eq!(tripotent_rank(&z, e, 1e-9).unwrap(), 1);
            }
            assert!((rebuilt - &x).norm() < 1e-12, "probe {probe}");
            for (i, (_, a)) in parts.iter().enumerate() {
                for (_, b) in parts.iter().skip(i + 1) {
                    assert!(are_orthogonal(&z, a, b, 1e-9).unwrap());
                }
            }
            // coefficients come out descending
            for w in parts.windows(2) {
                assert!(w[0].0 >= w[1].0);
            }
        }
    }

    #[test]
    fn decomposition_of_zero_is_empty() {
        let z = factor("cstar:2");
        assert!(tripotent_decomposition(&z, &CVector::zeros(4), 1e-10).unwrap().is_empty());
    }

    #[test]
    fn decomposition_respects_direct_sums() {
        let z = factor("sum(cstar:2,hilbert:2)");
        let mut s = Sampler::new(32);
        let x = s.vector(6);
        let parts = tripotent_decomposition(&z, &x, 1e-10).unwrap();
        // 2x2 block contributes ≤ 2 tripotents, the Hilbert part exactly one
        assert!(parts.len() <= 3);
        let mut rebuilt = CVector::zeros(6);
        for (sigma, e) in &parts {
            rebuilt += e.coords() * Complex64::new(*sigma, 0.0);
        }
        assert!((rebuilt - &x).norm() < 1e-12);
    }

    #[test]
    fn ranks_of_diagonal_tripotents() {
        let z = factor("cstar:3");
        let unit = Tripotent::new(&z, unit_of(&z), 1e-12).unwrap();
        assert_eq!(tripotent_rank(&z, &unit, 1e-9).unwrap(), 3);
        let diag2 = Tripotent::new(&z, &z.basis_vector(0) + z.basis_vector(4), 1e-12).unwrap();
        assert_eq!(tripotent_rank(&z, &diag2, 1e-9).unwrap(), 2);
    }
}
