//! Local triple derivations: pointwise membership in the derivation range,
//! the local-derivation space as a reflexive closure over probes, the
//! orthogonal-tripotent identities and polarization chain that drive the
//! equality LocDer = Der, the von Neumann quadratic rules, and the local
//! pair space.

use num_complex::Complex64;
use serde::Serialize;

use crate::derivations::{derivation_space, DerivationSpace};
use crate::error::{Error, Result};
use crate::factories::{make_factor, FactorSpec};
use crate::linalg::{self, CMatrix, CVector, RMatrix, RVector, RANK_TOL};
use crate::pairs::{derivation_pair_space, DerivationPair, PairSpace};
use crate::peirce::{are_orthogonal, Tripotent};
use crate::report::CheckReport;
use crate::sampling::Sampler;
use crate::triple::{from_matrix, to_matrix, RealLinearMap, TripleSystem};

/// Probe schedule for the reflexive-closure computations.
#[derive(Debug, Clone)]
pub struct LocalConfig {
    /// Stop once the kernel dimension has survived this many consecutive
    /// probes unchanged (after all basis probes have been used).
    pub stability_window: usize,
    /// Probe budget; `None` means `50 · dim`.
    pub max_probes: Option<usize>,
}

impl Default for LocalConfig {
    fn default() -> Self {
        LocalConfig { stability_window: 5, max_probes: None }
    }
}

/// One probe and the kernel dimension that survived it.
#[derive(Debug, Clone, Serialize)]
pub struct ProbeRecord {
    pub label: String,
    pub kernel_dim: usize,
}

/// The space of local triple derivations together with the probe log that
/// produced it.
#[derive(Debug, Clone)]
pub struct LocalDerivationSpace {
    space: DerivationSpace,
    log: Vec<ProbeRecord>,
}

impl LocalDerivationSpace {
    pub fn space(&self) -> &DerivationSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn log(&self) -> &[ProbeRecord] {
        &self.log
    }
}

/// Outcome of a pointwise range test: the witness holds the coefficients of
/// a derivation agreeing with the tested map at the probe.
#[derive(Debug, Clone)]
pub struct Membership {
    pub member: bool,
    pub residual: f64,
    pub witness: Option<RVector>,
}

/// Evaluation-at-`x` as a real matrix acting on vectorized complex-linear
/// maps: row `r` carries `Re δ(x)_r`, row `n + r` carries `Im δ(x)_r`.
fn evaluation_matrix(x: &CVector) -> RMatrix {
    let n = x.len();
    let mut e = RMatrix::zeros(2 * n, 2 * n * n);
    for c in 0..n {
        let (re, im) = (x[c].re, x[c].im);
        for r in 0..n {
            let col = c * n + r;
            e[(r, col)] = re;
            e[(n + r, col)] = im;
            e[(r, n * n + col)] = -im;
            e[(n + r, n * n + col)] = re;
        }
    }
    e
}

/// Does `δ(x)` lie in the real span of `{d(x) : d ∈ Der}`?  Conjugate-linear
/// input is a usage error.
pub fn derivation_range_membership(
    z: &TripleSystem,
    der: &DerivationSpace,
    delta: &RealLinearMap,
    x: &CVector,
    tol: f64,
) -> Result<Membership> {
    let n = z.dim();
    if delta.dim() != n || x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: delta.dim().max(x.len()) });
    }
    let antilinear = delta.antilinear_norm();
    if antilinear > tol.max(1e-12) * delta.norm().max(1.0) {
        return Err(Error::NotComplexLinear { norm: antilinear });
    }
    let target = linalg::realify_vector(&delta.apply(x));
    let mut images = RMatrix::zeros(2 * n, der.dim());
    for (j, d) in der.basis().iter().enumerate() {
        images.set_column(j, &linalg::realify_vector(&d.apply(x)));
    }
    let (coeffs, residual) = linalg::least_squares(&images, &target);
    let member = residual <= tol;
    Ok(Membership { member, residual, witness: member.then_some(coeffs) })
}

/// Shared probing loop: intersect the kernel with each probe's constraint
/// rows until the dimension stabilizes.  The constraint callback returns a
/// row block over the full unknown space; it is restricted to the current
/// kernel here.
fn reflexive_closure(
    z: &TripleSystem,
    config: &LocalConfig,
    sampler: &mut Sampler,
    tol: f64,
    unknowns: usize,
    mut constraint_rows: impl FnMut(&CVector) -> Result<RMatrix>,
) -> Result<(RMatrix, Vec<ProbeRecord>)> {
    let n = z.dim();
    let max_probes = config.max_probes.unwrap_or(50 * n);
    let mut kernel = RMatrix::identity(unknowns, unknowns);
    let mut log = Vec::new();
    let mut stable = 0usize;
    let mut count = 0usize;
    loop {
        let (label, x) = if count < n {
            (format!("basis:{count}"), z.basis_vector(count))
        } else {
            (format!("random:{}", count - n), sampler.vector(n))
        };
        let restricted = constraint_rows(&x)? * &kernel;
        let null = linalg::null_space(&restricted, tol.max(RANK_TOL));
        if null.ncols() < kernel.ncols() {
            kernel = &kernel * null;
            stable = 0;
        } else {
            stable += 1;
        }
        log.push(ProbeRecord { label, kernel_dim: kernel.ncols() });
        count += 1;
        if count >= n && stable >= config.stability_window {
            return Ok((kernel, log));
        }
        if count >= max_probes {
            return Err(Error::NonConvergence { max_probes, last_dim: kernel.ncols() });
        }
    }
}

/// Projector onto the orthogonal complement of the columns' span.
fn complement_projector(columns: &RMatrix) -> RMatrix {
    let b = linalg::column_space(columns, RANK_TOL);
    RMatrix::identity(columns.nrows(), columns.nrows()) - &b * b.transpose()
}

/// The space `{δ : δ(x) ∈ Der·x for all x}`, computed by stacking one
/// subspace constraint per probe: all basis vectors first, then seeded
/// random draws, until the kernel dimension survives `stability_window`
/// consecutive probes.
pub fn local_derivation_space(
    z: &TripleSystem,
    der: &DerivationSpace,
    config: &LocalConfig,
    sampler: &mut Sampler,
    tol: f64,
) -> Result<LocalDerivationSpace> {
    let n = z.dim();
    let (kernel, log) = reflexive_closure(z, config, sampler, tol, 2 * n * n, |x| {
        let mut images = RMatrix::zeros(2 * n, der.dim());
        for (j, d) in der.basis().iter().enumerate() {
            images.set_column(j, &linalg::realify_vector(&d.apply(x)));
        }
        Ok(complement_projector(&images) * evaluation_matrix(x))
    })?;
    Ok(LocalDerivationSpace { space: DerivationSpace::from_vectors(kernel), log })
}

fn require_complex_linear(map: &RealLinearMap, tol: f64) -> Result<()> {
    let antilinear = map.antilinear_norm();
    if antilinear > tol.max(1e-12) * map.norm().max(1.0) {
        return Err(Error::NotComplexLinear { norm: antilinear });
    }
    Ok(())
}

/// The identities a local derivation satisfies on a mutually orthogonal
/// triple of tripotents, each named after its role in the argument that a
/// local derivation acts as a derivation on the span of the family.
pub fn verify_orthogonality_lemmas(
    z: &TripleSystem,
    delta: &RealLinearMap,
    e: &Tripotent,
    f: &Tripotent,
    g: &Tripotent,
    sampler: &mut Sampler,
    probes: usize,
    tol: f64,
) -> Result<CheckReport> {
    require_complex_linear(delta, tol)?;
    for (a, b) in [(e, f), (e, g), (f, g)] {
        if !are_orthogonal(z, a, b, tol.max(RANK_TOL))? {
            let residual = z.triple(a.coords(), a.coords(), b.coords())?.norm();
            return Err(Error::NotOrthogonal { residual });
        }
    }

    let two = Complex64::new(2.0, 0.0);
    let trips = [e.coords(), f.coords(), g.coords()];
    let names = ["e", "f", "g"];
    let d = |v: &CVector| delta.apply(v);
    let rel = |diff: &CVector, scale: f64| diff.norm() / scale.max(1.0);
    let ordered: Vec<(usize, usize)> =
        (0..3).flat_map(|a| (0..3).filter(move |&b| b != a).map(move |b| (a, b))).collect();

    let mut report = CheckReport::new("orthogonality-lemmas", tol).with_seed(sampler.seed());

    // δu = 2{δu,u,u} + {u,δu,u} for each tripotent and each pairwise sum
    let mut image = CheckReport::new("tripotent-image", tol);
    let sums = [
        trips[0] + trips[1],
        trips[0] + trips[2],
        trips[1] + trips[2],
        trips[0] + trips[1] + trips[2],
    ];
    let image_cases: Vec<(String, CVector)> = names
        .iter()
        .enumerate()
        .map(|(i, name)| (name.to_string(), trips[i].clone()))
        .chain(sums.into_iter().enumerate().map(|(i, s)| (format!("sum {i}"), s)))
        .collect();
    for (label, u) in &image_cases {
        let du = d(u);
        let rhs = z.triple(&du, u, u)? * two + z.triple(u, &du, u)?;
        image.observe(rel(&(du - rhs), 1.0), || format!("image rule fails at {label}"));
    }
    report.push_subcheck(image);

    // δ{b,a,b} = 2{δb,a,b} + {b,δa,b} for orthogonal a ≠ b
    let mut q_image = CheckReport::new("q-orthogonal-image", tol);
    let mut q_middle = CheckReport::new("q-middle-vanishes", tol);
    for &(a, b) in &ordered {
        let (ta, tb) = (trips[a], trips[b]);
        let lhs = d(&z.triple(tb, ta, tb)?);
        let rhs = z.triple(&d(tb), ta, tb)? * two + z.triple(tb, &d(ta), tb)?;
        q_image.observe(rel(&(lhs - rhs), 1.0), || {
            format!("identity fails at ({}, {})", names[a], names[b])
        });
        q_middle.observe(rel(&z.triple(tb, &d(ta), tb)?, 1.0), || {
            format!("{{{b}, δ{a}, {b}}} does not vanish", a = names[a], b = names[b])
        });
    }
    report.push_subcheck(q_image);
    report.push_subcheck(q_middle);

    // the expansion of the image rule at a sum of two orthogonal tripotents:
    // 2{δa,b,b} + 2{δb,a,a} + 2{a,δa,b} + {a,δb,a} + 2{a,δb,b} + {b,δa,b} = 0
    let mut joint = CheckReport::new("joint-image-expansion", tol);
    for &(a, b) in &[(0usize, 1usize), (0, 2), (1, 2)] {
        let (ta, tb) = (trips[a], trips[b]);
        let (da, db) = (d(ta), d(tb));
        let total = z.triple(&da, tb, tb)? * two
            + z.triple(&db, ta, ta)? * two
            + z.triple(ta, &da, tb)? * two
            + z.triple(ta, &db, ta)?
            + z.triple(ta, &db, tb)? * two
            + z.triple(tb, &da, tb)?;
        joint.observe(rel(&total, 1.0), || {
            format!("expansion at ({}, {}) does not vanish", names[a], names[b])
        });
    }
    report.push_subcheck(joint);

    // the odd part of that expansion: 2{δb,a,a} + 2{a,δa,b} + {a,δb,a} = 0
    let mut odd = CheckReport::new("odd-part", tol);
    for &(a, b) in &ordered {
        let (ta, tb) = (trips[a], trips[b]);
        let total =
            z.triple(&d(tb), ta, ta)? * two + z.triple(ta, &d(ta), tb)? * two + z.triple(ta, &d(tb), ta)?;
        odd.observe(rel(&total, 1.0), || {
            format!("odd part at ({}, {}) does not vanish", names[a], names[b])
        });
    }
    report.push_subcheck(odd);

    // {δb,a,a} + {a,δa,b} = 0 for orthogonal a ≠ b
    let mut mixed = CheckReport::new("mixed-term-cancellation", tol);
    for &(a, b) in &ordered {
        let (ta, tb) = (trips[a], trips[b]);
        let total = z.triple(&d(tb), ta, ta)? + z.triple(ta, &d(ta), tb)?;
        mixed.observe(rel(&total, 1.0), || {
            format!("cancellation fails at ({}, {})", names[a], names[b])
        });
    }
    report.push_subcheck(mixed);

    // δ{a,a,b} = {δa,a,b} + {a,δa,b} + {a,a,δb} for orthogonal a ≠ b
    let mut d_image = CheckReport::new("d-orthogonal-image", tol);
    for &(a, b) in &ordered {
        let (ta, tb) = (trips[a], trips[b]);
        let lhs = d(&z.triple(ta, ta, tb)?);
        let rhs =
            z.triple(&d(ta), ta, tb)? + z.triple(ta, &d(ta), tb)? + z.triple(ta, ta, &d(tb))?;
        d_image.observe(rel(&(lhs - rhs), 1.0), || {
            format!("identity fails at ({}, {})", names[a], names[b])
        });
    }
    report.push_subcheck(d_image);

    // δ{a,b,c} = {δa,b,c} + {a,δb,c} + {a,b,δc} over all permutations, with
    // the middle term vanishing on its own
    let mut triple_image = CheckReport::new("triple-orthogonal-image", tol);
    let mut triple_middle = CheckReport::new("orthogonal-middle-vanishes", tol);
    for &(a, b, c) in
        &[(0usize, 1usize, 2usize), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
    {
        let (ta, tb, tc) = (trips[a], trips[b], trips[c]);
        let lhs = d(&z.triple(ta, tb, tc)?);
        let rhs =
            z.triple(&d(ta), tb, tc)? + z.triple(ta, &d(tb), tc)? + z.triple(ta, tb, &d(tc))?;
        triple_image.observe(rel(&(lhs - rhs), 1.0), || {
            format!("identity fails at ({}, {}, {})", names[a], names[b], names[c])
        });
        triple_middle.observe(rel(&z.triple(ta, &d(tb), tc)?, 1.0), || {
            format!("{{{}, δ{}, {}}} does not vanish", names[a], names[b], names[c])
        });
    }
    report.push_subcheck(triple_image);
    report.push_subcheck(triple_middle);

    // the full identity on every tuple from the family, distinct or not
    let mut family = CheckReport::new("family-tuples", tol);
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let (ta, tb, tc) = (trips[a], trips[b], trips[c]);
                let lhs = d(&z.triple(ta, tb, tc)?);
                let rhs = z.triple(&d(ta), tb, tc)?
                    + z.triple(ta, &d(tb), tc)?
                    + z.triple(ta, tb, &d(tc))?;
                family.observe(rel(&(lhs - rhs), 1.0), || {
                    format!("identity fails at ({}, {}, {})", names[a], names[b], names[c])
                });
            }
        }
    }
    report.push_subcheck(family);

    // by linearity the identity extends to the span of the family
    let mut span = CheckReport::new("span-extension", tol);
    let combo = |s: &mut Sampler| {
        let mut v = CVector::zeros(z.dim());
        for t in &trips {
            v += *t * s.complex();
        }
        v
    };
    for p in 0..probes {
        let (x, y, w) = (combo(sampler), combo(sampler), combo(sampler));
        let lhs = d(&z.triple(&x, &y, &w)?);
        let rhs =
            z.triple(&d(&x), &y, &w)? + z.triple(&x, &d(&y), &w)? + z.triple(&x, &y, &d(&w))?;
        let scale = lhs.norm().max(rhs.norm()).max(1.0);
        span.observe((lhs - rhs).norm() / scale, || {
            format!("span identity fails at probe {p}")
        });
    }
    report.push_subcheck(span);

    Ok(report)
}

/// The polarization chain: the one-variable cube rule implies, step by
/// step, the full derivation identity.  Each stage is checked on fresh
/// random probes; a failing cube rule short-circuits the chain.
pub fn verify_polarization_chain(
    z: &TripleSystem,
    delta: &RealLinearMap,
    sampler: &mut Sampler,
    probes: usize,
    tol: f64,
) -> Result<CheckReport> {
    require_complex_linear(delta, tol)?;
    let two = Complex64::new(2.0, 0.0);
    let d = |v: &CVector| delta.apply(v);
    let mut report = CheckReport::new("polarization-chain", tol).with_seed(sampler.seed());

    // δ{xxx} = 2{δx,x,x} + {x,δx,x}
    let mut cube = CheckReport::new("cube-rule", tol);
    for p in 0..probes {
        let x = sampler.vector(z.dim());
        let lhs = d(&z.triple(&x, &x, &x)?);
        let rhs = z.triple(&d(&x), &x, &x)? * two + z.triple(&x, &d(&x), &x)?;
        let scale = lhs.norm().max(rhs.norm()).max(1.0);
        cube.observe((lhs - rhs).norm() / scale, || format!("cube rule fails at probe {p}"));
    }
    let cube_pass = cube.pass;
    report.push_subcheck(cube);
    if !cube_pass {
        report.observe_bool(false, || "cube rule fails; the chain short-circuits".into());
        return Ok(report);
    }

    // the sum obtained from the cube rule at x ± y
    let mut polarized = CheckReport::new("polarized-sum", tol);
    for p in 0..probes {
        let (x, y) = (sampler.vector(z.dim()), sampler.vector(z.dim()));
        let lhs = d(&z.triple(&x, &y, &y)?) + d(&z.triple(&y, &x, &y)?) + d(&z.triple(&y, &y, &x)?);
        let rhs = (z.triple(&d(&x), &y, &y)? + z.triple(&d(&y), &x, &y)? + z.triple(&d(&y), &y, &x)?)
            * two
            + z.triple(&x, &d(&y), &y)?
            + z.triple(&y, &d(&x), &y)?
            + z.triple(&y, &d(&y), &x)?;
        let scale = lhs.norm().max(rhs.norm()).max(1.0);
        polarized.observe((lhs - rhs).norm() / scale, || {
            format!("polarized sum fails at probe {p}")
        });
    }
    report.push_subcheck(polarized);

    // δ{yxy} = 2{δy,x,y} + {y,δx,y}
    let mut two_var = CheckReport::new("two-variable-rule", tol);
    for p in 0..probes {
        let (x, y) = (sampler.vector(z.dim()), sampler.vector(z.dim()));
        let lhs = d(&z.triple(&y, &x, &y)?);
        let rhs = z.triple(&d(&y), &x, &y)? * two + z.triple(&y, &d(&x), &y)?;
        let scale = lhs.norm().max(rhs.norm()).max(1.0);
        two_var.observe((lhs - rhs).norm() / scale, || {
            format!("two-variable rule fails at probe {p}")
        });
    }
    report.push_subcheck(two_var);

    // δ{yxz} = {δy,x,z} + {y,δx,z} + {y,x,δz}
    let mut full = CheckReport::new("full-identity", tol);
    for p in 0..probes {
        let (x, y, w) = (sampler.vector(z.dim()), sampler.vector(z.dim()), sampler.vector(z.dim()));
        let lhs = d(&z.triple(&y, &x, &w)?);
        let rhs =
            z.triple(&d(&y), &x, &w)? + z.triple(&y, &d(&x), &w)? + z.triple(&y, &x, &d(&w))?;
        let scale = lhs.norm().max(rhs.norm()).max(1.0);
        full.observe((lhs - rhs).norm() / scale, || {
            format!("full identity fails at probe {p}")
        });
    }
    report.push_subcheck(full);

    Ok(report)
}

fn require_square(n: usize, m: &CMatrix, what: &str) -> Result<()> {
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: m.nrows().max(m.ncols()) });
    }
    let defect = (m - m.adjoint()).norm();
    if defect > 1e-12 * m.norm().max(1.0) {
        return Err(Error::InvalidParameter(format!("{what} must be hermitian")));
    }
    Ok(())
}

/// `x ↦ x p + p x` as a map on the matrix factor.
fn two_sided_map(z: &TripleSystem, n: usize, p: &CMatrix) -> RealLinearMap {
    let dim = n * n;
    let mut m = CMatrix::zeros(dim, dim);
    for k in 0..dim {
        let x = to_matrix(&z.basis_vector(k), n, n);
        m.set_column(k, &from_matrix(&(&x * p + p * &x)));
    }
    RealLinearMap::from_linear(m)
}

/// On the matrix factor: maps of the form `r(x) = xp + px` with `p = h² ≥ 0`
/// make `i·r` a local triple derivation, and `r` obeys the quadratic rule
/// `r(x²) = x r(x) + r(x) x − x r(1) x`.
pub fn verify_vn_corollary_r(
    n: usize,
    h_samples: &[CMatrix],
    sampler: &mut Sampler,
    probes: usize,
    tol: f64,
) -> Result<CheckReport> {
    let z = make_factor(&FactorSpec::CStar { n })?;
    let der = derivation_space(&z, RANK_TOL)?;
    let unit = z.algebra().expect("matrix factor carries its algebra").unit().clone();
    let mut report = CheckReport::new("vn-quadratic-rule", tol).with_seed(sampler.seed());
    let mut membership = CheckReport::new("local-membership", tol);
    let mut conclusion = CheckReport::new("quadratic-conclusion", tol);
    for (idx, h) in h_samples.iter().enumerate() {
        require_square(n, h, "each sample")?;
        let p = h * h;
        let r_map = two_sided_map(&z, n, &p);
        let ir = r_map.scale(Complex64::new(0.0, 1.0));
        for probe in 0..probes {
            let x = sampler.vector(z.dim());
            let m = derivation_range_membership(&z, &der, &ir, &x, tol)?;
            membership.observe(m.residual, || {
                format!("sample {idx}: i·r(x) leaves the derivation range at probe {probe}")
            });
        }
        let p1 = to_matrix(&r_map.apply(&unit), n, n);
        for probe in 0..probes {
            let xm = sampler.matrix(n, n);
            let lhs = to_matrix(&r_map.apply(&from_matrix(&(&xm * &xm))), n, n);
            let rx = to_matrix(&r_map.apply(&from_matrix(&xm)), n, n);
            let rhs = &xm * &rx + &rx * &xm - &xm * &p1 * &xm;
            let scale = lhs.norm().max(rhs.norm()).max(1.0);
            conclusion.observe((&lhs - rhs).norm() / scale, || {
                format!("sample {idx}: quadratic rule fails at probe {probe}")
            });
        }
    }
    report.push_subcheck(membership);
    report.push_subcheck(conclusion);
    Ok(report)
}

/// On the matrix factor: for `s(x) = xp` with `p ≥ 0`, the adjoint map
/// `s*(x) = (s(x*))*` makes `s + s*` a quadratic-rule map and `s − s*` a
/// pointwise inner derivation, and `s` obeys
/// `s(x²) = x s(x) + s(x) x − x p x`.
pub fn verify_vn_corollary_s(
    n: usize,
    p_samples: &[CMatrix],
    sampler: &mut Sampler,
    probes: usize,
    tol: f64,
) -> Result<CheckReport> {
    let z = make_factor(&FactorSpec::CStar { n })?;
    let dim = n * n;
    let mut report = CheckReport::new("vn-one-sided-rule", tol).with_seed(sampler.seed());
    let mut hypothesis = CheckReport::new("sum-hypothesis", tol);
    let mut inner = CheckReport::new("difference-inner-derivation", tol);
    let mut conclusion = CheckReport::new("one-sided-conclusion", tol);
    for (idx, p) in p_samples.iter().enumerate() {
        require_square(n, p, "each sample")?;
        let mut s_cols = CMatrix::zeros(dim, dim);
        let mut s_star_cols = CMatrix::zeros(dim, dim);
        for k in 0..dim {
            let x = to_matrix(&z.basis_vector(k), n, n);
            s_cols.set_column(k, &from_matrix(&(&x * p)));
            // s*(x) = (s(x*))*, built literally from that formula
            s_star_cols.set_column(k, &from_matrix(&(x.adjoint() * p).adjoint()));
        }
        let s_map = RealLinearMap::from_linear(s_cols);
        let s_star_map = RealLinearMap::from_linear(s_star_cols);
        let diff = |m: &CMatrix| {
            to_matrix(&(s_map.apply(&from_matrix(m)) - s_star_map.apply(&from_matrix(m))), n, n)
        };
        for probe in 0..probes {
            let xm = sampler.matrix(n, n);
            // (s + s*)(x) = xp + px
            let sum = to_matrix(
                &(s_map.apply(&from_matrix(&xm)) + s_star_map.apply(&from_matrix(&xm))),
                n,
                n,
            );
            let expected = &xm * p + p * &xm;
            let scale = sum.norm().max(expected.norm()).max(1.0);
            hypothesis.observe((&sum - expected).norm() / scale, || {
                format!("sample {idx}: s + s* deviates from xp + px at probe {probe}")
            });
            // (s − s*)(xy) = x (s − s*)(y) + (s − s*)(x) y
            let ym = sampler.matrix(n, n);
            let lhs = diff(&(&xm * &ym));
            let rhs = &xm * diff(&ym) + diff(&xm) * &ym;
            let scale = lhs.norm().max(rhs.norm()).max(1.0);
            inner.observe((&lhs - rhs).norm() / scale, || {
                format!("sample {idx}: s − s* is not a derivation at probe {probe}")
            });
            // s(x²) = x s(x) + s(x) x − x p x
            let sx = to_matrix(&s_map.apply(&from_matrix(&xm)), n, n);
            let lhs = to_matrix(&s_map.apply(&from_matrix(&(&xm * &xm))), n, n);
            let rhs = &xm * &sx + &sx * &xm - &xm * p * &xm;
            let scale = lhs.norm().max(rhs.norm()).max(1.0);
            conclusion.observe((&lhs - rhs).norm() / scale, || {
                format!("sample {idx}: one-sided rule fails at probe {probe}")
            });
        }
    }
    report.push_subcheck(hypothesis);
    report.push_subcheck(inner);
    report.push_subcheck(conclusion);
    Ok(report)
}

/// The local pair space: the joint reflexive closure of the two components
/// against the pair space, compared with the pair space itself, plus the
/// diagonal cross-check through the local derivation space.
pub fn local_pair_space(
    z: &TripleSystem,
    config: &LocalConfig,
    sampler: &mut Sampler,
    tol: f64,
) -> Result<CheckReport> {
    let n = z.dim();
    let half = 2 * n * n;
    let pairs = derivation_pair_space(z, RANK_TOL)?;
    let mut probe_sampler = sampler.fork(1);
    let (kernel, _log) =
        reflexive_closure(z, config, &mut probe_sampler, tol, 2 * half, |x| {
            let ex = evaluation_matrix(x);
            let mut images = RMatrix::zeros(4 * n, pairs.dim());
            for (j, pr) in pairs.basis().iter().enumerate() {
                let top = linalg::realify_vector(&pr.plus().apply(x));
                let bottom = linalg::realify_vector(&pr.minus().apply(x));
                for r in 0..2 * n {
                    images[(r, j)] = top[r];
                    images[(2 * n + r, j)] = bottom[r];
                }
            }
            let mut joint = RMatrix::zeros(4 * n, 2 * half);
            joint.view_mut((0, 0), (2 * n, half)).copy_from(&ex);
            joint.view_mut((2 * n, half), (2 * n, half)).copy_from(&ex);
            Ok(complement_projector(&images) * joint)
        })?;
    let local = PairSpace::from_vectors(kernel);

    let mut report = CheckReport::new("local-pair-space", tol).with_seed(sampler.seed());
    report.observe_bool(local.dim() == pairs.dim(), || {
        format!(
            "local pair space has dimension {} but the pair space has {}",
            local.dim(),
            pairs.dim()
        )
    });
    let mut containment = CheckReport::new("containment", tol);
    containment.observe(linalg::mutual_containment(pairs.vectors(), local.vectors()), || {
        "the pair space and its local closure do not coincide".into()
    });
    report.push_subcheck(containment);

    // every local derivation is a derivation, so its diagonal is a pair
    let der = derivation_space(z, RANK_TOL)?;
    let mut diag_sampler = sampler.fork(2);
    let locder = local_derivation_space(z, &der, config, &mut diag_sampler, tol)?;
    let mut diagonal = CheckReport::new("diagonal-consistency", tol);
    for (j, d) in locder.space().basis().iter().enumerate() {
        let pair = DerivationPair::new(d.clone(), d.clone())?;
        diagonal.observe(pairs.distance(&pair), || {
            format!("diagonal of local derivation {j} falls outside the pair space")
        });
        diagonal.observe(local.distance(&pair), || {
            format!("diagonal of local derivation {j} falls outside its local closure")
        });
    }
    report.push_subcheck(diagonal);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivations::is_triple_derivation;
    use crate::factories::make_factor;

    fn factor(s: &str) -> TripleSystem {
        make_factor(&s.parse().unwrap()).unwrap()
    }

    fn diag(entries: &[f64]) -> CMatrix {
        let n = entries.len();
        CMatrix::from_fn(n, n, |r, c| {
            if r == c {
                Complex64::new(entries[r], 0.0)
            } else {
                Complex64::ZERO
            }
        })
    }

    #[test]
    fn local_space_equals_derivation_space_on_the_matrix_factor() {
        let z = factor("cstar:2");
        let der = derivation_space(&z, RANK_TOL).unwrap();
        let mut s = Sampler::new(60);
        let local =
            local_derivation_space(&z, &der, &LocalConfig::default(), &mut s, RANK_TOL).unwrap();
        assert_eq!(local.dim(), 7);
        assert!(der.gap(local.space()) < 1e-9);
        for d in local.space().basis() {
            assert!(is_triple_derivation(&z, d, 1e-8).unwrap().pass);
        }
        // the log starts with basis probes and its dimensions never grow
        assert!(local.log()[0].label.starts_with("basis:"));
        let dims: Vec<usize> = local.log().iter().map(|r| r.kernel_dim).collect();
        assert!(dims.windows(2).all(|w| w[1] <= w[0]), "{dims:?}");
    }

    #[test]
    fn probe_order_does_not_change_the_space() {
        let z = factor("cstar:2");
        let der = derivation_space(&z, RANK_TOL).unwrap();
        let mut s1 = Sampler::new(61);
        let mut s2 = Sampler::new(62);
        let a = local_derivation_space(&z, &der, &LocalConfig::default(), &mut s1, RANK_TOL).unwrap();
        let b = local_derivation_space(&z, &der, &LocalConfig::default(), &mut s2, RANK_TOL).unwrap();
        assert_eq!(a.dim(), b.dim());
        assert!(a.space().gap(b.space()) < 1e-9);
    }

    #[test]
    fn rectangular_factor_matches_the_square_case() {
        let z = factor("type1:2x3");
        let der = derivation_space(&z, RANK_TOL).unwrap();
        let mut s = Sampler::new(63);
        let local =
            local_derivation_space(&z, &der, &LocalConfig::default(), &mut s, RANK_TOL).unwrap();
        assert_eq!(local.dim(), der.dim());
        assert!(der.gap(local.space()) < 1e-8);
    }

    #[test]
    fn membership_accepts_derivations_and_rejects_perturbations() {
        let z = factor("cstar:2");
        let der = derivation_space(&z, RANK_TOL).unwrap();
        let mut s = Sampler::new(64);
        let d = der.sample(&mut s);
        let x = s.vector(4);
        let m = derivation_range_membership(&z, &der, &d, &x, 1e-9).unwrap();
        assert!(m.member);
        let witness = RealLinearMap::from_vec_linear(&(der.vectors() * m.witness.unwrap()));
        assert!((witness.apply(&x) - d.apply(&x)).norm() < 1e-8);

        // a perturbed map escapes the pointwise range at a generic probe
        let bad = d.add(&RealLinearMap::identity(4).scale_re(0.1));
        let m = derivation_range_membership(&z, &der, &bad, &x, 1e-9).unwrap();
        assert!(!m.member && m.witness.is_none() && m.residual > 1e-3);

        // the zero probe is always in range with the zero witness
        let m = derivation_range_membership(&z, &der, &bad, &CVector::zeros(4), 1e-9).unwrap();
        assert!(m.member && m.witness.unwrap().norm() < 1e-12);
    }

    #[test]
    fn non_convergence_is_reported() {
        let z = factor("cstar:2");
        let der = derivation_space(&z, RANK_TOL).unwrap();
        let mut s = Sampler::new(65);
        let config = LocalConfig { stability_window: 5, max_probes: Some(3) };
        assert!(matches!(
            local_derivation_space(&z, &der, &config, &mut s, RANK_TOL),
            Err(Error::NonConvergence { max_probes: 3, .. })
        ));
    }

    #[test]
    fn orthogonality_lemmas_hold_for_local_derivations() {
        let z = factor("cstar:3");
        let der = derivation_space(&z, RANK_TOL).unwrap();
        let mut s = Sampler::new(66);
        let local =
            local_derivation_space(&z, &der, &LocalConfig::default(), &mut s, RANK_TOL).unwrap();
        let e = Tripotent::new(&z, z.basis_vector(0), 1e-9).unwrap();
        let f = Tripotent::new(&z, z.basis_vector(4), 1e-9).unwrap();
        let g = Tripotent::new(&z, z.basis_vector(8), 1e-9).unwrap();
        let delta = local.space().sample(&mut s);
        let report = verify_orthogonality_lemmas(&z, &delta, &e, &f, &g, &mut s, 20, 1e-8).unwrap();
        assert!(report.pass, "{}", serde_json::to_string_pretty(&report).unwrap());

        // non-orthogonal input is a usage error
        let e_again = Tripotent::new(&z, z.basis_vector(0), 1e-9).unwrap();
        assert!(matches!(
            verify_orthogonality_lemmas(&z, &delta, &e, &e_again, &g, &mut s, 5, 1e-8),
            Err(Error::NotOrthogonal { .. })
        ));
    }

    #[test]
    fn polarization_chain_passes_for_derivations_and_short_circuits_otherwise() {
        let z = factor("cstar:2");
        let der = derivation_space(&z, RANK_TOL).unwrap();
        let mut s = Sampler::new(69);
        let d = der.sample(&mut s);
        let report = verify_polarization_chain(&z, &d, &mut s, 50, 1e-8).unwrap();
        assert!(report.pass, "{}", serde_json::to_string_pretty(&report).unwrap());
        assert_eq!(report.subchecks.len(), 4);

        // the identity map fails the cube rule outright: δ{xxx} = x, not 3x
        let report =
            verify_polarization_chain(&z, &RealLinearMap::identity(4), &mut s, 10, 1e-8).unwrap();
        assert!(!report.pass);
        assert_eq!(report.subchecks.len(), 1);
        assert!(!report.witnesses.is_empty());
    }

    #[test]
    fn quadratic_rule_handles_all_sample_shapes() {
        let mut s = Sampler::new(67);
        let samples = [diag(&[1.0, 2.0]), CMatrix::zeros(2, 2), CMatrix::identity(2, 2)];
        let report = verify_vn_corollary_r(2, &samples, &mut s, 25, 1e-9).unwrap();
        assert!(report.pass, "{}", serde_json::to_string_pretty(&report).unwrap());

        let skew = CMatrix::from_fn(2, 2, |r, c| {
            if r == 0 && c == 1 {
                Complex64::ONE
            } else {
                Complex64::ZERO
            }
        });
        assert!(matches!(
            verify_vn_corollary_r(2, &[skew], &mut s, 5, 1e-9),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn one_sided_rule_handles_all_sample_shapes() {
        let mut s = Sampler::new(68);
        let samples = [diag(&[1.0, 3.0]), CMatrix::zeros(2, 2), CMatrix::identity(2, 2)];
        let report = verify_vn_corollary_s(2, &samples, &mut s, 25, 1e-9).unwrap();
        assert!(report.pass, "{}", serde_json::to_string_pretty(&report).unwrap());
    }

    #[test]
    fn local_pair_space_matches_the_pair_space() {
        let z = factor("cstar:2");
        let mut s = Sampler::new(70);
        let report = local_pair_space(&z, &LocalConfig::default(), &mut s, 1e-8).unwrap();
        assert!(report.pass, "{}", serde_json::to_string_pretty(&report).unwrap());
    }
}
