//! Constructors for the standard finite-dimensional factors and their
//! direct sums, plus the `kind:params` spec grammar used by the CLI.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector};
use crate::triple::{Layout, TripleSystem, UnitalStarAlgebra};

/// Largest supported factor dimension; the dense structure tensor grows as
/// the fourth power of it.
pub const MAX_DIM: usize = 36;

/// Recipe for a factor.  The string grammar is `type1:PxQ`, `cstar:N`,
/// `herm:N`, `hilbert:N`, and `sum(a,b,...)` with nesting allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorSpec {
    /// Rectangular matrices `p×q` with `{x,y,z} = (xy*z + zy*x)/2`.
    Type1 { rows: usize, cols: usize },
    /// Full matrix algebra `M_n` with the same product, carrying its
    /// *-algebra structure.
    CStar { n: usize },
    /// `M_n` presented as the complexified hermitian Jordan algebra; the
    /// triple product is derived from the Jordan product and involution.
    Hermitian { n: usize },
    /// Column space `ℂⁿ` with `{x,y,z} = (⟨x,y⟩z + ⟨z,y⟩x)/2`.
    Hilbert { n: usize },
    /// Orthogonal direct sum of the parts.
    Sum(Vec<FactorSpec>),
}

impl FactorSpec {
    pub fn dim(&self) -> usize {
        match self {
            FactorSpec::Type1 { rows, cols } => rows * cols,
            FactorSpec::CStar { n } | FactorSpec::Hermitian { n } => n * n,
            FactorSpec::Hilbert { n } => *n,
            FactorSpec::Sum(parts) => parts.iter().map(FactorSpec::dim).sum(),
        }
    }

    fn validate(&self, original: &str) -> Result<()> {
        let bad = |reason: &str| Err(Error::ParseSpec { spec: original.to_string(), reason: reason.into() });
        match self {
            FactorSpec::Type1 { rows, cols } => {
                if *rows == 0 || *cols == 0 {
                    return bad("matrix sides must be positive");
                }
            }
            FactorSpec::CStar { n } | FactorSpec::Hermitian { n } | FactorSpec::Hilbert { n } => {
                if *n == 0 {
                    return bad("size must be positive");
                }
            }
            FactorSpec::Sum(parts) => {
                if parts.is_empty() {
                    return bad("sum needs at least one part");
                }
                for p in parts {
                    p.validate(original)?;
                }
            }
        }
        if self.dim() > MAX_DIM {
            return Err(Error::InvalidParameter(format!(
                "factor dimension {} exceeds the supported maximum {MAX_DIM}",
                self.dim()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for FactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorSpec::Type1 { rows, cols } => write!(f, "type1:{rows}x{cols}"),
            FactorSpec::CStar { n } => write!(f, "cstar:{n}"),
            FactorSpec::Hermitian { n } => write!(f, "herm:{n}"),
            FactorSpec::Hilbert { n } => write!(f, "hilbert:{n}"),
            FactorSpec::Sum(parts) => {
                write!(f, "sum(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Split `a,b,c` at top-level commas, respecting parentheses.
fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth = depth.checked_sub(1).ok_or_else(|| Error::ParseSpec {
                    spec: s.to_string(),
                    reason: "unbalanced parentheses".into(),
                })?;
            }
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::ParseSpec { spec: s.to_string(), reason: "unbalanced parentheses".into() });
    }
    parts.push(&s[start..]);
    Ok(parts)
}

fn parse_spec(s: &str, original: &str) -> Result<FactorSpec> {
    let s = s.trim();
    let bad = |reason: String| Error::ParseSpec { spec: original.to_string(), reason };
    if let Some(inner) = s.strip_prefix("sum(").and_then(|r| r.strip_suffix(')')) {
        let parts = split_top_level(inner)?
            .into_iter()
            .map(|p| parse_spec(p, original))
            .collect::<Result<Vec<_>>>()?;
        if parts.is_empty() || inner.trim().is_empty() {
            return Err(bad("sum needs at least one part".into()));
        }
        return Ok(FactorSpec::Sum(parts));
    }
    let (kind, params) = s
        .split_once(':')
        .ok_or_else(|| bad(format!("`{s}` is not of the form kind:params")))?;
    let parse_n = |p: &str| {
        p.parse::<usize>()
            .map_err(|_| bad(format!("`{p}` is not a positive integer")))
    };
    match kind {
        "type1" => {
            let (r, c) = params
                .split_once('x')
                .ok_or_else(|| bad(format!("`{params}` is not of the form PxQ")))?;
            Ok(FactorSpec::Type1 { rows: parse_n(r)?, cols: parse_n(c)? })
        }
        "cstar" => Ok(FactorSpec::CStar { n: parse_n(params)? }),
        "herm" => Ok(FactorSpec::Hermitian { n: parse_n(params)? }),
        "hilbert" => Ok(FactorSpec::Hilbert { n: parse_n(params)? }),
        other => Err(bad(format!("unknown factor kind `{other}`"))),
    }
}

impl FromStr for FactorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let spec = parse_spec(s, s)?;
        spec.validate(s)?;
        Ok(spec)
    }
}

#[inline]
fn tensor_index(n: usize, i: usize, j: usize, k: usize, l: usize) -> usize {
    ((i * n + j) * n + k) * n + l
}

/// Structure tensor of rectangular `p×q` matrices under
/// `{x,y,z} = (xy*z + zy*x)/2`, in the `e_{ab} ↦ a·q + b` coordinates.
fn rectangular_tensor(p: usize, q: usize) -> Vec<Complex64> {
    let n = p * q;
    let mut t = vec![Complex64::new(0.0, 0.0); n * n * n * n];
    let half = Complex64::new(0.5, 0.0);
    let idx = |a: usize, b: usize| a * q + b;
    for a in 0..p {
        for b in 0..q {
            for c in 0..p {
                for d in 0..q {
                    for e in 0..p {
                        for f in 0..q {
                            let (i, j, k) = (idx(a, b), idx(c, d), idx(e, f));
                            if b == d && c == e {
                                t[tensor_index(n, i, j, k, idx(a, f))] += half;
                            }
                            if f == d && c == a {
                                t[tensor_index(n, i, j, k, idx(e, b))] += half;
                            }
                        }
                    }
                }
            }
        }
    }
    t
}

fn basis(n: usize, i: usize) -> CVector {
    CVector::from_fn(n, |k, _| if k == i { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
}

/// Matrix-unit *-algebra of `M_m` in `e_{ab} ↦ a·m + b` coordinates, with the
/// symmetrized Jordan product table.
fn matrix_star_algebra(m: usize) -> UnitalStarAlgebra {
    let n = m * m;
    let idx = |a: usize, b: usize| a * m + b;
    let mut table = vec![Complex64::new(0.0, 0.0); n * n * n];
    let half = Complex64::new(0.5, 0.0);
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    let (i, j) = (idx(a, b), idx(c, d));
                    // e_ab ∘ e_cd = (δ_bc e_ad + δ_da e_cb)/2
                    if b == c {
                        table[(i * n + j) * n + idx(a, d)] += half;
                    }
                    if d == a {
                        table[(i * n + j) * n + idx(c, b)] += half;
                    }
                }
            }
        }
    }
    let mut involution = CMatrix::zeros(n, n);
    for a in 0..m {
        for b in 0..m {
            involution[(idx(b, a), idx(a, b))] = Complex64::new(1.0, 0.0);
        }
    }
    let mut unit = CVector::zeros(n);
    for a in 0..m {
        unit[idx(a, a)] = Complex64::new(1.0, 0.0);
    }
    UnitalStarAlgebra::from_jordan_table(table, involution, unit).expect("square table")
}

/// Triple product derived from a Jordan *-algebra:
/// `{x,y,z} = (x∘y*)∘z + (z∘y*)∘x − (x∘z)∘y*`.
fn tensor_from_algebra(alg: &UnitalStarAlgebra) -> Vec<Complex64> {
    let n = alg.dim();
    let mut t = vec![Complex64::new(0.0, 0.0); n * n * n * n];
    for j in 0..n {
        let ystar = alg.star(&basis(n, j));
        for i in 0..n {
            let x = basis(n, i);
            let xy = alg.jordan(&x, &ystar);
            for k in 0..n {
                let z = basis(n, k);
                let prod = alg.jordan(&xy, &z);
                let prod2 = alg.jordan(&alg.jordan(&z, &ystar), &x);
                let prod3 = alg.jordan(&alg.jordan(&x, &z), &ystar);
                for l in 0..n {
                    t[tensor_index(n, i, j, k, l)] = prod[l] + prod2[l] - prod3[l];
                }
            }
        }
    }
    t
}

fn hilbert_tensor(n: usize) -> Vec<Complex64> {
    let mut t = vec![Complex64::new(0.0, 0.0); n * n * n * n];
    let half = Complex64::new(0.5, 0.0);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j {
                    for l in 0..n {
                        if k == l {
                            t[tensor_index(n, i, j, k, l)] += half;
                        }
                    }
                }
                if k == j {
                    t[tensor_index(n, i, j, k, i)] += half;
                }
            }
        }
    }
    t
}

/// Build the factor described by `spec`.
pub fn make_factor(spec: &FactorSpec) -> Result<TripleSystem> {
    spec.validate(&spec.to_string())?;
    match spec {
        FactorSpec::Type1 { rows, cols } => TripleSystem::new(
            spec.to_string(),
            Layout::Matrix { rows: *rows, cols: *cols },
            rectangular_tensor(*rows, *cols),
            None,
        ),
        FactorSpec::CStar { n } => TripleSystem::new(
            spec.to_string(),
            Layout::Matrix { rows: *n, cols: *n },
            rectangular_tensor(*n, *n),
            Some(matrix_star_algebra(*n)),
        ),
        FactorSpec::Hermitian { n } => {
            let alg = matrix_star_algebra(*n);
            TripleSystem::new(
                spec.to_string(),
                Layout::Matrix { rows: *n, cols: *n },
                tensor_from_algebra(&alg),
                Some(alg),
            )
        }
        FactorSpec::Hilbert { n } => TripleSystem::new(
            spec.to_string(),
            Layout::Vector { len: *n },
            hilbert_tensor(*n),
            None,
        ),
        FactorSpec::Sum(parts) => {
            let systems = parts.iter().map(make_factor).collect::<Result<Vec<_>>>()?;
            direct_sum(systems)
        }
    }
}

/// Orthogonal direct sum: coordinates concatenate, products never mix parts,
/// and the algebra survives exactly when every part carries one.
pub fn direct_sum(parts: Vec<TripleSystem>) -> Result<TripleSystem> {
    if parts.is_empty() {
        return Err(Error::InvalidParameter("direct sum needs at least one part".into()));
    }
    let n: usize = parts.iter().map(TripleSystem::dim).sum();
    if n > MAX_DIM {
        return Err(Error::InvalidParameter(format!(
            "factor dimension {n} exceeds the supported maximum {MAX_DIM}"
        )));
    }
    let label = format!(
        "sum({})",
        parts.iter().map(TripleSystem::label).collect::<Vec<_>>().join(",")
    );
    let layout = Layout::Sum(parts.iter().map(|p| p.layout().clone()).collect());

    let mut tensor = vec![Complex64::new(0.0, 0.0); n * n * n * n];
    let mut offset = 0usize;
    for part in &parts {
        let d = part.dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let row = part.basis_product(i, j, k);
                    for l in 0..d {
                        tensor[tensor_index(n, offset + i, offset + j, offset + k, offset + l)] = row[l];
                    }
                }
            }
        }
        offset += d;
    }

    let algebra = if parts.iter().all(|p| p.algebra().is_some()) {
        let mut table = vec![Complex64::new(0.0, 0.0); n * n * n];
        let mut involution = CMatrix::zeros(n, n);
        let mut unit = CVector::zeros(n);
        let mut offset = 0usize;
        for part in &parts {
            let alg = part.algebra().expect("checked above");
            let d = part.dim();
            for i in 0..d {
                let ei = basis(d, i);
                for j in 0..d {
                    let prod = alg.jordan(&ei, &basis(d, j));
                    for l in 0..d {
                        table[((offset + i) * n + (offset + j)) * n + (offset + l)] = prod[l];
                    }
                }
                let st = alg.star(&ei);
                for l in 0..d {
                    involution[(offset + l, offset + i)] = st[l];
                }
            }
            for l in 0..d {
                unit[offset + l] = alg.unit()[l];
            }
            offset += d;
        }
        Some(UnitalStarAlgebra::from_jordan_table(table, involution, unit)?)
    } else {
        None
    };

    TripleSystem::new(label, layout, tensor, algebra)
}
