//! Acceptance battery: one test per top-level guarantee the laboratory makes,
//! each printing a single pass/fail line (visible under `--nocapture`).  All
//! tolerances are pinned here on purpose — loosening one is a deliberate act.

use std::time::Instant;

use jtlab_cli::{run, SuiteConfig};
use jtlab_core::derivations::{
    characterization_space, derivation_space, inner_derivation_space, is_triple_derivation,
};
use jtlab_core::factories::make_factor;
use jtlab_core::linalg::{self, CMatrix, RMatrix};
use jtlab_core::local::{
    local_derivation_space, local_pair_space, verify_orthogonality_lemmas,
    verify_polarization_chain, verify_vn_corollary_r, verify_vn_corollary_s, LocalConfig,
};
use jtlab_core::pairs::{
    derivation_pair_space, is_derivation_pair, is_structure_map, iterated_action_check,
    DerivationPair, StructurePair,
};
use jtlab_core::peirce::{check_peirce_rules, peirce, tripotent_decomposition, Tripotent};
use jtlab_core::rational::counterexample_certificate;
use jtlab_core::triple::{from_matrix, to_matrix};
use jtlab_core::{CheckReport, RealLinearMap, Sampler, TripleSystem};
use num_complex::Complex64;

const BATTERY: [&str; 5] = ["cstar:2", "cstar:3", "type1:2x3", "herm:2", "hilbert:4"];

/// Accumulates sub-results for one criterion and prints the verdict line.
struct Criterion {
    name: &'static str,
    checks: usize,
    worst: f64,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    fn new(name: &'static str) -> Self {
        Criterion { name, checks: 0, worst: 0.0, failures: Vec::new(), notes: Vec::new() }
    }

    fn is_true(&mut self, label: impl FnOnce() -> String, ok: bool) {
        self.checks += 1;
        if !ok {
            self.failures.push(label());
        }
    }

    fn below(&mut self, label: impl FnOnce() -> String, value: f64, bound: f64) {
        self.checks += 1;
        self.worst = self.worst.max(value);
        if !(value < bound) {
            self.failures.push(format!("{} = {value:.3e} (bound {bound:.1e})", label()));
        }
    }

    fn passes(&mut self, report: &CheckReport) {
        self.checks += 1;
        self.worst = self.worst.max(report.max_residual);
        if !report.pass {
            self.failures
                .push(format!("{} (residual {:.3e})", report.name, report.max_residual));
        }
    }

    fn note(&mut self, text: String) {
        self.notes.push(text);
    }

    fn finish(self) {
        let verdict = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!(
            "[{verdict}] {}: {} checks, worst residual {:.3e}",
            self.name, self.checks, self.worst
        );
        if !self.notes.is_empty() {
            line.push_str(&format!(" ({})", self.notes.join("; ")));
        }
        if let Some(first) = self.failures.first() {
            line.push_str(&format!(" -- {first}"));
        }
        println!("{line}");
        assert!(self.failures.is_empty(), "{}: {}", self.name, self.failures.join("; "));
    }
}

fn factor(spec: &str) -> TripleSystem {
    make_factor(&spec.parse().unwrap()).unwrap()
}

/// e_jj partial sums for a square matrix factor.
fn diagonal_sum(z: &TripleSystem, n: usize, count: usize) -> Tripotent {
    let mut coords = z.basis_vector(0) * Complex64::ZERO;
    for j in 0..count {
        coords += z.basis_vector(j * (n + 1));
    }
    Tripotent::new(z, coords, 1e-9).unwrap()
}

#[test]
fn a01_triple_axioms_hold_across_the_factor_battery() {
    let start = Instant::now();
    let mut c = Criterion::new("axiom-battery");
    for (i, spec) in BATTERY.iter().enumerate() {
        let z = factor(spec);
        c.passes(&z.check_jti(1e-9));
        let mut sampler = Sampler::new(100 + i as u64);
        c.passes(&z.check_jbstar_axioms(&mut sampler, 100, 1e-8).unwrap());
    }
    let elapsed = start.elapsed();
    c.is_true(|| format!("runtime {elapsed:?} exceeds 60 s"), elapsed.as_secs() < 60);
    c.note(format!("{} factors, 100 probes each, {elapsed:?}", BATTERY.len()));
    c.finish();
}

#[test]
fn a02_peirce_calculus_is_exact_on_the_rank_three_factor() {
    let mut c = Criterion::new("peirce-calculus");
    let z = factor("cstar:3");
    let expected: [[usize; 3]; 3] = [[1, 4, 4], [4, 4, 1], [9, 0, 0]];
    for count in 1..=3usize {
        let e = diagonal_sum(&z, 3, count);
        let dims = peirce(&z, &e).unwrap().dims();
        c.is_true(
            || format!("rank-{count} tripotent has Peirce dims {dims:?}, expected {:?}", expected[count - 1]),
            dims == expected[count - 1],
        );
        c.passes(&check_peirce_rules(&z, &e, 1e-9).unwrap());
    }
    c.finish();
}

#[test]
fn a03_spectral_decompositions_reconstruct_rectangular_elements() {
    let mut c = Criterion::new("tripotent-decomposition");
    let z = factor("type1:2x3");
    let mut sampler = Sampler::new(300);
    for probe in 0..50 {
        let x = sampler.vector(z.dim());
        let terms = tripotent_decomposition(&z, &x, 1e-9).unwrap();
        let mut recon = &x * Complex64::ZERO;
        for (s, e) in &terms {
            recon += e.coords() * Complex64::new(*s, 0.0);
        }
        c.below(
            || format!("probe {probe}: reconstruction"),
            (recon - &x).norm() / x.norm(),
            1e-9,
        );
        for a in 0..terms.len() {
            for b in (a + 1)..terms.len() {
                let d_ab = z.d_operator(terms[a].1.coords(), terms[b].1.coords()).unwrap();
                let d_ba = z.d_operator(terms[b].1.coords(), terms[a].1.coords()).unwrap();
                c.below(
                    || format!("probe {probe}: D(e{a},e{b})"),
                    d_ab.norm().max(d_ba.norm()),
                    1e-9,
                );
            }
        }
    }
    c.note("50 seeded elements".into());
    c.finish();
}

/// Multiplication by a fixed matrix from one side, as an operator on the
/// factor's coordinates.
fn one_sided_multiplication(z: &TripleSystem, a: &CMatrix, left: bool, n: usize) -> RealLinearMap {
    let dim = z.dim();
    let mut op = CMatrix::zeros(dim, dim);
    for j in 0..dim {
        let e = to_matrix(&z.basis_vector(j), n, n);
        let image = if left { a * &e } else { &e * a };
        op.set_column(j, &from_matrix(&image));
    }
    RealLinearMap::from_linear(op)
}

#[test]
fn a04_derivation_dimensions_match_the_parametrization_oracle() {
    let mut c = Criterion::new("derivation-dimensions");
    let z = factor("cstar:2");

    // Independent oracle: every map x ↦ ax + xb with a, b skew-hermitian;
    // the family has 2n² parameters and a one-dimensional overlap (a = it·1,
    // b = −it·1 acts as zero), so its span rank is 2n² − 1 = 7.
    let i = Complex64::i();
    let unit = |r: usize, s: usize| {
        let mut m = CMatrix::zeros(2, 2);
        m[(r, s)] = Complex64::ONE;
        m
    };
    let skew = [
        unit(0, 0) * i,
        unit(1, 1) * i,
        unit(0, 1) - unit(1, 0),
        (unit(0, 1) + unit(1, 0)) * i,
    ];
    let mut columns = RMatrix::zeros(2 * z.dim() * z.dim(), 2 * skew.len());
    for (j, a) in skew.iter().enumerate() {
        columns.set_column(j, &one_sided_multiplication(&z, a, true, 2).vec_linear());
        columns
            .set_column(skew.len() + j, &one_sided_multiplication(&z, a, false, 2).vec_linear());
    }
    let oracle_rank = linalg::rank(&columns, 1e-8);
    c.is_true(|| format!("oracle span rank is {oracle_rank}, expected 7"), oracle_rank == 7);

    let der = derivation_space(&z, 1e-8).unwrap();
    c.is_true(|| format!("dim Der(cstar:2) = {}, expected 7", der.dim()), der.dim() == 7);
    let oracle_space =
        jtlab_core::derivations::DerivationSpace::from_vectors(linalg::column_space(&columns, 1e-8));
    c.below(|| "oracle span vs Der gap".into(), der.gap(&oracle_space), 1e-8);

    for spec in BATTERY {
        let z = factor(spec);
        let der = derivation_space(&z, 1e-8).unwrap();
        let inner = inner_derivation_space(&z, 1e-8).unwrap();
        c.is_true(
            || format!("{spec}: dim Der = {} but dim Inner = {}", der.dim(), inner.dim()),
            der.dim() == inner.dim(),
        );
        c.below(|| format!("{spec}: Inner vs Der gap"), der.gap(&inner), 1e-8);
    }
    c.finish();
}

#[test]
fn a05_characterization_kernel_is_the_derivation_space() {
    let mut c = Criterion::new("characterization-kernel");
    for spec in ["cstar:2", "herm:2"] {
        let z = factor(spec);
        let der = derivation_space(&z, 1e-8).unwrap();
        let kernel = characterization_space(&z, 1e-8).unwrap();
        c.is_true(
            || format!("{spec}: kernel dim {} vs Der dim {}", kernel.dim(), der.dim()),
            kernel.dim() == der.dim(),
        );
        c.below(|| format!("{spec}: kernel vs Der gap"), kernel.gap(&der), 1e-8);
    }
    c.finish();
}

#[test]
fn a06_local_derivations_are_derivations() {
    let start = Instant::now();
    let mut c = Criterion::new("local-derivations");
    for spec in ["cstar:2", "cstar:3", "type1:2x3", "sum(cstar:2,cstar:2)"] {
        for seed in [11u64, 23, 47] {
            let z = factor(spec);
            let mut sampler = Sampler::new(seed);
            let der = derivation_space(&z, 1e-8).unwrap();
            let locder =
                local_derivation_space(&z, &der, &LocalConfig::default(), &mut sampler, 1e-8)
                    .unwrap();
            c.is_true(
                || format!("{spec} seed {seed}: dim LocDer = {} but dim Der = {}", locder.dim(), der.dim()),
                locder.dim() == der.dim(),
            );
            c.below(
                || format!("{spec} seed {seed}: LocDer vs Der gap"),
                locder.space().gap(&der),
                1e-8,
            );
            for (i, d) in locder.space().basis().iter().enumerate() {
                let member = is_triple_derivation(&z, d, 1e-8).unwrap();
                c.below(
                    || format!("{spec} seed {seed}: LocDer basis element {i}"),
                    member.max_residual,
                    1e-8,
                );
            }
        }
    }
    let elapsed = start.elapsed();
    c.is_true(|| format!("runtime {elapsed:?} exceeds 5 min"), elapsed.as_secs() < 300);
    c.note(format!("4 factors x 3 seeds, {elapsed:?}"));
    c.finish();
}

#[test]
fn a07_lemma_chain_holds_on_an_orthogonal_frame() {
    let mut c = Criterion::new("lemma-chain");
    let z = factor("cstar:3");
    let mut sampler = Sampler::new(700);
    let der = derivation_space(&z, 1e-8).unwrap();
    let locder =
        local_derivation_space(&z, &der, &LocalConfig::default(), &mut sampler, 1e-8).unwrap();
    let e = diagonal_sum(&z, 3, 1);
    let f = Tripotent::new(&z, z.basis_vector(4), 1e-9).unwrap();
    let g = Tripotent::new(&z, z.basis_vector(8), 1e-9).unwrap();
    for _ in 0..10 {
        let delta = locder.space().sample(&mut sampler);
        c.passes(&verify_orthogonality_lemmas(&z, &delta, &e, &f, &g, &mut sampler, 4, 1e-8).unwrap());
        c.passes(&verify_polarization_chain(&z, &delta, &mut sampler, 5, 1e-8).unwrap());
    }
    c.note("10 seeded local derivations".into());
    c.finish();
}

#[test]
fn a08_derivation_pairs_exponentiate_and_localize() {
    let mut c = Criterion::new("derivation-pairs");
    let z = factor("cstar:2");
    let mut sampler = Sampler::new(800);

    for probe in 0..20 {
        let (x, y) = (sampler.vector(z.dim()), sampler.vector(z.dim()));
        let canonical = DerivationPair::new(
            z.d_operator(&x, &y).unwrap(),
            z.d_operator(&y, &x).unwrap().scale_re(-1.0),
        )
        .unwrap();
        let r = is_derivation_pair(&z, &canonical, 1e-9).unwrap();
        c.below(|| format!("probe {probe}: (D(x,y), -D(y,x))"), r.max_residual, 1e-9);
        let inner = z.d_operator(&x, &x).unwrap().scale(Complex64::i());
        let r = is_derivation_pair(&z, &DerivationPair::new(inner.clone(), inner).unwrap(), 1e-9)
            .unwrap();
        c.below(|| format!("probe {probe}: (iD(x,x), iD(x,x))"), r.max_residual, 1e-9);
    }

    let pairs = derivation_pair_space(&z, 1e-9).unwrap();
    let normalized = |pair: DerivationPair| DerivationPair::from_vec(&(pair.vec() / pair.norm()));
    for probe in 0..10 {
        let sp = StructurePair::from_exp(&normalized(pairs.sample(&mut sampler))).unwrap();
        let r = is_structure_map(&z, &sp, 1e-7).unwrap();
        c.below(|| format!("exp pair {probe}: structure map"), r.max_residual, 1e-7);
    }

    for probe in 0..5 {
        let pair = normalized(pairs.sample(&mut sampler));
        let r = iterated_action_check(&z, &pair, 4, &mut sampler, 3, 1e-7).unwrap();
        c.below(|| format!("pair {probe}: iterated action to order 4"), r.max_residual, 1e-7);
    }

    c.passes(&local_pair_space(&z, &LocalConfig::default(), &mut sampler, 1e-9).unwrap());
    c.finish();
}

#[test]
fn a09_multiplication_corollaries_hold_on_matrix_factors() {
    let mut c = Criterion::new("multiplication-corollaries");
    for n in [2usize, 3] {
        let mut sampler = Sampler::new(900 + n as u64);
        let id = CMatrix::identity(n, n);
        let h_samples = [CMatrix::zeros(n, n), id.clone(), sampler.hermitian(n)];
        c.passes(&verify_vn_corollary_r(n, &h_samples, &mut sampler, 100, 1e-9).unwrap());
        let p_samples = [CMatrix::zeros(n, n), id, sampler.hermitian(n), sampler.positive(n)];
        c.passes(&verify_vn_corollary_s(n, &p_samples, &mut sampler, 100, 1e-9).unwrap());
    }
    c.note("n = 2, 3 with 100 probes each".into());
    c.finish();
}

#[test]
fn a10_rational_counterexample_is_exact() {
    let mut c = Criterion::new("rational-counterexample");
    let report = counterexample_certificate();
    c.is_true(
        || format!("certificate tolerance is {:.1e}, expected exactly 0", report.tolerance),
        report.tolerance == 0.0,
    );
    c.is_true(|| format!("certificate max residual {:.3e} ≠ 0", report.max_residual), report.max_residual == 0.0);
    c.passes(&report);
    c.note("exact arithmetic, zero tolerance".into());
    c.finish();
}

#[test]
fn a11_reports_are_deterministic() {
    let mut c = Criterion::new("determinism");
    let config = SuiteConfig::default();
    let mut first = run(&config).unwrap();
    let mut second = run(&config).unwrap();
    for report in [&mut first, &mut second] {
        for entry in &mut report.entries {
            entry.elapsed_ms = 0;
        }
    }
    c.is_true(|| "full default run failed".into(), first.pass());
    c.is_true(
        || "two runs with the same seed differ".into(),
        serde_json::to_string(&first).unwrap() == serde_json::to_string(&second).unwrap(),
    );
    c.note(format!("{} suite entries compared", first.entries.len()));
    c.finish();
}

mod binary {
    use std::process::Command;

    fn jtlab(args: &[&str]) -> std::process::Output {
        Command::new(env!("CARGO_BIN_EXE_jtlab")).args(args).output().expect("binary runs")
    }

    #[test]
    fn run_writes_a_parsable_report() {
        let out = std::env::temp_dir().join(format!("jtlab-acceptance-{}.json", std::process::id()));
        let path = out.to_str().unwrap();
        let result = jtlab(&["run", "--factor", "cstar:2", "--suite", "axioms", "--seed", "3", "--out", path]);
        assert_eq!(result.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&result.stderr));
        let text = std::fs::read_to_string(&out).unwrap();
        let json: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(json["schema"], "jtlab/1");
        assert_eq!(json["seed"], 3);
        assert_eq!(json["entries"][0]["factor"], "cstar:2");
        std::fs::remove_file(&out).ok();
    }

    #[test]
    fn explain_prints_the_catalogue_entry() {
        let result = jtlab(&["explain", "jti"]);
        assert_eq!(result.status.code(), Some(0));
        assert!(String::from_utf8_lossy(&result.stdout).contains("Jordan triple identity"));
    }

    #[test]
    fn usage_errors_exit_with_two() {
        assert_eq!(jtlab(&["run", "--factor", "nope:1"]).status.code(), Some(2));
        assert_eq!(jtlab(&["explain", "bogus"]).status.code(), Some(2));
    }
}
