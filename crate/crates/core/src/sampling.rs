//! Seeded random probes.  Every stochastic routine takes a `Sampler` so that
//! a fixed seed reproduces the exact same report bytes.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Deterministic source of complex Gaussian test data.
pub struct Sampler {
    seed: u64,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { seed, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Seed this sampler was created with (recorded in reports).
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Derive an independent child stream; used to keep parallel suites
    /// deterministic regardless of scheduling.
    pub fn fork(&mut self, tag: u64) -> Sampler {
        let child = self.rng.gen::<u64>() ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        Sampler::new(child)
    }

    fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Standard complex Gaussian, unit variance overall.
    pub fn complex(&mut self) -> Complex64 {
        Complex64::new(self.normal(), self.normal()) * std::f64::consts::FRAC_1_SQRT_2
    }

    pub fn real(&mut self) -> f64 {
        self.normal()
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn vector(&mut self, n: usize) -> DVector<Complex64> {
        DVector::from_fn(n, |_, _| self.complex())
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> DMatrix<Complex64> {
        DMatrix::from_fn(rows, cols, |_, _| self.complex())
    }

    pub fn hermitian(&mut self, n: usize) -> DMatrix<Complex64> {
        let m = self.matrix(n, n);
        (&m + m.adjoint()) * Complex64::new(0.5, 0.0)
    }

    /// Positive semidefinite matrix `m mᴴ`.
    pub fn positive(&mut self, n: usize) -> DMatrix<Complex64> {
        let m = self.matrix(n, n);
        &m * m.adjoint()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = Sampler::new(42);
        let mut b = Sampler::new(42);
        for _ in 0..32 {
            assert_eq!(a.complex(), b.complex());
        }
        assert_eq!(a.matrix(3, 4), b.matrix(3, 4));
    }

    #[test]
    fn forks_are_deterministic_and_distinct() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        let mut fa = a.fork(1);
        let mut fb = b.fork(1);
        assert_eq!(fa.vector(5), fb.vector(5));
        let mut other = Sampler::new(7).fork(2);
        assert_ne!(fa.complex(), other.complex());
    }

    #[test]
    fn hermitian_and_positive_have_the_right_symmetry() {
        let mut s = Sampler::new(3);
        let h = s.hermitian(4);
        assert!((&h - h.adjoint()).norm() < 1e-14);
        let p = s.positive(4);
        assert!((&p - p.adjoint()).norm() < 1e-12);
        let eigs = p.clone().symmetric_eigenvalues();
        assert!(eigs.iter().all(|&l| l > -1e-12));
    }
}
