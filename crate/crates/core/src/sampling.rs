//! Seeded random inputs for randomized suites.
//!
//! ChaCha is a counter-based generator, so a `(seed, stream)` pair pins every
//! draw regardless of thread scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{c, eigh, expi_hermitian, CMatrix, CVector, C64};

pub type SuiteRng = ChaCha20Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Independent generator for case `stream` of a suite seeded with `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> SuiteRng {
    let mut r = ChaCha20Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn normal(rng: &mut impl Rng) -> f64 {
    StandardNormal.sample(rng)
}

pub fn random_vector(n: usize, rng: &mut impl Rng) -> CVector {
    CVector::from_fn(n, |_, _| c(normal(rng), normal(rng)))
}

pub fn random_real_vector(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    (0..n).map(|_| normal(rng)).collect()
}

pub fn random_matrix(n: usize, rng: &mut impl Rng) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| c(normal(rng), normal(rng)))
}

pub fn random_hermitian(n: usize, rng: &mut impl Rng) -> CMatrix {
    let g = random_matrix(n, rng);
    (&g + g.adjoint()) * c(0.5, 0.0)
}

pub fn random_unitary(n: usize, rng: &mut impl Rng) -> CMatrix {
    expi_hermitian(&random_hermitian(n, rng))
}

/// Orthogonal projection of the given rank onto a random subspace.
pub fn random_projection(n: usize, rank: usize, rng: &mut impl Rng) -> CMatrix {
    let eig = eigh(&random_hermitian(n, rng));
    let cols = eig.vectors.columns(0, rank.min(n));
    cols * cols.adjoint()
}

/// Hermitian matrix with spectrum drawn uniformly from `[lo, hi]`.
pub fn random_positive(n: usize, lo: f64, hi: f64, rng: &mut impl Rng) -> CMatrix {
    let u = random_unitary(n, rng);
    let d = CVector::from_fn(n, |_, _| c(rng.random_range(lo..hi), 0.0));
    &u * CMatrix::from_diagonal(&d) * u.adjoint()
}

pub fn random_unit_phase(rng: &mut impl Rng) -> C64 {
    C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))
}
