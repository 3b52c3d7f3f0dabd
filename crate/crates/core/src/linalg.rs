//! Dense complex linear algebra shared by the one-particle and Fock layers.
//!
//! Matrix functions (square roots, exponentials, logarithms) go through a full
//! eigendecomposition. Dimensions here are at most a few hundred, so exactness
//! wins over speed.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const I: C64 = C64::new(0.0, 1.0);

/// Largest dimension for which operator norms use a full SVD; above it a
/// seeded power iteration is used.
pub const SVD_NORM_LIMIT: usize = 256;

const POWER_ITERATION_SEED: u64 = 0x5eed_f0c4;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b + b * a
}

/// Entrywise complex conjugate in the working basis.
pub fn conj_vector(v: &CVector) -> CVector {
    v.map(|z| z.conj())
}

pub fn trace(m: &CMatrix) -> C64 {
    m.diagonal().iter().sum()
}

/// Standard inner product, conjugate-linear in the first argument.
pub fn inner(f: &CVector, g: &CVector) -> C64 {
    f.dotc(g)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn frobenius_norm(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Operator norm (largest singular value).
pub fn operator_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    if m.nrows().max(m.ncols()) <= SVD_NORM_LIMIT {
        m.singular_values().max()
    } else {
        power_iteration_norm(m)
    }
}

fn power_iteration_norm(m: &CMatrix) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(POWER_ITERATION_SEED);
    let n = m.ncols();
    let mut v = CVector::from_fn(n, |_, _| {
        c(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng))
    });
    let gram = m.adjoint() * m;
    let mut estimate = 0.0_f64;
    for _ in 0..1000 {
        let norm = v.norm();
        if norm == 0.0 {
            return 0.0;
        }
        v /= c(norm, 0.0);
        let w = &gram * &v;
        let next = v.dotc(&w).re.max(0.0);
        v = w;
        if (next - estimate).abs() <= 1e-15 * next.max(1.0) {
            estimate = next;
            break;
        }
        estimate = next;
    }
    estimate.sqrt()
}

/// Eigendecomposition of a hermitian matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermitianEigen {
    /// Rebuilds `V diag(g(values)) V*`.
    pub fn map(&self, g: impl Fn(f64) -> C64) -> CMatrix {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for (j, &lambda) in self.values.iter().enumerate() {
            let w = g(lambda);
            for i in 0..n {
                scaled[(i, j)] *= w;
            }
        }
        scaled * self.vectors.adjoint()
    }
}

pub fn eigh(m: &CMatrix) -> HermitianEigen {
    let n = m.nrows();
    if n == 0 {
        return HermitianEigen {
            values: Vec::new(),
            vectors: CMatrix::zeros(0, 0),
        };
    }
    // symmetrize so round-off in the input cannot leak into the solver
    let h = (m + m.adjoint()) * c(0.5, 0.0);
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    HermitianEigen { values, vectors }
}

pub fn eigvalsh(m: &CMatrix) -> Vec<f64> {
    eigh(m).values
}

pub fn hermiticity_residual(m: &CMatrix) -> f64 {
    operator_norm(&(m - m.adjoint()))
}

/// `exp(i H)` for hermitian `H`.
pub fn expi_hermitian(h: &CMatrix) -> CMatrix {
    eigh(h).map(|lambda| C64::from_polar(1.0, lambda))
}

/// Principal logarithm of a unitary `w`, returned as the hermitian `C` with
/// `w = exp(i C)` and spectrum of `C` in `(-pi, pi)`.
///
/// Fails when an eigenvalue of `w` lies within `cut_tol` (in phase) of `-1`.
pub fn principal_log_unitary(w: &CMatrix, cut_tol: f64) -> Result<CMatrix> {
    let n = w.nrows();
    let (q, t) = w.clone().schur().unpack();
    let mut phases = Vec::with_capacity(n);
    for k in 0..n {
        let lambda = t[(k, k)];
        let phase = lambda.arg();
        if std::f64::consts::PI - phase.abs() < cut_tol {
            return Err(Error::BranchCut {
                re: lambda.re,
                im: lambda.im,
            });
        }
        phases.push(phase);
    }
    let mut scaled = q.clone();
    for (j, &phase) in phases.iter().enumerate() {
        for i in 0..n {
            scaled[(i, j)] *= c(phase, 0.0);
        }
    }
    let log = scaled * q.adjoint();
    Ok((&log + log.adjoint()) * c(0.5, 0.0))
}

pub fn inverse(m: &CMatrix) -> Result<CMatrix> {
    m.clone().try_inverse().ok_or(Error::Singular)
}

/// Block matrix `[[a, b], [c, d]]` from four equally sized square blocks.
pub fn block2(a: &CMatrix, b: &CMatrix, cc: &CMatrix, d: &CMatrix) -> CMatrix {
    let n = a.nrows();
    let mut out = CMatrix::zeros(2 * n, 2 * n);
    out.view_mut((0, 0), (n, n)).copy_from(a);
    out.view_mut((0, n), (n, n)).copy_from(b);
    out.view_mut((n, 0), (n, n)).copy_from(cc);
    out.view_mut((n, n), (n, n)).copy_from(d);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_norm_of_diagonal() {
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.0, 0.0), c(0.0, -3.0)]));
        assert!((operator_norm(&m) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn power_iteration_matches_svd() {
        let n = 40;
        let m = CMatrix::from_fn(n, n, |i, j| c(((i * 7 + j * 3) % 11) as f64 - 5.0, (i as f64 - j as f64) * 0.1));
        let svd = m.singular_values().max();
        assert!((power_iteration_norm(&m) - svd).abs() < 1e-8 * svd);
    }

    #[test]
    fn log_inverts_exp() {
        let h = CMatrix::from_row_slice(2, 2, &[c(0.3, 0.0), c(0.1, -0.2), c(0.1, 0.2), c(-0.5, 0.0)]);
        let w = expi_hermitian(&h);
        let back = principal_log_unitary(&w, 1e-8).unwrap();
        assert!(max_abs(&(back - h)) < 1e-12);
    }

    #[test]
    fn log_rejects_minus_one() {
        let w = CMatrix::from_diagonal(&CVector::from_vec(vec![c(-1.0, 0.0), c(1.0, 0.0)]));
        assert!(matches!(principal_log_unitary(&w, 1e-8), Err(Error::BranchCut { .. })));
    }
}
