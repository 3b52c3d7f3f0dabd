use super::OperatorMatrix;
use crate::error::Result;
use crate::linalg::{eigh, frobenius_norm, identity, CMatrix};

/// Eigenvalues in `[-zero_tol, zero_tol]` count as non-negative.
pub const DEFAULT_ZERO_TOL: f64 = 1e-10;

/// Splitting of a hermitian operator into its negative and non-negative
/// spectral subspaces.
#[derive(Clone, Debug)]
pub struct SpectralSplit {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Columns are the eigenvectors, in the order of `eigenvalues`.
    pub eigenvectors: CMatrix,
    pub p_minus: OperatorMatrix,
    pub p_plus: OperatorMatrix,
    pub zero_tol: f64,
}

impl SpectralSplit {
    /// Number of eigenvalues below `-zero_tol`.
    pub fn negative_count(&self) -> usize {
        self.eigenvalues.iter().filter(|&&e| e < -self.zero_tol).count()
    }

    /// Eigenvalue of smallest magnitude.
    pub fn gap(&self) -> f64 {
        self.eigenvalues.iter().fold(f64::INFINITY, |acc, e| acc.min(e.abs()))
    }
}

pub fn spectral_split(h: &OperatorMatrix, zero_tol: f64) -> Result<SpectralSplit> {
    h.require_hermitian()?;
    let eig = eigh(h.entries());
    let negative = eig.values.iter().filter(|&&e| e < -zero_tol).count();
    let sea = eig.vectors.columns(0, negative);
    let p_minus = sea * sea.adjoint();
    let p_plus = identity(h.dim()) - &p_minus;
    Ok(SpectralSplit {
        eigenvalues: eig.values,
        eigenvectors: eig.vectors.clone(),
        p_minus: h.with_entries(p_minus)?,
        p_plus: h.with_entries(p_plus)?,
        zero_tol,
    })
}

/// Hilbert–Schmidt norm of `p1 - p2`.
pub fn hs_distance(p1: &OperatorMatrix, p2: &OperatorMatrix) -> Result<f64> {
    p1.require_same_space(p2)?;
    p1.require_projection()?;
    p2.require_projection()?;
    Ok(frobenius_norm(&(p1.entries() - p2.entries())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, max_abs, operator_norm};
    use crate::sampling::{random_hermitian, random_projection, rng};

    fn op(rows: usize, data: &[f64]) -> OperatorMatrix {
        let m = CMatrix::from_row_slice(rows, rows, &data.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>());
        OperatorMatrix::from_matrix(m).unwrap()
    }

    #[test]
    fn diagonal_split() {
        let s = spectral_split(&op(2, &[-1.0, 0.0, 0.0, 2.0]), DEFAULT_ZERO_TOL).unwrap();
        assert!(max_abs(&(s.p_minus.entries() - op(2, &[1.0, 0.0, 0.0, 0.0]).entries())) < 1e-15);
    }

    #[test]
    fn identity_has_no_sea() {
        let s = spectral_split(&op(3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]), DEFAULT_ZERO_TOL).unwrap();
        assert_eq!(max_abs(s.p_minus.entries()), 0.0);
    }

    #[test]
    fn zero_modes_go_to_the_positive_side() {
        let s = spectral_split(&op(2, &[0.0, 0.0, 0.0, -1e-12]), DEFAULT_ZERO_TOL).unwrap();
        assert_eq!(s.negative_count(), 0);
    }

    #[test]
    fn pauli_x_split() {
        let s = spectral_split(&op(2, &[0.0, 1.0, 1.0, 0.0]), DEFAULT_ZERO_TOL).unwrap();
        let expected = op(2, &[0.5, -0.5, -0.5, 0.5]);
        assert!(max_abs(&(s.p_minus.entries() - expected.entries())) < 1e-14);
    }

    #[test]
    fn split_invariants_on_random_hermitian() {
        let mut r = rng(11);
        for n in 1..7 {
            let h = OperatorMatrix::from_matrix(random_hermitian(n, &mut r)).unwrap();
            let s = spectral_split(&h, DEFAULT_ZERO_TOL).unwrap();
            let (pm, pp) = (s.p_minus.entries(), s.p_plus.entries());
            assert!(operator_norm(&(pm * pm - pm)) <= 1e-12);
            assert!(operator_norm(&(pm - pm.adjoint())) <= 1e-12);
            assert!(operator_norm(&(pm * pp)) <= 1e-12);
            assert!(operator_norm(&(pm + pp - identity(n))) <= 1e-12);
            assert!(operator_norm(&(pm * h.entries() - h.entries() * pm)) <= 1e-10);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(spectral_split(&OperatorMatrix::from_matrix(m).unwrap(), DEFAULT_ZERO_TOL).is_err());
    }

    #[test]
    fn hs_distance_examples() {
        let p1 = op(2, &[1.0, 0.0, 0.0, 0.0]);
        let p2 = op(2, &[0.0, 0.0, 0.0, 1.0]);
        assert_eq!(hs_distance(&p1, &p1).unwrap(), 0.0);
        assert!((hs_distance(&p1, &p2).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert!(hs_distance(&p1, &op(2, &[2.0, 0.0, 0.0, 0.0])).is_err());
        assert!(hs_distance(&p1, &op(1, &[1.0])).is_err());
    }

    #[test]
    fn hs_distance_symmetry_and_triangle() {
        let mut r = rng(5);
        for _ in 0..50 {
            let ps: Vec<OperatorMatrix> = (0..3)
                .map(|k| OperatorMatrix::from_matrix(random_projection(5, 1 + k, &mut r)).unwrap())
                .collect();
            let d01 = hs_distance(&ps[0], &ps[1]).unwrap();
            assert_eq!(d01, hs_distance(&ps[1], &ps[0]).unwrap());
            let d12 = hs_distance(&ps[1], &ps[2]).unwrap();
            let d02 = hs_distance(&ps[0], &ps[2]).unwrap();
            assert!(d02 <= d01 + d12 + 1e-12);
        }
    }
}
