//! Indefinite-metric structure of the Klein–Gordon system: J-self-adjoint
//! generators, J-unitary transformations and the Bogoliubov transform that
//! splits `K` into positive and negative frequency blocks.

use super::OperatorMatrix;
use crate::error::{Error, Result};
use crate::linalg::{block2, c, eigh, identity, inverse, operator_norm, CMatrix, I};

/// Residual bound for the Bogoliubov identities.
pub const BOGOLIUBOV_TOL: f64 = 1e-10;

/// `J = [[0, -i], [i, 0]]` on `h0 (+) h0` with `dim h0 = n`.
pub fn kg_grading(n: usize) -> CMatrix {
    let zero = CMatrix::zeros(n, n);
    let id = identity(n);
    block2(&zero, &(&id * -I), &(&id * I), &zero)
}

/// `K = [[C, i], [-i B^2, C]]` on `h0 (+) h0`.
pub fn klein_gordon_generator(b2: &OperatorMatrix, cc: &OperatorMatrix) -> Result<OperatorMatrix> {
    b2.require_same_space(cc)?;
    let n = b2.dim();
    let id = identity(n);
    let k = block2(cc.entries(), &(&id * I), &(b2.entries() * -I), cc.entries());
    OperatorMatrix::from_matrix(k)
}

/// `||K* - J K J|| <= tol`.
pub fn is_j_selfadjoint(k: &OperatorMatrix, j: &OperatorMatrix, tol: f64) -> Result<bool> {
    k.require_same_space(j)?;
    j.require_grading()?;
    let (k, j) = (k.entries(), j.entries());
    Ok(operator_norm(&(k.adjoint() - j * k * j)) <= tol)
}

/// `||U^{-1} - J U* J|| <= tol`, i.e. `U` preserves `(f, J g)`.
pub fn is_j_unitary(u: &OperatorMatrix, j: &OperatorMatrix, tol: f64) -> Result<bool> {
    u.require_same_space(j)?;
    j.require_grading()?;
    let u_inv = inverse(u.entries())?;
    let (u, j) = (u.entries(), j.entries());
    Ok(operator_norm(&(u_inv - j * u.adjoint() * j)) <= tol)
}

/// Result of [`bogoliubov_transform`].
#[derive(Clone, Debug)]
pub struct Bogoliubov {
    /// `B = (B^2)^{1/2}` on `h0`.
    pub b: OperatorMatrix,
    pub k: OperatorMatrix,
    pub j: OperatorMatrix,
    pub t: OperatorMatrix,
    pub t_inv: OperatorMatrix,
    /// `diag(1, -1)`.
    pub f: OperatorMatrix,
    /// `T K T^{-1}`, equal to `diag(B, -B)`.
    pub k_hat: OperatorMatrix,
    /// Sign with `T^{-1} = sigma J T* F`.
    pub sigma: i8,
    pub diagonalization_residual: f64,
    pub sigma_residual: f64,
}

/// Bogoliubov transform of the `C = 0` Klein–Gordon generator built from a
/// strictly positive `B^2`.
///
/// `T = (1/sqrt 2) [[B^{1/2}, i B^{-1/2}], [B^{1/2}, -i B^{-1/2}]]`. The sign
/// relating `T^{-1}` and `J T* F` is measured, not assumed.
pub fn bogoliubov_transform(b2: &OperatorMatrix) -> Result<Bogoliubov> {
    b2.require_hermitian()?;
    let eig = eigh(b2.entries());
    let min = eig.values.first().copied().unwrap_or(0.0);
    if !(min > 0.0) {
        return Err(Error::NotPositiveDefinite(min));
    }
    let n = b2.dim();
    let b = eig.map(|x| c(x.sqrt(), 0.0));
    let b_half = eig.map(|x| c(x.powf(0.25), 0.0));
    let b_minus_half = eig.map(|x| c(x.powf(-0.25), 0.0));

    let k = klein_gordon_generator(b2, &b2.with_entries(CMatrix::zeros(n, n))?)?;
    let zero = CMatrix::zeros(n, n);
    let id = identity(n);
    let j = kg_grading(n);
    let f = block2(&id, &zero, &zero, &(-&id));
    let scale = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let t = block2(&b_half, &(&b_minus_half * I), &b_half, &(&b_minus_half * -I)) * scale;
    let t_inv = inverse(&t)?;

    let k_hat = &t * k.entries() * &t_inv;
    let target = block2(&b, &zero, &zero, &(-&b));
    let diagonalization_residual = operator_norm(&(&k_hat - &target));
    if diagonalization_residual > BOGOLIUBOV_TOL {
        return Err(Error::VerificationFailed {
            what: "T K T^-1 = diag(B, -B)",
            residual: diagonalization_residual,
            tol: BOGOLIUBOV_TOL,
        });
    }

    let jtf = &j * t.adjoint() * &f;
    let plus = operator_norm(&(&t_inv - &jtf));
    let minus = operator_norm(&(&t_inv + &jtf));
    let (sigma, sigma_residual) = if plus <= minus { (1, plus) } else { (-1, minus) };
    if sigma_residual > BOGOLIUBOV_TOL {
        return Err(Error::VerificationFailed {
            what: "T^-1 = sigma J T* F",
            residual: sigma_residual,
            tol: BOGOLIUBOV_TOL,
        });
    }

    Ok(Bogoliubov {
        b: b2.with_entries(b)?,
        k: k.clone(),
        j: k.with_entries(j)?,
        t: k.with_entries(t)?,
        t_inv: k.with_entries(t_inv)?,
        f: k.with_entries(f)?,
        k_hat: k.with_entries(k_hat)?,
        sigma,
        diagonalization_residual,
        sigma_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{expi_hermitian, max_abs, CVector};
    use crate::oneparticle::{build_klein_gordon_1d, LatticeConfig, LatticeModel};
    use crate::sampling::{random_hermitian, random_positive, rng};

    fn scalar(x: f64) -> OperatorMatrix {
        OperatorMatrix::from_matrix(CMatrix::from_element(1, 1, c(x, 0.0))).unwrap()
    }

    #[test]
    fn scalar_transform() {
        let bog = bogoliubov_transform(&scalar(1.0)).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let expected = CMatrix::from_row_slice(2, 2, &[c(s, 0.0), c(0.0, s), c(s, 0.0), c(0.0, -s)]);
        assert!(max_abs(&(bog.t.entries() - expected)) < 1e-15);
        let diag = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.0, 0.0), c(-1.0, 0.0)]));
        assert!(max_abs(&(bog.k_hat.entries() - diag)) < 1e-14);
        assert_eq!(bog.sigma, -1);
    }

    #[test]
    fn spectrum_maps_to_square_roots() {
        let b2 = OperatorMatrix::from_matrix(CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.0, 0.0), c(4.0, 0.0)]))).unwrap();
        let bog = bogoliubov_transform(&b2).unwrap();
        let levels = eigh(bog.k_hat.entries()).values;
        let expected = [-2.0, -1.0, 1.0, 2.0];
        for (a, b) in levels.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn f_is_a_grading() {
        let mut r = rng(3);
        let b2 = OperatorMatrix::from_matrix(random_positive(3, 0.5, 3.0, &mut r)).unwrap();
        let bog = bogoliubov_transform(&b2).unwrap();
        let f = bog.f.entries();
        assert_eq!(f * f, identity(6));
        assert_eq!(f.adjoint(), *f);
        assert!(bog.diagonalization_residual <= 1e-10 && bog.sigma_residual <= 1e-10);
    }

    #[test]
    fn rejects_non_positive() {
        assert!(matches!(bogoliubov_transform(&scalar(0.0)), Err(Error::NotPositiveDefinite(_))));
        assert!(matches!(bogoliubov_transform(&scalar(-2.0)), Err(Error::NotPositiveDefinite(_))));
    }

    #[test]
    fn j_structure_of_klein_gordon() {
        let mut cfg = LatticeConfig::free(LatticeModel::KleinGordon1d, 3, 1.0, 1.0);
        cfg.phi = vec![0.2, -0.1, 0.4];
        cfg.vec_a = vec![0.3, 0.0, -0.2];
        let kg = build_klein_gordon_1d(&cfg).unwrap();
        assert!(is_j_selfadjoint(&kg.k, &kg.j, 1e-12).unwrap());

        // K is not hermitian, so this needs the general matrix exponential
        let u = (kg.k.entries() * c(0.0, 0.05)).exp();
        let u = OperatorMatrix::from_matrix(u).unwrap();
        assert!(is_j_unitary(&u, &kg.j, 1e-10).unwrap());

        let id = OperatorMatrix::from_matrix(identity(6)).unwrap();
        assert!(is_j_selfadjoint(&id, &kg.j, 0.0).unwrap());
    }

    #[test]
    fn j_checks_reject_non_gradings() {
        let mut r = rng(1);
        let h = OperatorMatrix::from_matrix(random_hermitian(2, &mut r)).unwrap();
        assert!(is_j_selfadjoint(&h, &h, 1e-10).is_err());
        let u = OperatorMatrix::from_matrix(expi_hermitian(h.entries())).unwrap();
        let sx = OperatorMatrix::from_matrix(CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])).unwrap();
        assert!(is_j_unitary(&u, &sx, 1e-10).is_ok());
        let singular = OperatorMatrix::from_matrix(CMatrix::zeros(2, 2)).unwrap();
        assert!(matches!(is_j_unitary(&singular, &sx, 1e-10), Err(Error::Singular)));
    }
}
