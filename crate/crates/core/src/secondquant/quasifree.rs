//! Quasi-free representations `pi_{P-}` of the field algebra and the normal
//! ordered bilinears built in them.

use std::sync::Arc;

use super::lift::check_modes;
use crate::error::{Error, Result};
use crate::fock::{annihilator, creator, FieldPair, FockOperator, FockSpace, Statistics};
use crate::linalg::{conj_vector, eigh, frobenius_norm, CMatrix, CVector, C64};
use crate::oneparticle::{OperatorMatrix, SpectralSplit};
use crate::par::Execution;

/// Imaginary parts below this count as a real projection.
const REAL_TOL: f64 = 1e-14;

/// `pi_{P-}` on a Fock space: creation and annihilation are swapped on the
/// range of `p_minus`.
///
/// The conjugation entering the swap has to commute with `P-`, otherwise the
/// holes are not orthogonal to the particles. For a real `P-` it is entrywise
/// conjugation in the declared basis; otherwise it is entrywise conjugation
/// in an orthonormal eigenbasis of `P-`.
#[derive(Clone, Debug)]
pub struct QuasiFreeRep {
    fock: Arc<FockSpace>,
    p_minus: OperatorMatrix,
    p_plus: OperatorMatrix,
    /// `P+ - P-`.
    grading: OperatorMatrix,
    /// Columns form the basis the conjugation is taken in; `None` is the
    /// declared basis.
    conjugation_basis: Option<CMatrix>,
}

impl QuasiFreeRep {
    pub fn new(fock: Arc<FockSpace>, p_minus: OperatorMatrix) -> Result<Self> {
        check_modes(&fock, p_minus.dim())?;
        p_minus.require_projection()?;
        let id = CMatrix::identity(p_minus.dim(), p_minus.dim());
        let p_plus = p_minus.with_entries(&id - p_minus.entries())?;
        let grading = p_minus.with_entries(p_plus.entries() - p_minus.entries())?;
        grading.require_grading()?;
        let real = p_minus.entries().iter().all(|z| z.im.abs() <= REAL_TOL);
        let conjugation_basis = (!real).then(|| eigh(p_minus.entries()).vectors);
        Ok(Self {
            fock,
            p_minus,
            p_plus,
            grading,
            conjugation_basis,
        })
    }

    /// The defining representation `pi_0`.
    pub fn defining(fock: Arc<FockSpace>) -> Result<Self> {
        let n = fock.modes();
        let zero = OperatorMatrix::from_matrix(CMatrix::zeros(n, n))?;
        Self::new(fock, zero)
    }

    /// Dirac-sea representation of a hermitian one-particle Hamiltonian.
    pub fn dirac_sea(fock: Arc<FockSpace>, split: &SpectralSplit) -> Result<Self> {
        Self::new(fock, split.p_minus.clone())
    }

    pub fn fock(&self) -> &Arc<FockSpace> {
        &self.fock
    }

    pub fn statistics(&self) -> Statistics {
        self.fock.statistics()
    }

    pub fn p_minus(&self) -> &OperatorMatrix {
        &self.p_minus
    }

    pub fn p_plus(&self) -> &OperatorMatrix {
        &self.p_plus
    }

    /// `F = P+ - P-`; it twists the star operation for bosons.
    pub fn grading(&self) -> &OperatorMatrix {
        &self.grading
    }

    pub fn modes(&self) -> usize {
        self.fock.modes()
    }

    /// The antiunitary involution used for holes. It commutes with `P-`.
    pub fn conjugate(&self, f: &CVector) -> CVector {
        match &self.conjugation_basis {
            None => conj_vector(f),
            Some(w) => w * conj_vector(&(w.adjoint() * f)),
        }
    }

    /// Whether the conjugation is entrywise in the declared basis.
    pub fn conjugates_entrywise(&self) -> bool {
        self.conjugation_basis.is_none()
    }

    /// `hat psi+(f) = psi+(P+ f) + psi(C P- f)` with `C` the conjugation.
    pub fn hat_creator(&self, f: &CVector, exec: Execution) -> Result<FockOperator> {
        check_modes(&self.fock, f.len())?;
        let plus = self.p_plus.entries() * f;
        let minus = self.conjugate(&(self.p_minus.entries() * f));
        creator(&self.fock, &plus, exec)?.add(&annihilator(&self.fock, &minus, exec)?)
    }

    /// `hat psi(f) = psi(P+ f) -+ psi+(C P- f)`, minus for bosons and
    /// plus for fermions.
    pub fn hat_annihilator(&self, f: &CVector, exec: Execution) -> Result<FockOperator> {
        check_modes(&self.fock, f.len())?;
        let plus = self.p_plus.entries() * f;
        let minus = self.conjugate(&(self.p_minus.entries() * f));
        let hole = creator(&self.fock, &minus, exec)?;
        let hole = match self.statistics() {
            Statistics::Boson => hole.scale(C64::new(-1.0, 0.0)),
            Statistics::Fermion => hole,
        };
        annihilator(&self.fock, &plus, exec)?.add(&hole)
    }

    /// `sum_{mn} A_{mn} hat psi+_m hat psi_n`, without normal ordering.
    pub(crate) fn bilinear(&self, a: &CMatrix, exec: Execution) -> Result<FockOperator> {
        check_modes(&self.fock, a.nrows())?;
        let n = self.modes();
        let terms = exec.map_range(n, |m| -> Result<Option<FockOperator>> {
            // hat psi is antilinear, so sum_n A_mn hat psi_n = hat psi(conj(row m))
            let row: CVector = CVector::from_iterator(n, a.row(m).iter().map(|z| z.conj()));
            if row.iter().all(|z| *z == C64::new(0.0, 0.0)) {
                return Ok(None);
            }
            let mut e = CVector::zeros(n);
            e[m] = C64::new(1.0, 0.0);
            let left = self.hat_creator(&e, Execution::Sequential)?;
            let right = self.hat_annihilator(&row, Execution::Sequential)?;
            left.mul(&right).map(Some)
        });
        let mut total = FockOperator::zero(self.fock.clone());
        for term in terms {
            if let Some(term) = term? {
                total = total.add(&term)?;
            }
        }
        Ok(total)
    }
}

/// `(hat psi(f), hat psi+(f))` in the representation `rep`.
pub fn quasifree_fields(rep: &QuasiFreeRep, f: &CVector) -> Result<FieldPair> {
    let exec = Execution::default();
    Ok(FieldPair {
        annihilator: rep.hat_annihilator(f, exec)?,
        creator: rep.hat_creator(f, exec)?,
    })
}

/// `hat q(A) = sum_{mn} A_{mn} (hat psi+_m hat psi_n - <Omega, hat psi+_m hat psi_n Omega>)`.
///
/// Only fermionic representations are accepted; bosonic normal ordering goes
/// through [`super::bogoliubov_normal_ordered_q`].
pub fn normal_ordered_q(a: &OperatorMatrix, rep: &QuasiFreeRep) -> Result<FockOperator> {
    if rep.statistics() != Statistics::Fermion {
        return Err(Error::Unsupported(
            "normal_ordered_q needs a fermionic representation; use bogoliubov_normal_ordered_q for bosons",
        ));
    }
    normal_ordered_any(a.entries(), rep, Execution::default())
}

/// Normal ordering for either statistics. On a truncated boson space the
/// result is exact only on states at least two below the cap.
pub(crate) fn normal_ordered_any(a: &CMatrix, rep: &QuasiFreeRep, exec: Execution) -> Result<FockOperator> {
    let raw = rep.bilinear(a, exec)?;
    let vev = raw.vacuum_expectation();
    Ok(raw.shift(-vev))
}

/// Hilbert–Schmidt norms of the off-diagonal blocks `(P- A P+, P+ A P-)`.
pub fn offdiagonal_hs_norms(a: &OperatorMatrix, p_minus: &OperatorMatrix) -> Result<(f64, f64)> {
    a.require_same_space(p_minus)?;
    let pm = p_minus.entries();
    let pp = CMatrix::identity(pm.nrows(), pm.ncols()) - pm;
    let a = a.entries();
    Ok((frobenius_norm(&(pm * a * &pp)), frobenius_norm(&(&pp * a * pm))))
}
