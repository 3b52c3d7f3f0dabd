//! Schwinger terms, the 2-cocycle identity and the projective multiplier of
//! the exponentiated normal ordered bilinears.

use super::quasifree::{normal_ordered_q, QuasiFreeRep};
use crate::error::{Error, Result};
use crate::fock::{FockOperator, FockVector};
use crate::linalg::{commutator, expi_hermitian, identity, operator_norm, principal_log_unitary, trace, CMatrix, C64};
use crate::oneparticle::OperatorMatrix;

/// Phase distance from `-1` below which the logarithm of `exp(iA) exp(iB)`
/// is refused.
pub const BRANCH_CUT_TOL: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct SchwingerResult {
    pub value: C64,
    pub p_minus: OperatorMatrix,
    pub a: OperatorMatrix,
    pub b: OperatorMatrix,
}

/// `S(A, B) = tr(P- A P+ B P- - P- B P+ A P-)`.
pub fn schwinger_term(a: &OperatorMatrix, b: &OperatorMatrix, p_minus: &OperatorMatrix) -> Result<SchwingerResult> {
    a.require_same_space(b)?;
    a.require_same_space(p_minus)?;
    let value = schwinger_value(a.entries(), b.entries(), p_minus.entries());
    Ok(SchwingerResult {
        value,
        p_minus: p_minus.clone(),
        a: a.clone(),
        b: b.clone(),
    })
}

pub(crate) fn schwinger_value(a: &CMatrix, b: &CMatrix, pm: &CMatrix) -> C64 {
    let pp = identity(pm.nrows()) - pm;
    trace(&(pm * a * &pp * b * pm - pm * b * &pp * a * pm))
}

/// Operator norm of `[hat q(A), hat q(B)] - hat q([A, B]) - S(A, B) 1`.
pub fn commutator_anomaly_check(a: &OperatorMatrix, b: &OperatorMatrix, rep: &QuasiFreeRep) -> Result<f64> {
    a.require_same_space(b)?;
    let qa = normal_ordered_q(a, rep)?;
    let qb = normal_ordered_q(b, rep)?;
    let ab = a.with_entries(commutator(a.entries(), b.entries()))?;
    let qab = normal_ordered_q(&ab, rep)?;
    let s = schwinger_value(a.entries(), b.entries(), rep.p_minus().entries());
    let defect = qa.commutator(&qb)?.sub(&qab)?.shift(-s);
    Ok(defect.operator_norm())
}

/// `|S([A,B],C) + S([B,C],A) + S([C,A],B)|`.
pub fn cocycle_check(a: &OperatorMatrix, b: &OperatorMatrix, c: &OperatorMatrix, p_minus: &OperatorMatrix) -> Result<f64> {
    a.require_same_space(b)?;
    a.require_same_space(c)?;
    a.require_same_space(p_minus)?;
    let (a, b, c, pm) = (a.entries(), b.entries(), c.entries(), p_minus.entries());
    let sum = schwinger_value(&commutator(a, b), c, pm)
        + schwinger_value(&commutator(b, c), a, pm)
        + schwinger_value(&commutator(c, a), b, pm);
    Ok(sum.norm())
}

#[derive(Clone, Debug)]
pub struct ProjectivePhase {
    /// Scalar with `hat Q(U) hat Q(V) hat Q(UV)^{-1} = chi 1`.
    pub chi: C64,
    /// Operator norm of `hat Q(U) hat Q(V) hat Q(UV)^{-1} - chi 1`.
    pub proportionality_residual: f64,
    /// `<Omega, hat Q(UV)^{-1} hat Q(U) hat Q(V) Omega>`, the same phase
    /// read off with the product in the opposite order.
    pub chi_reordered: C64,
    /// Principal `-i log(exp(iA) exp(iB))`.
    pub product_generator: CMatrix,
}

/// Projective multiplier of `U = exp(iA)`, `V = exp(iB)` in a fermionic
/// quasi-free representation, with `hat Q(exp(iX)) = exp(i hat q(X))`.
pub fn projective_phase(a: &OperatorMatrix, b: &OperatorMatrix, rep: &QuasiFreeRep) -> Result<ProjectivePhase> {
    a.require_same_space(b)?;
    a.require_hermitian()?;
    b.require_hermitian()?;
    let u = expi_hermitian(a.entries());
    let v = expi_hermitian(b.entries());
    let generator = principal_log_unitary(&(&u * &v), BRANCH_CUT_TOL)?;
    let c = a.with_entries(generator.clone())?;

    let qa = normal_ordered_q(a, rep)?.to_dense();
    let qb = normal_ordered_q(b, rep)?.to_dense();
    let qc = normal_ordered_q(&c, rep)?.to_dense();
    let big_u = expi_hermitian(&qa);
    let big_v = expi_hermitian(&qb);
    let big_w_inv = expi_hermitian(&(-qc));

    let product = &big_u * &big_v * &big_w_inv;
    let dim = product.nrows();
    let chi = trace(&product) / C64::new(dim as f64, 0.0);
    let proportionality_residual = operator_norm(&(&product - identity(dim) * chi));
    if !chi.norm().is_finite() {
        return Err(Error::VerificationFailed {
            what: "projective phase",
            residual: f64::INFINITY,
            tol: 0.0,
        });
    }

    let reordered = FockOperator::from_dense(rep.fock().clone(), &(&big_w_inv * &big_u * &big_v))?;
    let vacuum = FockVector::vacuum(rep.fock().clone());
    let chi_reordered = vacuum.inner(&reordered.apply(&vacuum)?);

    Ok(ProjectivePhase {
        chi,
        proportionality_residual,
        chi_reordered,
        product_generator: generator,
    })
}
