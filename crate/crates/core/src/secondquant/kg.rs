//! Boson quasi-free machinery on the Klein–Gordon space `h0 (+) h0`.
//!
//! [`KgRepZero`] is the representation whose star-twisting grading equals
//! `J`, i.e. `P-^{(0)} = (1 - J)/2`. There `q` maps J-self-adjoint operators
//! to hermitian ones. The physical representation is reached through the
//! Bogoliubov transform, where `hat K = diag(B, -B)` and `F` are diagonal.

use std::sync::Arc;

use super::lift::check_modes;
use super::quasifree::QuasiFreeRep;
use crate::error::{Error, Result};
use crate::fock::{FockOperator, FockSpace, Statistics};
use crate::linalg::{c, eigh, hermiticity_residual, identity, inverse, operator_norm, CMatrix, CVector, C64};
use crate::oneparticle::{kg_grading, OperatorMatrix};
use crate::par::Execution;

/// Margin below the cap on which products of two quasi-free boson fields
/// are computed without truncation.
pub const PAIR_MARGIN: u32 = 2;

fn require_bosons(fock: &FockSpace) -> Result<()> {
    if fock.statistics() != Statistics::Boson {
        return Err(Error::Unsupported("Klein-Gordon representations need a boson Fock space"));
    }
    Ok(())
}

/// `pi_{P-^{(0)}}` with `P-^{(0)} = (1 - J)/2`.
#[derive(Clone, Debug)]
pub struct KgRepZero {
    rep: QuasiFreeRep,
    j: OperatorMatrix,
}

/// Builds the reference representation for the grading `j`.
pub fn kg_rep_zero(j: &OperatorMatrix, fock: &Arc<FockSpace>) -> Result<KgRepZero> {
    KgRepZero::new(j, fock)
}

impl KgRepZero {
    pub fn new(j: &OperatorMatrix, fock: &Arc<FockSpace>) -> Result<Self> {
        require_bosons(fock)?;
        j.require_grading()?;
        check_modes(fock, j.dim())?;
        let id = identity(j.dim());
        let p_minus = j.with_entries((id - j.entries()) * c(0.5, 0.0))?;
        Ok(Self {
            rep: QuasiFreeRep::new(fock.clone(), p_minus)?,
            j: j.clone(),
        })
    }

    pub fn rep(&self) -> &QuasiFreeRep {
        &self.rep
    }

    pub fn j(&self) -> &OperatorMatrix {
        &self.j
    }

    pub fn fock(&self) -> &Arc<FockSpace> {
        self.rep.fock()
    }

    /// `q(A) = sum A_{mn} psi+_m psi_n` with the fields of this representation.
    pub fn q(&self, a: &OperatorMatrix) -> Result<FockOperator> {
        self.rep.bilinear(a.entries(), Execution::default())
    }

    /// `Q(exp(iA)) = exp(i q(A))` for a generator `A`.
    pub fn big_q(&self, generator: &OperatorMatrix) -> Result<FockOperator> {
        let q = self.q(generator)?.to_dense();
        FockOperator::from_dense(self.fock().clone(), &(q * c(0.0, 1.0)).exp())
    }

    fn protected(&self) -> Vec<usize> {
        self.fock().protected_indices(PAIR_MARGIN)
    }

    /// `||q(A)* - q(J A* J)||` on the protected subspace. For hermitian `A`
    /// the reflected argument is `J A J`.
    pub fn q_adjoint_residual(&self, a: &OperatorMatrix) -> Result<f64> {
        let j = self.j.entries();
        let reflected = a.with_entries(j * a.entries().adjoint() * j)?;
        let defect = self.q(a)?.adjoint().sub(&self.q(&reflected)?)?;
        Ok(operator_norm(&defect.compress(&self.protected())))
    }

    /// `||Q(U)* - Q(J U* J)||` on the protected subspace, for `U = exp(iA)`.
    pub fn big_q_adjoint_residual(&self, generator: &OperatorMatrix) -> Result<f64> {
        let j = self.j.entries();
        // J exp(iA)* J = exp(-i J A* J)
        let reflected = generator.with_entries(-(j * generator.entries().adjoint() * j))?;
        let defect = self.big_q(generator)?.adjoint().sub(&self.big_q(&reflected)?)?;
        Ok(operator_norm(&defect.compress(&self.protected())))
    }

    /// `||q(A)* - q(A)||` on the protected subspace.
    pub fn q_hermiticity_residual(&self, a: &OperatorMatrix) -> Result<f64> {
        let q = self.q(a)?;
        Ok(hermiticity_residual(&q.compress(&self.protected())))
    }
}

/// Normal ordered `hat q(K)` in the diagonal (hatted) picture.
#[derive(Clone, Debug)]
pub struct BogoliubovNormalOrdered {
    /// Diagonal in the occupation basis of `mode_basis`.
    pub op: FockOperator,
    /// `|lambda|` per hatted mode: first the `F = +1` block, then `F = -1`.
    pub mode_energies: Vec<f64>,
    /// Eigenvalues of `hat K` in the same order.
    pub mode_eigenvalues: Vec<f64>,
    /// Columns are the eigenvectors of `hat K` on `h_KG`.
    pub mode_basis: CMatrix,
}

/// `hat q(K) = sum_modes |lambda| n_mode` where `lambda` runs over the
/// spectrum of `hat K = T K T^{-1}` and `P- = (1 - F)/2` flips the sign on the
/// negative-frequency block.
pub fn bogoliubov_normal_ordered_q(
    k: &OperatorMatrix,
    t: &OperatorMatrix,
    f: &OperatorMatrix,
    fock: &Arc<FockSpace>,
) -> Result<BogoliubovNormalOrdered> {
    require_bosons(fock)?;
    k.require_same_space(t)?;
    k.require_same_space(f)?;
    f.require_grading()?;
    check_modes(fock, k.dim())?;
    let k_hat = t.entries() * k.entries() * inverse(t.entries())?;
    let f = f.entries();
    let commutes = operator_norm(&(&k_hat * f - f * &k_hat));
    if commutes > 1e-10 {
        return Err(Error::VerificationFailed {
            what: "[hat K, F] = 0",
            residual: commutes,
            tol: 1e-10,
        });
    }
    let herm = hermiticity_residual(&k_hat);
    if herm > 1e-10 {
        return Err(Error::VerificationFailed {
            what: "hat K hermitian",
            residual: herm,
            tol: 1e-10,
        });
    }

    // Diagonalize inside each F block so every hatted mode has a definite grading.
    let n = k.dim();
    let mut modes: Vec<(f64, f64, CVector)> = Vec::with_capacity(n);
    for sign in [1.0, -1.0] {
        let block_projector = (identity(n) + f * c(sign, 0.0)) * c(0.5, 0.0);
        let basis = eigh(&block_projector);
        let range: Vec<CVector> = basis
            .values
            .iter()
            .zip(basis.vectors.column_iter())
            .filter(|(v, _)| **v > 0.5)
            .map(|(_, col)| col.into_owned())
            .collect();
        if range.is_empty() {
            continue;
        }
        let iso = CMatrix::from_columns(&range);
        let block = iso.adjoint() * &k_hat * &iso;
        let eig = eigh(&block);
        for (value, vec) in eig.values.iter().zip(eig.vectors.column_iter()) {
            let energy = sign * value;
            if !(energy > 0.0) {
                return Err(Error::NotPositiveDefinite(energy));
            }
            modes.push((*value, energy, &iso * vec));
        }
    }

    let mode_eigenvalues: Vec<f64> = modes.iter().map(|m| m.0).collect();
    let mode_energies: Vec<f64> = modes.iter().map(|m| m.1).collect();
    let mode_basis = CMatrix::from_columns(&modes.iter().map(|m| m.2.clone()).collect::<Vec<_>>());
    let values: Vec<C64> = (0..fock.dim())
        .map(|s| {
            let e: f64 = mode_energies
                .iter()
                .enumerate()
                .map(|(mode, w)| w * fock.occupation(s, mode) as f64)
                .sum();
            c(e, 0.0)
        })
        .collect();
    Ok(BogoliubovNormalOrdered {
        op: FockOperator::diagonal(fock.clone(), &values)?,
        mode_energies,
        mode_eigenvalues,
        mode_basis,
    })
}

/// Scalar multiple of the identity found in `[hat psi(f), hat psi+(g)]`.
#[derive(Clone, Copy, Debug)]
pub struct ProbeResult {
    pub value: C64,
    /// Distance from `value * 1` on the protected subspace.
    pub residual: f64,
}

/// `[hat psi(f), hat psi+(g)]` for `hat psi+(g) = psi+(T g)`,
/// `hat psi(f) = psi(T^{-1} f)`, with `psi` the fields of [`KgRepZero`].
pub fn boson_commutator_probe(t: &OperatorMatrix, f: &CVector, g: &CVector, fock: &Arc<FockSpace>) -> Result<ProbeResult> {
    let rep0 = probe_rep(t, fock)?;
    let t_inv = inverse(t.entries())?;
    probe_with(&rep0, t.entries(), &t_inv, f, g)
}

fn probe_rep(t: &OperatorMatrix, fock: &Arc<FockSpace>) -> Result<KgRepZero> {
    if !t.dim().is_multiple_of(2) {
        return Err(Error::DimensionMismatch {
            expected: t.dim() + 1,
            found: t.dim(),
        });
    }
    let j = t.with_entries(kg_grading(t.dim() / 2))?;
    KgRepZero::new(&j, fock)
}

fn probe_with(rep0: &KgRepZero, t: &CMatrix, t_inv: &CMatrix, f: &CVector, g: &CVector) -> Result<ProbeResult> {
    let exec = Execution::default();
    let hat_psi = rep0.rep().hat_annihilator(&(t_inv * f), exec)?;
    let hat_psi_dag = rep0.rep().hat_creator(&(t * g), exec)?;
    let protected = rep0.fock().protected_indices(PAIR_MARGIN);
    if protected.is_empty() {
        return Err(Error::CapOverflow {
            mode: 0,
            cap: rep0.fock().cap(),
        });
    }
    let comm = hat_psi.commutator(&hat_psi_dag)?.compress(&protected);
    let value = comm.trace() / c(protected.len() as f64, 0.0);
    let residual = operator_norm(&(comm - identity(protected.len()) * value));
    Ok(ProbeResult { value, residual })
}

/// The sesquilinear form `M` with `[hat psi(f), hat psi+(g)] = (f, M g)`.
#[derive(Clone, Debug)]
pub struct CommutatorForm {
    pub m: CMatrix,
    /// Worst distance from a multiple of the identity over all basis pairs.
    pub max_residual: f64,
    pub hermiticity_residual: f64,
    /// Smallest eigenvalue of `(M + M*)/2`.
    pub min_eigenvalue: f64,
}

impl CommutatorForm {
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual <= tol
    }

    pub fn is_positive(&self, tol: f64) -> bool {
        self.is_hermitian(tol) && self.min_eigenvalue > tol
    }
}

/// Assembles `M` by probing every pair of basis vectors.
pub fn commutator_form(t: &OperatorMatrix, fock: &Arc<FockSpace>) -> Result<CommutatorForm> {
    let rep0 = probe_rep(t, fock)?;
    let t_inv = inverse(t.entries())?;
    let n = t.dim();
    let basis = |k: usize| {
        let mut e = CVector::zeros(n);
        e[k] = c(1.0, 0.0);
        e
    };
    let entries = Execution::default().map_range(n * n, |idx| {
        let (i, j) = (idx / n, idx % n);
        probe_with(&rep0, t.entries(), &t_inv, &basis(i), &basis(j))
    });
    let mut m = CMatrix::zeros(n, n);
    let mut max_residual = 0.0_f64;
    for (idx, probe) in entries.into_iter().enumerate() {
        let probe = probe?;
        m[(idx / n, idx % n)] = probe.value;
        max_residual = max_residual.max(probe.residual);
    }
    let hermitian_part = (&m + m.adjoint()) * c(0.5, 0.0);
    Ok(CommutatorForm {
        hermiticity_residual: hermiticity_residual(&m),
        min_eigenvalue: eigh(&hermitian_part).values[0],
        m,
        max_residual,
    })
}
