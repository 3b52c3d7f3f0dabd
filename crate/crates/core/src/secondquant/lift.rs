//! The additive lift `q` and multiplicative lift `Q` of one-particle
//! operators to the Fock space in the defining representation.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fock::{apply_creator, FockOperator, FockSpace, FockVector};
use crate::linalg::{inverse, trace, CMatrix, CVector, C64};
use crate::oneparticle::OperatorMatrix;
use crate::par::Execution;

use crate::fock::{Statistics, Step};

pub(crate) fn check_modes(fock: &FockSpace, dim: usize) -> Result<()> {
    if fock.modes() != dim {
        return Err(Error::DimensionMismatch {
            expected: fock.modes(),
            found: dim,
        });
    }
    Ok(())
}

/// `sum_{jk} x_{jk} psi+_j psi_k` assembled directly from occupation steps.
pub(crate) fn bilinear(fock: &Arc<FockSpace>, x: &CMatrix, exec: Execution) -> Result<FockOperator> {
    check_modes(fock, x.nrows())?;
    let n = fock.modes();
    FockOperator::from_columns(fock.clone(), exec, |s| {
        let mut column = Vec::new();
        for k in 0..n {
            let (mid, a1) = match fock.lower(s, k) {
                Step::To(t, amp) => (t, amp),
                _ => continue,
            };
            for j in 0..n {
                let coeff = x[(j, k)];
                if coeff == C64::new(0.0, 0.0) {
                    continue;
                }
                if let Step::To(t, a2) = fock.raise(mid, j) {
                    column.push((t, coeff * (a1 * a2)));
                }
            }
        }
        column
    })
}

/// `q(A) = sum_{mn} A_{mn} psi+_m psi_n`.
pub fn q_of(a: &OperatorMatrix, fock: &Arc<FockSpace>) -> Result<FockOperator> {
    bilinear(fock, a.entries(), Execution::default())
}

/// Particle number operator `q(1)`.
pub fn number_operator(fock: &Arc<FockSpace>) -> Result<FockOperator> {
    let values: Vec<C64> = (0..fock.dim())
        .map(|s| C64::new(fock.particle_number(s) as f64, 0.0))
        .collect();
    FockOperator::diagonal(fock.clone(), &values)
}

/// `Q(U)`: fixes the vacuum and maps `f_1 ^ ... ^ f_N` to `Uf_1 ^ ... ^ Uf_N`.
///
/// For bosons the construction is exact on every particle-number sector with
/// `N <= cap`; higher sectors of a truncated space are only approximated,
/// because `U` can pile more than `cap` particles into one mode.
pub fn big_q_of(u: &OperatorMatrix, fock: &Arc<FockSpace>) -> Result<FockOperator> {
    big_q_with(u, fock, Execution::default())
}

pub fn big_q_with(u: &OperatorMatrix, fock: &Arc<FockSpace>, exec: Execution) -> Result<FockOperator> {
    check_modes(fock, u.dim())?;
    inverse(u.entries())?;
    let n = fock.modes();
    let images: Vec<CVector> = (0..n).map(|j| u.entries().column(j).into_owned()).collect();
    let columns = exec.map_range(fock.dim(), |s| -> Result<Vec<(usize, C64)>> {
        let mut state = FockVector::vacuum(fock.clone()).into_coeffs();
        for j in (0..n).rev() {
            let occupation = fock.occupation(s, j);
            for k in 1..=occupation {
                state = apply_creator(fock, &images[j], &state, false)?;
                if fock.statistics() == Statistics::Boson {
                    state /= C64::new((k as f64).sqrt(), 0.0);
                }
            }
        }
        Ok(state
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != C64::new(0.0, 0.0))
            .map(|(i, v)| (i, *v))
            .collect())
    });
    let columns = columns.into_iter().collect::<Result<Vec<_>>>()?;
    FockOperator::from_columns(fock.clone(), Execution::Sequential, |s| columns[s].clone())
}

/// A linear functional on one-particle operators, used to renormalize `q`.
#[derive(Clone, Debug, Default)]
pub enum LinearFunctional {
    #[default]
    Zero,
    /// `A -> tr(M A)`.
    Trace(CMatrix),
}

impl LinearFunctional {
    pub fn apply(&self, a: &CMatrix) -> C64 {
        match self {
            LinearFunctional::Zero => C64::new(0.0, 0.0),
            LinearFunctional::Trace(m) => trace(&(m * a)),
        }
    }
}

/// `q'(A) = q(A) - b(A)`, whose commutators pick up the trivial cocycle
/// `b([A, B])`.
pub fn normalized_q(a: &OperatorMatrix, fock: &Arc<FockSpace>, b: &LinearFunctional) -> Result<FockOperator> {
    if let LinearFunctional::Trace(m) = b {
        check_modes(fock, m.nrows())?;
    }
    Ok(q_of(a, fock)?.shift(-b.apply(a.entries())))
}
