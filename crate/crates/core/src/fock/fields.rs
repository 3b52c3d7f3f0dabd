//! Smeared field operators `psi(f)`, `psi+(f)` and wedge states.
//!
//! Smearing is antilinear for the annihilator and linear for the creator:
//! `psi+(f) = sum_j f_j psi+_j` and `psi(f) = sum_j conj(f_j) psi_j`.

use std::sync::Arc;

use super::space::Step;
use super::{FockOperator, FockSpace, FockVector, Statistics};
use crate::error::{Error, Result};
use crate::linalg::{CVector, C64};
use crate::par::Execution;

#[derive(Clone, Debug)]
pub struct FieldPair {
    pub annihilator: FockOperator,
    pub creator: FockOperator,
}

fn check_modes(fock: &FockSpace, f: &CVector) -> Result<()> {
    if f.len() != fock.modes() {
        return Err(Error::DimensionMismatch {
            expected: fock.modes(),
            found: f.len(),
        });
    }
    Ok(())
}

/// `psi+(f)`. Bosonic amplitudes that would cross the cap are dropped, so on
/// a truncated space the result is exact only away from the cap.
pub fn creator(fock: &Arc<FockSpace>, f: &CVector, exec: Execution) -> Result<FockOperator> {
    check_modes(fock, f)?;
    FockOperator::from_columns(fock.clone(), exec, |s| {
        (0..fock.modes())
            .filter(|&j| f[j] != C64::new(0.0, 0.0))
            .filter_map(|j| match fock.raise(s, j) {
                Step::To(t, amp) => Some((t, f[j] * amp)),
                _ => None,
            })
            .collect()
    })
}

/// `psi(f)`, built from the lowering steps directly rather than as an adjoint.
pub fn annihilator(fock: &Arc<FockSpace>, f: &CVector, exec: Execution) -> Result<FockOperator> {
    check_modes(fock, f)?;
    FockOperator::from_columns(fock.clone(), exec, |s| {
        (0..fock.modes())
            .filter(|&j| f[j] != C64::new(0.0, 0.0))
            .filter_map(|j| match fock.lower(s, j) {
                Step::To(t, amp) => Some((t, f[j].conj() * amp)),
                _ => None,
            })
            .collect()
    })
}

/// Smeared pair `(psi(f), psi+(f))`.
pub fn field_op(fock: &Arc<FockSpace>, f: &CVector) -> Result<FieldPair> {
    let exec = Execution::default();
    Ok(FieldPair {
        annihilator: annihilator(fock, f, exec)?,
        creator: creator(fock, f, exec)?,
    })
}

/// Creator and annihilator of basis mode `j`.
pub fn mode_op(fock: &Arc<FockSpace>, j: usize) -> Result<FieldPair> {
    if j >= fock.modes() {
        return Err(Error::DimensionMismatch {
            expected: fock.modes(),
            found: j + 1,
        });
    }
    let mut e = CVector::zeros(fock.modes());
    e[j] = C64::new(1.0, 0.0);
    field_op(fock, &e)
}

/// Applies `psi+(f)` to a dense state.
///
/// With `checked` set, any bosonic amplitude that would have to cross the cap
/// is an error instead of being dropped.
pub fn apply_creator(fock: &FockSpace, f: &CVector, state: &CVector, checked: bool) -> Result<CVector> {
    check_modes(fock, f)?;
    let mut out = CVector::zeros(fock.dim());
    for (s, &amp_in) in state.iter().enumerate() {
        if amp_in == C64::new(0.0, 0.0) {
            continue;
        }
        for (j, &fj) in f.iter().enumerate() {
            if fj == C64::new(0.0, 0.0) {
                continue;
            }
            match fock.raise(s, j) {
                Step::To(t, amp) => out[t] += fj * amp * amp_in,
                Step::Vanishes => {}
                Step::Overflow if checked => {
                    return Err(Error::CapOverflow { mode: j, cap: fock.cap() });
                }
                Step::Overflow => {}
            }
        }
    }
    Ok(out)
}

/// `f_1 ^ f_2 ^ ... ^ f_N = psi+(f_1) psi+(f_2) ... psi+(f_N) Omega`.
///
/// Bosonic states that would need an occupation above the cap are rejected.
pub fn wedge_state(fock: &Arc<FockSpace>, fs: &[CVector]) -> Result<FockVector> {
    if fock.statistics() == Statistics::Fermion && fs.len() > fock.modes() {
        return Err(Error::InvalidConfig(format!(
            "{} fermions do not fit into {} modes",
            fs.len(),
            fock.modes()
        )));
    }
    let mut state = FockVector::vacuum(fock.clone()).into_coeffs();
    for f in fs.iter().rev() {
        state = apply_creator(fock, f, &state, true)?;
    }
    FockVector::new(fock.clone(), state)
}
