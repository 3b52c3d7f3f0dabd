use crate::error::{Error, Result};
use crate::oneparticle::{build_dirac_1d, hs_distance, spectral_split, LatticeConfig, LatticeModel, OperatorMatrix};
use crate::par::Execution;

#[derive(Clone, Debug, PartialEq)]
pub struct SweepMember {
    pub label: String,
    pub config: LatticeConfig,
}

/// A family member left out because its Dirac operator has (numerically)
/// closed the gap at zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Refusal {
    pub label: String,
    pub eigenvalue: f64,
    pub zero_tol: f64,
}

/// Pairwise Hilbert–Schmidt distances `|| P-(D_i) - P-(D_j) ||_2`.
///
/// Rows and columns of refused members are `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    pub labels: Vec<String>,
    pub distances: Vec<Vec<Option<f64>>>,
    pub refused: Vec<Refusal>,
}

impl SweepTable {
    /// Largest `|d_ij - d_ji|` and largest diagonal entry.
    pub fn symmetry_residual(&self) -> f64 {
        let n = self.labels.len();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                match (self.distances[i][j], self.distances[j][i]) {
                    (Some(a), Some(_)) if i == j => worst = worst.max(a.abs()),
                    (Some(a), Some(b)) => worst = worst.max((a - b).abs()),
                    (None, None) => {}
                    _ => return f64::INFINITY,
                }
            }
        }
        worst
    }
}

/// Negative spectral projection of the lattice Dirac operator, refusing a
/// gap smaller than `zero_tol`.
pub fn dirac_sea_projection(cfg: &LatticeConfig, zero_tol: f64) -> Result<OperatorMatrix> {
    let d = build_dirac_1d(cfg)?;
    let split = spectral_split(&d, zero_tol)?;
    let closest = split
        .eigenvalues
        .iter()
        .copied()
        .min_by(|a, b| a.abs().total_cmp(&b.abs()))
        .unwrap_or(f64::INFINITY);
    if closest.abs() <= zero_tol {
        return Err(Error::GapClosed {
            eigenvalue: closest,
            zero_tol,
        });
    }
    Ok(split.p_minus)
}

pub fn equivalence_sweep(family: &[SweepMember], zero_tol: f64, exec: Execution) -> Result<SweepTable> {
    if let Some(first) = family.first() {
        for member in family {
            if member.config.model != LatticeModel::Dirac1d {
                return Err(Error::InvalidConfig(format!(
                    "member {:?} is {}, the sweep needs dirac1d",
                    member.label,
                    member.config.model.name()
                )));
            }
            if member.config.sites != first.config.sites {
                return Err(Error::DimensionMismatch {
                    expected: first.config.sites,
                    found: member.config.sites,
                });
            }
            if member.config.spacing != first.config.spacing {
                return Err(Error::InvalidConfig(format!(
                    "member {:?} has spacing {}, expected {}",
                    member.label, member.config.spacing, first.config.spacing
                )));
            }
        }
    }

    let mut refused = Vec::new();
    let mut projections = Vec::with_capacity(family.len());
    for (member, p) in family.iter().zip(exec.map_slice(family, |m| dirac_sea_projection(&m.config, zero_tol))) {
        match p {
            Ok(p) => projections.push(Some(p)),
            Err(Error::GapClosed { eigenvalue, zero_tol }) => {
                refused.push(Refusal {
                    label: member.label.clone(),
                    eigenvalue,
                    zero_tol,
                });
                projections.push(None);
            }
            Err(e) => return Err(e),
        }
    }

    let n = family.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let values = exec.map_slice(&pairs, |&(i, j)| match (&projections[i], &projections[j]) {
        (Some(a), Some(b)) => hs_distance(a, b).map(Some),
        _ => Ok(None),
    });
    let mut distances: Vec<Vec<Option<f64>>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j && projections[i].is_some()).then_some(0.0)).collect())
        .collect();
    for (&(i, j), value) in pairs.iter().zip(values) {
        let value = value?;
        distances[i][j] = value;
        distances[j][i] = value;
    }
    Ok(SweepTable {
        labels: family.iter().map(|m| m.label.clone()).collect(),
        distances,
        refused,
    })
}
