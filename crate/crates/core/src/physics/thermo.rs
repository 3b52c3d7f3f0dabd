use crate::error::{Error, Result};
use crate::fock::{Budget, FockSpace, Statistics};
use crate::linalg::eigvalsh;
use crate::oneparticle::OperatorMatrix;
use crate::par::Execution;
use crate::secondquant::{number_operator, q_of};

/// Largest fermionic mode count accepted by the Fock trace route.
pub const MAX_TRACE_FERMION_MODES: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermoParams {
    pub beta: f64,
    pub mu: f64,
    pub statistics: Statistics,
}

impl ThermoParams {
    pub fn new(beta: f64, mu: f64, statistics: Statistics) -> Result<Self> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::InvalidConfig(format!("beta must be positive and finite, got {beta}")));
        }
        if !mu.is_finite() {
            return Err(Error::InvalidConfig(format!("mu must be finite, got {mu}")));
        }
        Ok(Self { beta, mu, statistics })
    }

    fn require_convergent(&self, levels: &[f64]) -> Result<()> {
        if self.statistics == Statistics::Boson {
            let min_level = levels.iter().copied().fold(f64::INFINITY, f64::min);
            if self.mu >= min_level {
                return Err(Error::Divergence { mu: self.mu, min_level });
            }
        }
        Ok(())
    }
}

/// `log(1 + e^x)` without overflow.
fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

fn level_free_energy(e: f64, p: &ThermoParams) -> f64 {
    let x = p.beta * (e - p.mu);
    match p.statistics {
        Statistics::Fermion => -softplus(-x) / p.beta,
        Statistics::Boson => (-(-x).exp_m1()).ln() / p.beta,
    }
}

/// Sum over the eigenvalues of `H` of the single-level free energies.
pub fn free_energy_formula(h: &OperatorMatrix, p: &ThermoParams) -> Result<f64> {
    h.require_hermitian()?;
    let levels = eigvalsh(h.entries());
    p.require_convergent(&levels)?;
    Ok(levels.iter().map(|&e| level_free_energy(e, p)).sum())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceOptions {
    /// Per-mode occupation cap for bosons; ignored for fermions.
    pub cap: u32,
    pub budget: Budget,
    pub exec: Execution,
}

impl Default for TraceOptions {
    fn default() -> Self {
        Self {
            cap: 40,
            budget: Budget::default(),
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceValue {
    pub value: f64,
    /// Geometric tail bound for the truncated boson trace.
    pub truncation_bound: Option<f64>,
}

/// `-1/beta log tr exp(-beta (q(H) - mu N))` on the Fock space.
///
/// `q(H)` is assembled in the lattice basis and diagonalized one particle
/// number sector at a time; the one-particle eigenbasis is never used.
pub fn free_energy_trace(h: &OperatorMatrix, p: &ThermoParams, opts: &TraceOptions) -> Result<TraceValue> {
    h.require_hermitian()?;
    let n = h.dim();
    let (cap, truncation_bound) = match p.statistics {
        Statistics::Fermion => {
            if n > MAX_TRACE_FERMION_MODES {
                return Err(Error::BudgetExceeded {
                    required: 1usize << n.min(usize::BITS as usize - 1),
                    budget: 1usize << MAX_TRACE_FERMION_MODES,
                });
            }
            (1, None)
        }
        Statistics::Boson => {
            if opts.cap == 0 {
                return Err(Error::InvalidConfig("boson cap must be at least 1".into()));
            }
            let levels = eigvalsh(h.entries());
            p.require_convergent(&levels)?;
            let bound = levels
                .iter()
                .map(|&e| {
                    let x = p.beta * (e - p.mu);
                    (-x * (opts.cap as f64 + 1.0)).exp() / (-(-x).exp_m1()) / p.beta
                })
                .sum();
            (opts.cap, Some(bound))
        }
    };
    let fock = std::sync::Arc::new(FockSpace::new(n, p.statistics, cap, opts.budget)?);
    let kinetic = q_of(h, &fock)?;
    let number = number_operator(&fock)?;
    let grand = kinetic.sub(&number.scale(crate::linalg::c(p.mu, 0.0)))?;

    let sectors = fock.max_particles() as usize + 1;
    let mut exponents: Vec<f64> = opts
        .exec
        .map_range(sectors, |s| {
            let indices = fock.sector(s as u32);
            let block = grand.compress(&indices);
            eigvalsh(&block).into_iter().map(|e| -p.beta * e).collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect();
    exponents.sort_by(f64::total_cmp);
    let top = *exponents.last().expect("Fock space is never empty");
    let sum: f64 = exponents.iter().map(|x| (x - top).exp()).sum();
    let log_z = top + sum.ln();
    if !log_z.is_finite() {
        return Err(Error::VerificationFailed {
            what: "Fock trace",
            residual: f64::INFINITY,
            tol: 0.0,
        });
    }
    Ok(TraceValue {
        value: -log_z / p.beta,
        truncation_bound,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FreeEnergyReport {
    pub value_formula: f64,
    pub value_trace: Option<f64>,
    /// `|value_formula - value_trace|` when both are present.
    pub discrepancy: Option<f64>,
    pub truncation_bound: Option<f64>,
}

/// Both routes. The trace is skipped when `trace` is `None` or when a
/// fermionic system is too large for it.
pub fn free_energy_report(h: &OperatorMatrix, p: &ThermoParams, trace: Option<&TraceOptions>) -> Result<FreeEnergyReport> {
    let value_formula = free_energy_formula(h, p)?;
    let traced = match trace {
        Some(_) if p.statistics == Statistics::Fermion && h.dim() > MAX_TRACE_FERMION_MODES => None,
        Some(opts) => Some(free_energy_trace(h, p, opts)?),
        None => None,
    };
    let value_trace = traced.map(|t| t.value);
    Ok(FreeEnergyReport {
        value_formula,
        value_trace,
        discrepancy: value_trace.map(|t| (t - value_formula).abs()),
        truncation_bound: traced.and_then(|t| t.truncation_bound),
    })
}
