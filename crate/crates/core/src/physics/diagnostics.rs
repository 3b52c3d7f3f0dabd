use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fock::FockOperator;
use crate::linalg::{c, eigvalsh, hermiticity_residual, operator_norm, CMatrix};
use crate::oneparticle::{build_dirac_1d, free_dirac_dispersion, LatticeConfig, LatticeModel, OperatorMatrix, FLAG_TOL};

/// Largest Fock dimension a stability report diagonalizes densely.
pub const DENSE_FOCK_LIMIT: usize = 4096;

/// Eigenvalue range of a hermitian operator.
///
/// Every finite matrix is bounded; `bounded_below` records whether the
/// spectrum stays above `-zero_tol`, which is what survives refinement of
/// the lattice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StabilityReport {
    pub bounded_below: bool,
    pub min_eig: f64,
    pub max_eig: f64,
    /// Negative one-particle energies: second quantization needs a Dirac sea.
    pub needs_quasi_free: bool,
}

fn report(levels: &[f64], zero_tol: f64) -> StabilityReport {
    let min_eig = levels.first().copied().unwrap_or(0.0);
    let max_eig = levels.last().copied().unwrap_or(0.0);
    let bounded_below = min_eig >= -zero_tol;
    StabilityReport {
        bounded_below,
        min_eig,
        max_eig,
        needs_quasi_free: !bounded_below,
    }
}

pub fn stability_report(h: &OperatorMatrix, zero_tol: f64) -> Result<StabilityReport> {
    h.require_hermitian()?;
    Ok(report(&eigvalsh(h.entries()), zero_tol))
}

/// Stability report for a second-quantized operator, diagonalized densely.
pub fn stability_report_fock(x: &FockOperator, zero_tol: f64) -> Result<StabilityReport> {
    if x.dim() > DENSE_FOCK_LIMIT {
        return Err(Error::BudgetExceeded {
            required: x.dim(),
            budget: DENSE_FOCK_LIMIT,
        });
    }
    let dense = x.to_dense();
    let residual = hermiticity_residual(&dense);
    if residual > FLAG_TOL * dense.nrows().max(1) as f64 {
        return Err(Error::NotStructured {
            property: "hermitian",
            residual,
            tol: FLAG_TOL,
        });
    }
    Ok(report(&eigvalsh(&dense), zero_tol))
}

/// `(tr (a* a)^{p/2})^{1/p}` for even `p >= 2`.
pub fn schatten_norm(a: &OperatorMatrix, p: u32) -> Result<f64> {
    if p == 0 || !p.is_multiple_of(2) {
        return Err(Error::InvalidConfig(format!("schatten exponent must be even and positive, got {p}")));
    }
    let gram = a.entries().adjoint() * a.entries();
    let s2: Vec<f64> = eigvalsh(&gram).into_iter().map(|x| x.max(0.0)).collect();
    let top = s2.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return Ok(0.0);
    }
    // scaled by the largest singular value to keep the powers finite
    let half = (p / 2) as i32;
    let sum: f64 = s2.iter().map(|x| (x / top).powi(half)).sum();
    Ok(top.sqrt() * sum.powf(1.0 / p as f64))
}

/// The two Dirac levels carried by lattice momentum `p = 2 pi k / (L a)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentumLevels {
    pub momentum: f64,
    pub lower: f64,
    pub upper: f64,
    /// `|| D W - W (W* D W) ||` for the plane-wave frame `W`; zero when the
    /// momentum is a good quantum number.
    pub leakage: f64,
}

/// Restricts the Dirac operator to the plane waves of momentum index `k`.
pub fn dirac_momentum_levels(cfg: &LatticeConfig, k: usize) -> Result<MomentumLevels> {
    let d = build_dirac_1d(cfg)?;
    let l = cfg.sites;
    let momentum = 2.0 * PI * k as f64 / (l as f64 * cfg.spacing);
    let norm = 1.0 / (l as f64).sqrt();
    let frame = CMatrix::from_fn(2 * l, 2, |row, s| {
        if row / l == s {
            let phase = momentum * (row % l) as f64 * cfg.spacing;
            c(phase.cos() * norm, phase.sin() * norm)
        } else {
            c(0.0, 0.0)
        }
    });
    let dw = d.entries() * &frame;
    let block = frame.adjoint() * &dw;
    let leakage = operator_norm(&(dw - &frame * &block));
    let levels = eigvalsh(&block);
    Ok(MomentumLevels {
        momentum,
        lower: levels[0],
        upper: levels[1],
        leakage,
    })
}

/// Largest deviation of the upper lattice level at momentum index `k` from
/// the continuum `sqrt(p^2 + m^2)`.
pub fn continuum_dispersion_deviation(cfg: &LatticeConfig, k: usize) -> Result<f64> {
    let levels = dirac_momentum_levels(cfg, k)?;
    let exact = (levels.momentum * levels.momentum + cfg.mass * cfg.mass).sqrt();
    Ok((levels.upper - exact).abs().max((levels.lower + exact).abs()))
}

/// Max deviation of the eigenvalues of a free Dirac operator from
/// `+-sqrt(sin^2(2 pi k / L)/a^2 + m^2)`.
pub fn dirac_dispersion_deviation(cfg: &LatticeConfig) -> Result<f64> {
    if cfg.model != LatticeModel::Dirac1d {
        return Err(Error::InvalidConfig("dispersion check needs model dirac1d".into()));
    }
    if cfg.phi.iter().chain(&cfg.vec_a).any(|&x| x != 0.0) {
        return Err(Error::InvalidConfig("dispersion check needs phi = A = 0".into()));
    }
    let computed = eigvalsh(build_dirac_1d(cfg)?.entries());
    let analytic = free_dirac_dispersion(cfg.sites, cfg.spacing, cfg.mass);
    Ok(computed
        .iter()
        .zip(&analytic)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max))
}
