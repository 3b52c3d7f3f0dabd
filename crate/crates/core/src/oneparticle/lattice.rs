//! Periodic 1D lattice discretizations of the Schrödinger, Dirac and
//! Klein–Gordon operators in static external potentials (hbar = c = 1).
//!
//! All three share the covariant centered difference
//! `X = -i (S - S^T) / (2a) + e A`, where `S` is the periodic forward shift.
//! It is hermitian and, in the free case, has eigenvalues `sin(2 pi k / L) / a`.
//! The naive centered difference doubles fermions; none of the algebraic
//! identities built on top care.

use std::f64::consts::PI;
use std::sync::Arc;

use super::{OneParticleSpace, OperatorMatrix};
use crate::error::{Error, Result};
use crate::linalg::{block2, c, identity, CMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LatticeModel {
    Schrodinger1d,
    Dirac1d,
    KleinGordon1d,
}

impl LatticeModel {
    pub fn name(self) -> &'static str {
        match self {
            LatticeModel::Schrodinger1d => "schrodinger1d",
            LatticeModel::Dirac1d => "dirac1d",
            LatticeModel::KleinGordon1d => "kleingordon1d",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Boundary {
    #[default]
    Periodic,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeConfig {
    pub model: LatticeModel,
    pub sites: usize,
    pub spacing: f64,
    pub mass: f64,
    pub charge: f64,
    /// Scalar potential sampled on the sites.
    pub phi: Vec<f64>,
    /// Vector potential sampled on the sites.
    pub vec_a: Vec<f64>,
    pub boundary: Boundary,
}

impl LatticeConfig {
    /// Field-free configuration with unit charge.
    pub fn free(model: LatticeModel, sites: usize, spacing: f64, mass: f64) -> Self {
        Self {
            model,
            sites,
            spacing,
            mass,
            charge: 1.0,
            phi: vec![0.0; sites],
            vec_a: vec![0.0; sites],
            boundary: Boundary::Periodic,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sites == 0 {
            return Err(Error::InvalidConfig("sites must be positive".into()));
        }
        if !(self.spacing > 0.0) || !self.spacing.is_finite() {
            return Err(Error::InvalidConfig(format!("spacing must be positive, got {}", self.spacing)));
        }
        if !(self.mass >= 0.0) || !self.mass.is_finite() {
            return Err(Error::InvalidConfig(format!("mass must be non-negative, got {}", self.mass)));
        }
        if !self.charge.is_finite() {
            return Err(Error::InvalidConfig("charge must be finite".into()));
        }
        if self.phi.len() != self.sites {
            return Err(Error::InvalidConfig(format!(
                "phi has {} samples for {} sites",
                self.phi.len(),
                self.sites
            )));
        }
        if self.vec_a.len() != self.sites {
            return Err(Error::InvalidConfig(format!(
                "vecA has {} samples for {} sites",
                self.vec_a.len(),
                self.sites
            )));
        }
        if self.phi.iter().chain(&self.vec_a).any(|x| !x.is_finite()) {
            return Err(Error::InvalidConfig("potentials must be finite".into()));
        }
        Ok(())
    }

    fn expect_model(&self, model: LatticeModel) -> Result<()> {
        if self.model != model {
            return Err(Error::InvalidConfig(format!(
                "expected model {}, got {}",
                model.name(),
                self.model.name()
            )));
        }
        self.validate()
    }

    /// `-e phi` as a diagonal matrix.
    fn potential_energy(&self) -> CMatrix {
        CMatrix::from_fn(self.sites, self.sites, |i, j| {
            if i == j {
                c(-self.charge * self.phi[i], 0.0)
            } else {
                c(0.0, 0.0)
            }
        })
    }
}

/// Covariant centered difference `-i (S - S^T)/(2a) + e A` on `L` sites.
pub fn covariant_difference(cfg: &LatticeConfig) -> CMatrix {
    let l = cfg.sites;
    let mut x = CMatrix::zeros(l, l);
    let hop = c(0.0, -1.0 / (2.0 * cfg.spacing));
    for j in 0..l {
        x[(j, (j + 1) % l)] += hop;
        x[(j, (j + l - 1) % l)] -= hop;
        x[(j, j)] += c(cfg.charge * cfg.vec_a[j], 0.0);
    }
    x
}

fn site_labels(prefix: &str, sites: usize) -> Vec<String> {
    (0..sites).map(|j| format!("{prefix}{j}")).collect()
}

/// `H = (1/2m) X* X - e phi`.
pub fn build_schrodinger_1d(cfg: &LatticeConfig) -> Result<OperatorMatrix> {
    cfg.expect_model(LatticeModel::Schrodinger1d)?;
    if !(cfg.mass > 0.0) {
        return Err(Error::InvalidConfig("schrodinger1d needs mass > 0".into()));
    }
    let x = covariant_difference(cfg);
    let h = (x.adjoint() * &x) * c(1.0 / (2.0 * cfg.mass), 0.0) + cfg.potential_energy();
    let space = Arc::new(OneParticleSpace::new(site_labels("site:", cfg.sites))?);
    let h = OperatorMatrix::new(space, h)?;
    h.require_hermitian()?;
    Ok(h)
}

/// Two-component Dirac operator `sigma_1 (x) X + m sigma_3 (x) 1 - e phi`.
///
/// Basis index is `s * L + j` with spinor component `s` and site `j`.
pub fn build_dirac_1d(cfg: &LatticeConfig) -> Result<OperatorMatrix> {
    cfg.expect_model(LatticeModel::Dirac1d)?;
    let l = cfg.sites;
    let x = covariant_difference(cfg);
    let v = cfg.potential_energy();
    let mass = identity(l) * c(cfg.mass, 0.0);
    let d = block2(&(&mass + &v), &x, &x, &(&v - &mass));
    let mut labels = site_labels("up:", l);
    labels.extend(site_labels("down:", l));
    let d = OperatorMatrix::new(Arc::new(OneParticleSpace::new(labels)?), d)?;
    d.require_hermitian()?;
    Ok(d)
}

/// First-order Klein–Gordon data on `h0 (+) h0`.
#[derive(Clone, Debug)]
pub struct KleinGordonSystem {
    /// `[[C, i], [-i B^2, C]]`, J-self-adjoint.
    pub k: OperatorMatrix,
    /// `[[0, -i], [i, 0]]`.
    pub j: OperatorMatrix,
    /// `X^2 + m^2` on `h0`.
    pub b2: OperatorMatrix,
    /// `-e phi` on `h0`.
    pub c: OperatorMatrix,
}

pub fn build_klein_gordon_1d(cfg: &LatticeConfig) -> Result<KleinGordonSystem> {
    cfg.expect_model(LatticeModel::KleinGordon1d)?;
    if !(cfg.mass > 0.0) {
        return Err(Error::InvalidConfig(
            "kleingordon1d needs mass > 0 so that B^2 is invertible".into(),
        ));
    }
    let l = cfg.sites;
    let x = covariant_difference(cfg);
    let b2 = x.adjoint() * &x + identity(l) * c(cfg.mass * cfg.mass, 0.0);
    let cc = cfg.potential_energy();
    let h0 = Arc::new(OneParticleSpace::new(site_labels("site:", l))?);
    let b2 = OperatorMatrix::new(h0.clone(), b2)?;
    let cc = OperatorMatrix::new(h0, cc)?;

    let mut labels = site_labels("psi:", l);
    labels.extend(site_labels("pi:", l));
    let h_kg = Arc::new(OneParticleSpace::new(labels)?);
    let k = super::klein_gordon_generator(&b2, &cc)?;
    let k = OperatorMatrix::new(h_kg.clone(), k.into_entries())?;
    let j = OperatorMatrix::new(h_kg, super::kg_grading(l))?;
    j.require_grading()?;
    Ok(KleinGordonSystem { k, j, b2, c: cc })
}

/// Free Schrödinger levels `sin^2(2 pi k / L) / (2 m a^2)`, ascending.
pub fn free_schrodinger_dispersion(sites: usize, spacing: f64, mass: f64) -> Vec<f64> {
    let mut levels: Vec<f64> = (0..sites)
        .map(|k| {
            let s = (2.0 * PI * k as f64 / sites as f64).sin();
            s * s / (2.0 * mass * spacing * spacing)
        })
        .collect();
    levels.sort_by(f64::total_cmp);
    levels
}

/// Free lattice Dirac levels `+-sqrt(sin^2(2 pi k / L)/a^2 + m^2)`, ascending.
pub fn free_dirac_dispersion(sites: usize, spacing: f64, mass: f64) -> Vec<f64> {
    let mut levels = Vec::with_capacity(2 * sites);
    for k in 0..sites {
        let s = (2.0 * PI * k as f64 / sites as f64).sin() / spacing;
        let e = (s * s + mass * mass).sqrt();
        levels.push(e);
        levels.push(-e);
    }
    levels.sort_by(f64::total_cmp);
    levels
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eigvalsh, hermiticity_residual, operator_norm};

    fn with_fields(model: LatticeModel, sites: usize) -> LatticeConfig {
        let mut cfg = LatticeConfig::free(model, sites, 0.7, 1.3);
        cfg.charge = 0.8;
        cfg.phi = (0..sites).map(|j| (j as f64 * 0.9).sin()).collect();
        cfg.vec_a = (0..sites).map(|j| (j as f64 * 0.4).cos() * 0.5).collect();
        cfg
    }

    fn max_diff(a: &[f64], b: &[f64]) -> f64 {
        assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn schrodinger_free_levels_follow_squared_sine() {
        let cfg = LatticeConfig::free(LatticeModel::Schrodinger1d, 8, 1.0, 1.0);
        let h = build_schrodinger_1d(&cfg).unwrap();
        let levels = eigvalsh(h.entries());
        assert!(max_diff(&levels, &free_schrodinger_dispersion(8, 1.0, 1.0)) < 1e-12);
    }

    #[test]
    fn schrodinger_constant_shift() {
        let cfg = with_fields(LatticeModel::Schrodinger1d, 6);
        let mut shifted = cfg.clone();
        shifted.phi.iter_mut().for_each(|p| *p += 0.25);
        let a = eigvalsh(build_schrodinger_1d(&cfg).unwrap().entries());
        let b = eigvalsh(build_schrodinger_1d(&shifted).unwrap().entries());
        let expected: Vec<f64> = a.iter().map(|e| e - cfg.charge * 0.25).collect();
        assert!(max_diff(&b, &expected) < 1e-12);
    }

    #[test]
    fn schrodinger_is_hermitian() {
        let h = build_schrodinger_1d(&with_fields(LatticeModel::Schrodinger1d, 7)).unwrap();
        assert!(hermiticity_residual(h.entries()) <= 1e-14);
    }

    #[test]
    fn dirac_massless_and_massive_dispersion() {
        for mass in [0.0, 1.0] {
            let cfg = LatticeConfig::free(LatticeModel::Dirac1d, 8, 1.0, mass);
            let d = build_dirac_1d(&cfg).unwrap();
            let levels = eigvalsh(d.entries());
            assert!(max_diff(&levels, &free_dirac_dispersion(8, 1.0, mass)) < 1e-10);
        }
    }

    #[test]
    fn dirac_constant_shift() {
        let cfg = with_fields(LatticeModel::Dirac1d, 5);
        let mut shifted = cfg.clone();
        shifted.phi.iter_mut().for_each(|p| *p -= 0.4);
        let a = eigvalsh(build_dirac_1d(&cfg).unwrap().entries());
        let b = eigvalsh(build_dirac_1d(&shifted).unwrap().entries());
        let expected: Vec<f64> = a.iter().map(|e| e + cfg.charge * 0.4).collect();
        assert!(max_diff(&b, &expected) < 1e-12);
    }

    #[test]
    fn klein_gordon_structure() {
        let cfg = with_fields(LatticeModel::KleinGordon1d, 4);
        let kg = build_klein_gordon_1d(&cfg).unwrap();
        let (k, j) = (kg.k.entries(), kg.j.entries());
        assert!(operator_norm(&(k.adjoint() - j * k * j)) <= 1e-12);
        assert_eq!(j * j, identity(8));
        assert!(eigvalsh(kg.b2.entries())[0] > 0.0);
    }

    #[test]
    fn klein_gordon_free_b2_levels() {
        let cfg = LatticeConfig::free(LatticeModel::KleinGordon1d, 4, 1.0, 1.0);
        let kg = build_klein_gordon_1d(&cfg).unwrap();
        let mut expected: Vec<f64> = (0..4)
            .map(|k| (2.0 * PI * k as f64 / 4.0).sin().powi(2) + 1.0)
            .collect();
        expected.sort_by(f64::total_cmp);
        assert!(max_diff(&eigvalsh(kg.b2.entries()), &expected) < 1e-12);
    }

    #[test]
    fn rejects_bad_configs() {
        let mut cfg = LatticeConfig::free(LatticeModel::KleinGordon1d, 4, 1.0, 0.0);
        assert!(build_klein_gordon_1d(&cfg).is_err());
        cfg.mass = 1.0;
        cfg.phi.pop();
        assert!(build_klein_gordon_1d(&cfg).is_err());
        let cfg = LatticeConfig::free(LatticeModel::Dirac1d, 4, 0.0, 1.0);
        assert!(build_dirac_1d(&cfg).is_err());
        let cfg = LatticeConfig::free(LatticeModel::Dirac1d, 4, 1.0, 1.0);
        assert!(build_schrodinger_1d(&cfg).is_err());
        let cfg = LatticeConfig::free(LatticeModel::Schrodinger1d, 4, 1.0, 0.0);
        assert!(build_schrodinger_1d(&cfg).is_err());
    }
}
