//! Run configuration, parsed from TOML with every unknown key rejected.

use std::collections::BTreeMap;
use std::path::Path;

use fockforge::fock::Statistics;
use fockforge::oneparticle::{Boundary, LatticeConfig, LatticeModel};
use serde::{Deserialize, Serialize};

use crate::checks::Check;
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StatisticsTag {
    Fermion,
    Boson,
}

impl From<StatisticsTag> for Statistics {
    fn from(tag: StatisticsTag) -> Self {
        match tag {
            StatisticsTag::Fermion => Statistics::Fermion,
            StatisticsTag::Boson => Statistics::Boson,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelName {
    #[serde(rename = "schrodinger1d")]
    Schrodinger1d,
    #[serde(rename = "dirac1d")]
    Dirac1d,
    #[serde(rename = "kleingordon1d")]
    KleinGordon1d,
}

impl From<ModelName> for LatticeModel {
    fn from(name: ModelName) -> Self {
        match name {
            ModelName::Schrodinger1d => LatticeModel::Schrodinger1d,
            ModelName::Dirac1d => LatticeModel::Dirac1d,
            ModelName::KleinGordon1d => LatticeModel::KleinGordon1d,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryName {
    #[default]
    Periodic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub model: ModelName,
    pub sites: usize,
    #[serde(default = "one")]
    pub spacing: f64,
    #[serde(default = "one")]
    pub mass: f64,
    #[serde(default = "one")]
    pub charge: f64,
    /// Defaults to zero on every site.
    #[serde(default)]
    pub phi: Option<Vec<f64>>,
    #[serde(default, rename = "vecA")]
    pub vec_a: Option<Vec<f64>>,
    #[serde(default)]
    pub boundary: BoundaryName,
}

fn one() -> f64 {
    1.0
}

impl ModelSection {
    pub fn lattice(&self) -> LatticeConfig {
        let sites = self.sites;
        LatticeConfig {
            model: self.model.into(),
            sites,
            spacing: self.spacing,
            mass: self.mass,
            charge: self.charge,
            phi: self.phi.clone().unwrap_or_else(|| vec![0.0; sites]),
            vec_a: self.vec_a.clone().unwrap_or_else(|| vec![0.0; sites]),
            boundary: match self.boundary {
                BoundaryName::Periodic => Boundary::Periodic,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThermoSection {
    pub beta: f64,
    pub mu: f64,
    /// Diagonal one-particle Hamiltonian given directly by its levels.
    #[serde(default)]
    pub levels: Option<Vec<f64>>,
    /// Random hermitian one-particle Hamiltonian of this size, drawn from the seed.
    #[serde(default)]
    pub random_modes: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default)]
    pub path: Option<String>,
    #[serde(default)]
    pub format: Option<Format>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyMember {
    pub label: String,
    #[serde(default)]
    pub phi: Option<Vec<f64>>,
    #[serde(default, rename = "vecA")]
    pub vec_a: Option<Vec<f64>>,
    #[serde(default)]
    pub mass: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_statistics")]
    pub statistics: StatisticsTag,
    #[serde(default = "default_cap")]
    pub boson_cap: u32,
    /// Mode count for the randomized algebraic checks.
    #[serde(default = "default_modes")]
    pub modes: usize,
    /// Random cases per randomized check.
    #[serde(default = "default_cases")]
    pub cases: usize,
    #[serde(default)]
    pub suite: Vec<Check>,
    #[serde(default)]
    pub model: Option<ModelSection>,
    #[serde(default)]
    pub thermo: Option<ThermoSection>,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub family: Vec<FamilyMember>,
}

fn default_statistics() -> StatisticsTag {
    StatisticsTag::Fermion
}

fn default_cap() -> u32 {
    5
}

fn default_modes() -> usize {
    4
}

fn default_cases() -> usize {
    10
}

/// Ceiling on `modes` for randomized checks, keeping Fock spaces dense-friendly.
pub const MAX_CHECK_MODES: usize = 8;

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let config: RunConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if self.modes == 0 || self.modes > MAX_CHECK_MODES {
            return bad(format!("modes must be in 1..={MAX_CHECK_MODES}, got {}", self.modes));
        }
        if self.cases == 0 {
            return bad("cases must be positive".into());
        }
        if self.boson_cap == 0 {
            return bad("boson_cap must be positive".into());
        }
        for (name, tol) in &self.tolerances {
            if !self.suite.iter().any(|c| c.name() == name) && !Check::is_known_tolerance(name) {
                return bad(format!("unknown tolerance key {name:?}"));
            }
            if !(tol.is_finite() && *tol >= 0.0) {
                return bad(format!("tolerance {name:?} must be finite and non-negative"));
            }
        }
        if let Some(model) = &self.model {
            model.lattice().validate().map_err(|e| CliError::Config(e.to_string()))?;
        }
        if let Some(thermo) = &self.thermo {
            if !(thermo.beta > 0.0 && thermo.beta.is_finite()) {
                return bad(format!("thermo.beta must be positive, got {}", thermo.beta));
            }
            if !thermo.mu.is_finite() {
                return bad("thermo.mu must be finite".into());
            }
            if thermo.levels.is_some() && thermo.random_modes.is_some() {
                return bad("thermo.levels and thermo.random_modes are mutually exclusive".into());
            }
            if let Some(levels) = &thermo.levels {
                if levels.is_empty() || levels.iter().any(|x| !x.is_finite()) {
                    return bad("thermo.levels must be a non-empty list of finite numbers".into());
                }
            }
            if thermo.random_modes == Some(0) {
                return bad("thermo.random_modes must be positive".into());
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for member in &self.family {
            if !seen.insert(member.label.as_str()) {
                return bad(format!("duplicate family label {:?}", member.label));
            }
        }
        for check in &self.suite {
            check.validate(self)?;
        }
        Ok(())
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics.into()
    }

    pub fn tolerance(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }

    pub fn require_model(&self, what: &str) -> Result<&ModelSection, CliError> {
        self.model
            .as_ref()
            .ok_or_else(|| CliError::Config(format!("{what} needs a [model] section")))
    }

    /// SHA-256 of the canonical JSON form of the parsed configuration.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let canonical = serde_json::to_vec(self).expect("configuration serializes");
        Sha256::digest(&canonical).iter().map(|b| format!("{b:02x}")).collect()
    }
}
