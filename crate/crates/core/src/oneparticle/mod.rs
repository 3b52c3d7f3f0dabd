//! One-particle Hilbert spaces and the operators acting on them: lattice
//! Hamiltonians, spectral splittings, gradings and Bogoliubov transforms.

mod grading;
mod lattice;
mod spectral;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{identity, operator_norm, CMatrix, CVector};

pub use grading::{
    bogoliubov_transform, is_j_selfadjoint, is_j_unitary, kg_grading, klein_gordon_generator, Bogoliubov, BOGOLIUBOV_TOL,
};
pub use lattice::{
    build_dirac_1d, build_klein_gordon_1d, build_schrodinger_1d, covariant_difference,
    free_dirac_dispersion, free_schrodinger_dispersion, Boundary, KleinGordonSystem, LatticeConfig, LatticeModel,
};
pub use spectral::{hs_distance, spectral_split, SpectralSplit, DEFAULT_ZERO_TOL};

/// Tolerance used when caching structural flags on an [`OperatorMatrix`].
pub const FLAG_TOL: f64 = 1e-10;

/// Finite-dimensional complex Hilbert space with a declared orthonormal basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneParticleSpace {
    labels: Vec<String>,
}

impl OneParticleSpace {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidConfig("one-particle space needs dim >= 1".into()));
        }
        Ok(Self { labels })
    }

    /// Space with basis labels `0..dim`.
    pub fn anonymous(dim: usize) -> Result<Self> {
        Self::new((0..dim).map(|i| i.to_string()).collect())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_vector(&self, k: usize) -> CVector {
        let mut v = CVector::zeros(self.dim());
        v[k] = 1.0.into();
        v
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StructureFlags {
    pub hermitian: bool,
    pub unitary: bool,
    pub projection: bool,
    pub grading: bool,
}

impl StructureFlags {
    fn measure(m: &CMatrix, tol: f64) -> Self {
        let n = m.nrows();
        let id = identity(n);
        let hermitian = operator_norm(&(m - m.adjoint())) <= tol;
        let square = m * m;
        let unitary = operator_norm(&(m.adjoint() * m - &id)) <= tol;
        let projection = hermitian && operator_norm(&(&square - m)) <= tol;
        let grading = hermitian && operator_norm(&(&square - &id)) <= tol;
        Self {
            hermitian,
            unitary,
            projection,
            grading,
        }
    }
}

/// A square matrix on a [`OneParticleSpace`] with cached structure flags.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    space: Arc<OneParticleSpace>,
    entries: CMatrix,
    flags: StructureFlags,
}

impl OperatorMatrix {
    pub fn new(space: Arc<OneParticleSpace>, entries: CMatrix) -> Result<Self> {
        if entries.nrows() != space.dim() || entries.ncols() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: entries.nrows().max(entries.ncols()),
            });
        }
        let flags = StructureFlags::measure(&entries, FLAG_TOL);
        Ok(Self { space, entries, flags })
    }

    /// Wraps a bare square matrix on an anonymous space.
    pub fn from_matrix(entries: CMatrix) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch {
                expected: entries.nrows(),
                found: entries.ncols(),
            });
        }
        let space = Arc::new(OneParticleSpace::anonymous(entries.nrows())?);
        Self::new(space, entries)
    }

    pub fn identity(space: Arc<OneParticleSpace>) -> Self {
        let n = space.dim();
        Self::new(space, identity(n)).expect("identity matches its space")
    }

    /// Same space, new entries.
    pub fn with_entries(&self, entries: CMatrix) -> Result<Self> {
        Self::new(self.space.clone(), entries)
    }

    pub fn space(&self) -> &Arc<OneParticleSpace> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix {
        self.entries
    }

    pub fn flags(&self) -> StructureFlags {
        self.flags
    }

    pub fn is_hermitian(&self) -> bool {
        self.flags.hermitian
    }

    pub fn is_projection(&self) -> bool {
        self.flags.projection
    }

    pub fn is_grading(&self) -> bool {
        self.flags.grading
    }

    pub fn is_unitary(&self) -> bool {
        self.flags.unitary
    }

    pub fn adjoint(&self) -> Self {
        self.with_entries(self.entries.adjoint()).expect("adjoint keeps the shape")
    }

    pub fn hermiticity_residual(&self) -> f64 {
        operator_norm(&(&self.entries - self.entries.adjoint()))
    }

    pub fn require_same_space(&self, other: &OperatorMatrix) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn require_hermitian(&self) -> Result<()> {
        if self.flags.hermitian {
            return Ok(());
        }
        Err(Error::NotStructured {
            property: "hermitian",
            residual: self.hermiticity_residual(),
            tol: FLAG_TOL,
        })
    }

    pub fn require_projection(&self) -> Result<()> {
        if self.flags.projection {
            return Ok(());
        }
        let residual = operator_norm(&(&self.entries * &self.entries - &self.entries)).max(self.hermiticity_residual());
        Err(Error::NotStructured {
            property: "a projection",
            residual,
            tol: FLAG_TOL,
        })
    }

    pub fn require_grading(&self) -> Result<()> {
        if self.flags.grading {
            return Ok(());
        }
        let id = identity(self.dim());
        let residual = operator_norm(&(&self.entries * &self.entries - id)).max(self.hermiticity_residual());
        Err(Error::NotStructured {
            property: "a grading",
            residual,
            tol: FLAG_TOL,
        })
    }
}
