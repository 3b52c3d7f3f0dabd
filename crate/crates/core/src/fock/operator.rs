use std::sync::Arc;

use nalgebra_sparse::{CooMatrix, CsrMatrix};

use super::FockSpace;
use crate::error::{Error, Result};
use crate::linalg::{operator_norm, CMatrix, CVector, C64};
use crate::par::Execution;

/// Dense state vector on a [`FockSpace`].
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector {
    space: Arc<FockSpace>,
    coeffs: CVector,
}

impl FockVector {
    pub fn new(space: Arc<FockSpace>, coeffs: CVector) -> Result<Self> {
        if coeffs.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: coeffs.len(),
            });
        }
        Ok(Self { space, coeffs })
    }

    pub fn vacuum(space: Arc<FockSpace>) -> Self {
        Self::basis(space, 0)
    }

    pub fn basis(space: Arc<FockSpace>, index: usize) -> Self {
        let mut coeffs = CVector::zeros(space.dim());
        coeffs[index] = C64::new(1.0, 0.0);
        Self { space, coeffs }
    }

    pub fn space(&self) -> &Arc<FockSpace> {
        &self.space
    }

    pub fn coeffs(&self) -> &CVector {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> CVector {
        self.coeffs
    }

    pub fn inner(&self, other: &FockVector) -> C64 {
        self.coeffs.dotc(&other.coeffs)
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.norm()
    }
}

/// Sparse operator on a [`FockSpace`].
#[derive(Clone, Debug)]
pub struct FockOperator {
    space: Arc<FockSpace>,
    matrix: CsrMatrix<C64>,
}

impl FockOperator {
    /// Builds the operator column by column; `column(j)` lists the nonzero
    /// `(row, value)` pairs of column `j`. Duplicate rows are summed.
    pub fn from_columns<F>(space: Arc<FockSpace>, exec: Execution, column: F) -> Result<Self>
    where
        F: Fn(usize) -> Vec<(usize, C64)> + Sync + Send,
    {
        let dim = space.dim();
        let columns = exec.map_range(dim, column);
        let nnz: usize = columns.iter().map(Vec::len).sum();
        space.budget().check(nnz)?;
        let mut coo = CooMatrix::new(dim, dim);
        for (j, col) in columns.into_iter().enumerate() {
            for (i, v) in col {
                if v != C64::new(0.0, 0.0) {
                    coo.push(i, j, v);
                }
            }
        }
        Ok(Self {
            space,
            matrix: CsrMatrix::from(&coo),
        })
    }

    pub fn zero(space: Arc<FockSpace>) -> Self {
        let dim = space.dim();
        Self {
            space,
            matrix: CsrMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(space: Arc<FockSpace>) -> Self {
        let dim = space.dim();
        Self {
            space,
            matrix: CsrMatrix::identity(dim),
        }
    }

    pub fn diagonal(space: Arc<FockSpace>, values: &[C64]) -> Result<Self> {
        if values.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: values.len(),
            });
        }
        Self::from_columns(space, Execution::Sequential, |j| vec![(j, values[j])])
    }

    /// Keeps every entry that is not exactly zero.
    pub fn from_dense(space: Arc<FockSpace>, dense: &CMatrix) -> Result<Self> {
        if dense.nrows() != space.dim() || dense.ncols() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: dense.nrows(),
            });
        }
        Self::from_columns(space, Execution::Sequential, |j| {
            dense.column(j).iter().enumerate().map(|(i, &v)| (i, v)).collect()
        })
    }

    pub fn space(&self) -> &Arc<FockSpace> {
        &self.space
    }

    pub fn matrix(&self) -> &CsrMatrix<C64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn nnz(&self) -> usize {
        self.matrix.nnz()
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.matrix
            .get_entry(row, col)
            .map(|e| e.into_value())
            .unwrap_or_default()
    }

    /// `<Omega, X Omega>`.
    pub fn vacuum_expectation(&self) -> C64 {
        self.get(0, 0)
    }

    pub fn to_dense(&self) -> CMatrix {
        CMatrix::from(&self.matrix)
    }

    pub fn adjoint(&self) -> Self {
        let mut matrix = self.matrix.transpose();
        matrix.values_mut().iter_mut().for_each(|v| *v = v.conj());
        Self {
            space: self.space.clone(),
            matrix,
        }
    }

    fn check_space(&self, other: &FockOperator) -> Result<()> {
        if self.space != other.space {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &FockOperator) -> Result<Self> {
        self.check_space(other)?;
        Ok(self.with_matrix(&self.matrix + &other.matrix))
    }

    pub fn sub(&self, other: &FockOperator) -> Result<Self> {
        self.check_space(other)?;
        Ok(self.with_matrix(&self.matrix - &other.matrix))
    }

    pub fn mul(&self, other: &FockOperator) -> Result<Self> {
        self.check_space(other)?;
        let product = &self.matrix * &other.matrix;
        self.space.budget().check(product.nnz())?;
        Ok(self.with_matrix(product))
    }

    pub fn scale(&self, factor: C64) -> Self {
        let mut matrix = self.matrix.clone();
        matrix.values_mut().iter_mut().for_each(|v| *v *= factor);
        self.with_matrix(matrix)
    }

    /// `self + shift * 1`.
    pub fn shift(&self, shift: C64) -> Self {
        let id = CsrMatrix::identity(self.dim()) * shift;
        self.with_matrix(&self.matrix + &id)
    }

    pub fn commutator(&self, other: &FockOperator) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn anticommutator(&self, other: &FockOperator) -> Result<Self> {
        self.mul(other)?.add(&other.mul(self)?)
    }

    pub fn apply(&self, v: &FockVector) -> Result<FockVector> {
        if v.space() != &self.space {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.space().dim(),
            });
        }
        let mut out = CVector::zeros(self.dim());
        for (row, lane) in self.matrix.row_iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for (&col, &value) in lane.col_indices().iter().zip(lane.values()) {
                acc += value * v.coeffs()[col];
            }
            out[row] = acc;
        }
        FockVector::new(self.space.clone(), out)
    }

    /// Identical sparsity pattern and bitwise-equal values.
    pub fn exactly_equals(&self, other: &FockOperator) -> bool {
        self.space == other.space
            && self.matrix.row_offsets() == other.matrix.row_offsets()
            && self.matrix.col_indices() == other.matrix.col_indices()
            && self.matrix.values() == other.matrix.values()
    }

    pub fn operator_norm(&self) -> f64 {
        operator_norm(&self.to_dense())
    }

    /// Dense compression `P X P` onto the listed basis states.
    pub fn compress(&self, indices: &[usize]) -> CMatrix {
        let mut position = vec![usize::MAX; self.dim()];
        for (k, &i) in indices.iter().enumerate() {
            position[i] = k;
        }
        let mut out = CMatrix::zeros(indices.len(), indices.len());
        for (k, &i) in indices.iter().enumerate() {
            let row = self.matrix.row(i);
            for (&j, &v) in row.col_indices().iter().zip(row.values()) {
                if position[j] != usize::MAX {
                    out[(k, position[j])] = v;
                }
            }
        }
        out
    }

    /// Nonzero pattern as `(row, col)` pairs.
    pub fn support(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.matrix
            .triplet_iter()
            .filter(|(_, _, v)| **v != C64::new(0.0, 0.0))
            .map(|(i, j, _)| (i, j))
    }

    fn with_matrix(&self, matrix: CsrMatrix<C64>) -> Self {
        Self {
            space: self.space.clone(),
            matrix,
        }
    }
}

/// Operator norm of `x - lambda * 1`.
pub fn distance_to_scalar(x: &FockOperator, lambda: C64) -> f64 {
    x.shift(-lambda).operator_norm()
}
