use serde::{Deserialize, Serialize};

use super::{symmetric_eigen, DataMatrix, Matrix, ProjectionSet};
use crate::error::{Error, Result};

/// Covariance eigenvalues within this much below zero are noise.
const CLAMP: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcaModel {
    pub mean: Vec<f64>,
    /// All `d` covariance eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
    /// The top `k` unit eigenvectors.
    pub components: Vec<Vec<f64>>,
    /// Rows the model was fitted on.
    pub rows: usize,
}

impl PcaModel {
    pub fn explained_ratio(&self) -> Vec<f64> {
        let total: f64 = self.eigenvalues.iter().sum();
        self.eigenvalues.iter().map(|v| if total > 0.0 { v / total } else { 0.0 }).collect()
    }

    pub fn project_row(&self, row: &[f64]) -> Vec<f64> {
        self.components
            .iter()
            .map(|w| row.iter().zip(&self.mean).zip(w).map(|((x, m), w)| (x - m) * w).sum::<f64>() + 0.0)
            .collect()
    }
}

/// Sample covariance with divisor `m - 1`.
pub fn covariance(x: &DataMatrix) -> Result<Matrix> {
    let m = x.rows();
    if m < 2 {
        return Err(Error::InsufficientData(format!("{m} rows; PCA needs at least 2")));
    }
    let mean = x.column_means();
    let mut c = x.scatter_about(&mean, None);
    let denom = (m - 1) as f64;
    c.data.iter_mut().for_each(|v| *v /= denom);
    Ok(c)
}

/// Principal components; the projection set holds the first two axes
/// (the second is zero when `k` is 1).
pub fn pca_fit(x: &DataMatrix, k: usize) -> Result<(PcaModel, ProjectionSet)> {
    let d = x.cols();
    if k == 0 || k > d {
        return Err(Error::InvalidMatrix(format!("cannot keep {k} of {d} components")));
    }
    let c = covariance(x)?;
    let mean = x.column_means();
    let eig = symmetric_eigen(&c)?;
    let eigenvalues = eig.values.iter().map(|&v| if (-CLAMP..0.0).contains(&v) { 0.0 } else { v }).collect();
    let components: Vec<Vec<f64>> = (0..k).map(|i| eig.vector(i)).collect();
    let proj = x.project(&mean, &components);
    Ok((PcaModel { mean, eigenvalues, components, rows: x.rows() }, proj))
}
