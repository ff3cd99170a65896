//! Dense linear algebra and projections over pattern datasets.

mod eigen;
mod hist;
mod lda;
mod pca;
mod regions;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parity::ParityMatrix;

pub use eigen::{symmetric_eigen, Eigen, MAX_SWEEPS};
pub use hist::{histogram, normal_overlay, Histogram, NormalOverlay, OVERLAY_SAMPLES};
pub use lda::{lda_fit, LdaModel};
pub use pca::{pca_fit, PcaModel};
pub use regions::{connected_regions, RegionReport, COINCIDENCE_TOLERANCE};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidMatrix(format!("{} values for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Matrix::zeros(d, d);
        for i in 0..d {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidMatrix("ragged rows".into()));
        }
        Ok(Matrix { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidMatrix(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows).map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn norm_frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Adds `weight * v vᵀ`.
    pub(crate) fn add_outer(&mut self, v: &[f64], weight: f64) {
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0.0 {
                continue;
            }
            let row = &mut self.data[i * self.cols..(i + 1) * self.cols];
            for (r, &vj) in row.iter_mut().zip(v) {
                *r += weight * vi * vj;
            }
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// One row per square, one column per cell. Each row carries the pattern
/// string it came from and a class label (its D4-canonical pattern when
/// built from parity matrices).
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    x: Matrix,
    patterns: Vec<String>,
    labels: Vec<String>,
}

impl DataMatrix {
    /// Untagged data; patterns and labels are empty strings.
    pub fn new(x: Matrix) -> Result<Self> {
        if x.data.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidMatrix("non-finite entry".into()));
        }
        let m = x.rows;
        Ok(DataMatrix { x, patterns: vec![String::new(); m], labels: vec![String::new(); m] })
    }

    pub fn from_patterns<'a, I>(patterns: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a ParityMatrix>,
    {
        let mut data = Vec::new();
        let mut strings = Vec::new();
        let mut labels = Vec::new();
        let mut cols = None;
        for pm in patterns {
            let nn = pm.order() * pm.order();
            match cols {
                None => cols = Some(nn),
                Some(c) if c != nn => return Err(Error::MixedOrder { expected: c, found: nn }),
                _ => {}
            }
            data.extend((0..nn).map(|i| (pm.bits() >> i & 1) as f64));
            strings.push(pm.pattern_string());
            labels.push(pm.d4_canonical().pattern_string());
        }
        let cols = cols.unwrap_or(0);
        let x = Matrix::new(strings.len(), cols, data)?;
        Ok(DataMatrix { x, patterns: strings, labels })
    }

    pub fn rows(&self) -> usize {
        self.x.rows
    }

    pub fn cols(&self) -> usize {
        self.x.cols
    }

    pub fn matrix(&self) -> &Matrix {
        &self.x
    }

    pub fn row(&self, i: usize) -> &[f64] {
        self.x.row(i)
    }

    pub fn patterns(&self) -> &[String] {
        &self.patterns
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Class ids numbered by the sorted order of the distinct labels,
    /// together with those labels.
    pub fn class_ids(&self) -> (Vec<u32>, Vec<String>) {
        let names: Vec<String> =
            self.labels.iter().cloned().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        let ids = self.labels.iter().map(|l| names.binary_search(l).expect("label present") as u32).collect();
        (ids, names)
    }

    pub fn column_means(&self) -> Vec<f64> {
        let mut mean = vec![0.0; self.cols()];
        for (row, count) in self.distinct_rows(None) {
            for (m, v) in mean.iter_mut().zip(&row) {
                *m += count as f64 * v;
            }
        }
        let m = self.rows().max(1) as f64;
        mean.iter_mut().for_each(|v| *v /= m);
        mean
    }

    /// Identical rows (optionally within one class) grouped with their
    /// multiplicity, in a fixed order so sums are reproducible.
    pub(crate) fn distinct_rows(&self, class: Option<(&[u32], u32)>) -> Vec<(Vec<f64>, u64)> {
        let mut groups: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
        for i in 0..self.rows() {
            if let Some((ids, c)) = class {
                if ids[i] != c {
                    continue;
                }
            }
            let key = self.row(i).iter().map(|v| v.to_bits()).collect();
            *groups.entry(key).or_insert(0) += 1;
        }
        groups.into_iter().map(|(k, n)| (k.into_iter().map(f64::from_bits).collect(), n)).collect()
    }

    /// Σ (x - center)(x - center)ᵀ over the selected rows.
    pub(crate) fn scatter_about(&self, center: &[f64], class: Option<(&[u32], u32)>) -> Matrix {
        let d = self.cols();
        let mut s = Matrix::zeros(d, d);
        let mut centered = vec![0.0; d];
        for (row, count) in self.distinct_rows(class) {
            for ((c, v), m) in centered.iter_mut().zip(&row).zip(center) {
                *c = v - m;
            }
            s.add_outer(&centered, count as f64);
        }
        s
    }

    pub(crate) fn project(&self, center: &[f64], directions: &[Vec<f64>]) -> ProjectionSet {
        let points = (0..self.rows())
            .map(|i| {
                let row = self.row(i);
                let axis = |k: usize| {
                    directions.get(k).map_or(0.0, |w| {
                        let dot: f64 = row.iter().zip(center).zip(w).map(|((x, m), w)| (x - m) * w).sum();
                        dot + 0.0
                    })
                };
                ProjectedPoint {
                    pattern: self.patterns[i].clone(),
                    label: self.labels[i].clone(),
                    axis1: axis(0),
                    axis2: axis(1),
                }
            })
            .collect();
        ProjectionSet { points }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectedPoint {
    pub pattern: String,
    pub label: String,
    pub axis1: f64,
    pub axis2: f64,
}

/// Two-dimensional coordinates, one per data row.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ProjectionSet {
    pub points: Vec<ProjectedPoint>,
}

impl ProjectionSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn coordinates(&self) -> Vec<[f64; 2]> {
        self.points.iter().map(|p| [p.axis1, p.axis2]).collect()
    }

    /// Number of distinct positions, merging points that differ only by
    /// rounding (see [`COINCIDENCE_TOLERANCE`]).
    pub fn distinct_points(&self) -> usize {
        connected_regions(&self.coordinates(), Some(0.0)).distinct_points
    }

    /// Number of distinct patterns among the projected rows.
    pub fn distinct_patterns(&self) -> usize {
        self.points.iter().map(|p| p.pattern.as_str()).collect::<std::collections::HashSet<_>>().len()
    }

    pub fn axis1(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.axis1).collect()
    }

    pub fn axis2(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.axis2).collect()
    }
}

/// Flips `v` so its largest-magnitude entry (the first, on ties) is positive.
pub(crate) fn fix_sign(v: &mut [f64]) {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v.get(best).is_some_and(|&x| x < 0.0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}
