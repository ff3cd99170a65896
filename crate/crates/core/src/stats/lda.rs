use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{fix_sign, symmetric_eigen, DataMatrix, Matrix, ProjectionSet};
use crate::error::{Error, Result};

/// Relative cutoff for the within-class eigenvalues that are inverted.
const RETAIN: f64 = 1e-10;
/// Relative size below which a discriminant eigenvalue counts as zero.
const NULL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LdaModel {
    /// Distinct class ids, ascending.
    pub classes: Vec<u32>,
    pub class_sizes: Vec<u64>,
    pub class_means: Vec<Vec<f64>>,
    pub mean: Vec<f64>,
    pub within: Matrix,
    pub between: Matrix,
    /// Rank of the within-class scatter after thresholding.
    pub retained_rank: usize,
    /// Per direction: wᵀ S_b w for directions with zero within-class
    /// scatter, otherwise the whitened Fisher eigenvalue.
    pub eigenvalues: Vec<f64>,
    /// Unit vectors when `within_null`, otherwise scaled so wᵀ S_w w = 1.
    pub directions: Vec<Vec<f64>>,
    /// Directions carrying no discriminant information (at most
    /// classes - 1 are not null).
    pub null: Vec<bool>,
    /// Directions along which every class collapses to a single value.
    pub within_null: Vec<bool>,
}

impl LdaModel {
    pub fn positive_eigenvalues(&self) -> usize {
        self.null.iter().filter(|n| !**n).count()
    }
}

/// Fisher discriminant analysis. Singular within-class scatter is handled by
/// splitting feature space into its null space and its range.
pub fn lda_fit(x: &DataMatrix, labels: &[u32], k: usize) -> Result<(LdaModel, ProjectionSet)> {
    let d = x.cols();
    let m = x.rows();
    if labels.len() != m {
        return Err(Error::DegenerateLabels(format!("{} labels for {m} rows", labels.len())));
    }
    if k == 0 || k > d {
        return Err(Error::InvalidMatrix(format!("cannot keep {k} of {d} directions")));
    }
    let mut sizes: BTreeMap<u32, u64> = BTreeMap::new();
    for &l in labels {
        *sizes.entry(l).or_insert(0) += 1;
    }
    if sizes.len() < 2 {
        return Err(Error::DegenerateLabels(format!("{} distinct label(s); need at least 2", sizes.len())));
    }

    let mean = x.column_means();
    let mut within = Matrix::zeros(d, d);
    let mut between = Matrix::zeros(d, d);
    let mut class_means = Vec::with_capacity(sizes.len());
    for (&class, &size) in &sizes {
        let mut mu = vec![0.0; d];
        for (row, count) in x.distinct_rows(Some((labels, class))) {
            for (a, v) in mu.iter_mut().zip(&row) {
                *a += count as f64 * v;
            }
        }
        mu.iter_mut().for_each(|v| *v /= size as f64);
        let sw = x.scatter_about(&mu, Some((labels, class)));
        within.data.iter_mut().zip(&sw.data).for_each(|(a, b)| *a += b);
        let offset: Vec<f64> = mu.iter().zip(&mean).map(|(a, b)| a - b).collect();
        between.add_outer(&offset, size as f64);
        class_means.push(mu);
    }

    // Directions inside the null space of S_w that still carry between-class
    // scatter have an unbounded Fisher ratio, so they come first; the rest
    // come from S_w^{-1/2} S_b S_w^{-1/2} on the retained subspace.
    let ew = symmetric_eigen(&within)?;
    let lmax = ew.values.first().copied().unwrap_or(0.0).max(0.0);
    let (retained, nullspace): (Vec<usize>, Vec<usize>) =
        (0..d).partition(|&i| lmax > 0.0 && ew.values[i] > RETAIN * lmax);
    let basis = |cols: &[usize], scaled: bool| {
        let mut b = Matrix::zeros(d, cols.len());
        for (col, &i) in cols.iter().enumerate() {
            let scale = if scaled { ew.values[i].sqrt().recip() } else { 1.0 };
            for row in 0..d {
                b[(row, col)] = ew.vectors[(row, i)] * scale;
            }
        }
        b
    };
    let between_scale = symmetric_eigen(&between)?.values.first().copied().unwrap_or(0.0).max(0.0);

    let mut candidates: Vec<(Vec<f64>, f64, bool)> = Vec::new();
    for (cols, in_null) in [(&nullspace, true), (&retained, false)] {
        if cols.is_empty() {
            continue;
        }
        let b = basis(cols, !in_null);
        let eb = symmetric_eigen(&b.transpose().mul(&between)?.mul(&b)?)?;
        for (i, &value) in eb.values.iter().enumerate() {
            if in_null && value <= NULL * between_scale {
                break;
            }
            let q = eb.vector(i);
            let mut w: Vec<f64> = (0..d).map(|row| (0..q.len()).map(|c| b[(row, c)] * q[c]).sum()).collect();
            fix_sign(&mut w);
            candidates.push((w, value.max(0.0), in_null));
        }
    }

    let finite_top = candidates.iter().filter(|c| !c.2).map(|c| c.1).fold(0.0, f64::max);
    let mut eigenvalues = Vec::with_capacity(k);
    let mut directions = Vec::with_capacity(k);
    let mut null = Vec::with_capacity(k);
    let mut within_null = Vec::with_capacity(k);
    let mut pool = candidates.into_iter();
    for i in 0..k {
        let (w, value, in_null) = pool.next().unwrap_or((vec![0.0; d], 0.0, false));
        let vanishing = if in_null { false } else { finite_top == 0.0 || value <= NULL * finite_top };
        null.push(vanishing || i + 1 >= sizes.len());
        eigenvalues.push(value);
        directions.push(w);
        within_null.push(in_null);
    }

    let proj = x.project(&mean, &directions);
    let model = LdaModel {
        classes: sizes.keys().copied().collect(),
        class_sizes: sizes.values().copied().collect(),
        class_means,
        mean,
        within,
        between,
        retained_rank: retained.len(),
        eigenvalues,
        directions,
        null,
        within_null,
    };
    Ok((model, proj))
}
