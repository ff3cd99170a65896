use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const OVERLAY_SAMPLES: usize = 256;

/// Equal-width bins; `edges` has one more entry than `counts`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Bins span `[min, max]` with the last bin closed. A constant input gives a
/// single zero-width bin.
pub fn histogram(values: &[f64], bins: usize) -> Result<Histogram> {
    if values.is_empty() {
        return Err(Error::InsufficientData("histogram of no values".into()));
    }
    if bins == 0 {
        return Err(Error::InsufficientData("histogram with zero bins".into()));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidMatrix("non-finite value".into()));
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo == hi {
        return Ok(Histogram { edges: vec![lo, hi], counts: vec![values.len() as u64] });
    }
    let width = (hi - lo) / bins as f64;
    let mut edges: Vec<f64> = (0..bins).map(|i| lo + width * i as f64).collect();
    edges.push(hi);
    let mut counts = vec![0u64; bins];
    for &v in values {
        let i = (((v - lo) / width) as usize).min(bins - 1);
        counts[i] += 1;
    }
    Ok(Histogram { edges, counts })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalOverlay {
    pub mean: f64,
    pub stddev: f64,
    pub xs: Vec<f64>,
    pub density: Vec<f64>,
}

/// Sample mean and deviation (divisor m - 1) with the matching normal
/// density sampled across ±4σ.
pub fn normal_overlay(values: &[f64]) -> Result<NormalOverlay> {
    if values.len() < 2 {
        return Err(Error::InsufficientData(format!("{} values; need at least 2", values.len())));
    }
    let m = values.len() as f64;
    let mean = values.iter().sum::<f64>() / m;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (m - 1.0);
    if var.is_nan() || var <= 0.0 {
        return Err(Error::DegenerateDistribution("zero variance".into()));
    }
    let stddev = var.sqrt();
    let lo = mean - 4.0 * stddev;
    let step = 8.0 * stddev / (OVERLAY_SAMPLES - 1) as f64;
    let norm = (2.0 * std::f64::consts::PI).sqrt() * stddev;
    let xs: Vec<f64> = (0..OVERLAY_SAMPLES).map(|i| lo + step * i as f64).collect();
    let density = xs
        .iter()
        .map(|x| {
            let z = (x - mean) / stddev;
            (-0.5 * z * z).exp() / norm
        })
        .collect();
    Ok(NormalOverlay { mean, stddev, xs, density })
}
