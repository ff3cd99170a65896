use std::collections::HashMap;

use serde::{Deserialize, Serialize};

/// Default link distance as a fraction of the bounding-box diagonal.
pub const DEFAULT_EPS_FRACTION: f64 = 0.05;

/// Points closer than this, relative to the largest coordinate magnitude,
/// count as one position. Projections of different patterns can agree
/// exactly in real arithmetic and differ only by rounding.
pub const COINCIDENCE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionReport {
    pub eps: f64,
    /// Positions after merging coincident points.
    pub distinct_points: usize,
    pub regions: usize,
    /// Point counts (with multiplicity) per region, descending.
    pub sizes: Vec<u64>,
}

/// Single-linkage clustering: points closer than `eps` share a region.
/// `eps` defaults to 5% of the bounding-box diagonal.
pub fn connected_regions(points: &[[f64; 2]], eps: Option<f64>) -> RegionReport {
    let mut distinct: Vec<([f64; 2], u64)> = Vec::new();
    let mut seen: HashMap<(u64, u64), usize> = HashMap::new();
    for p in points {
        let key = (p[0].to_bits(), p[1].to_bits());
        match seen.get(&key) {
            Some(&i) => distinct[i].1 += 1,
            None => {
                seen.insert(key, distinct.len());
                distinct.push((*p, 1));
            }
        }
    }
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for (p, _) in &distinct {
        for a in 0..2 {
            lo[a] = lo[a].min(p[a]);
            hi[a] = hi[a].max(p[a]);
        }
    }
    let eps = eps.unwrap_or_else(|| {
        if distinct.is_empty() {
            0.0
        } else {
            DEFAULT_EPS_FRACTION * ((hi[0] - lo[0]).powi(2) + (hi[1] - lo[1]).powi(2)).sqrt()
        }
    });
    let scale = lo.iter().chain(&hi).filter(|v| v.is_finite()).fold(1.0f64, |m, v| m.max(v.abs()));
    let sizes = link(&distinct, eps);
    let positions = link(&distinct, COINCIDENCE_TOLERANCE * scale).len();
    RegionReport { eps, distinct_points: positions, regions: sizes.len(), sizes }
}

/// Cluster sizes (descending) of the single-linkage components at `eps`.
fn link(distinct: &[([f64; 2], u64)], eps: f64) -> Vec<u64> {
    let mut parent: Vec<usize> = (0..distinct.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    if eps > 0.0 {
        let cell = |p: &[f64; 2]| ((p[0] / eps).floor() as i64, (p[1] / eps).floor() as i64);
        let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for (i, (p, _)) in distinct.iter().enumerate() {
            grid.entry(cell(p)).or_default().push(i);
        }
        for (i, (p, _)) in distinct.iter().enumerate() {
            let (cx, cy) = cell(p);
            for dx in -1..=1 {
                for dy in -1..=1 {
                    for &j in grid.get(&(cx + dx, cy + dy)).into_iter().flatten() {
                        let q = distinct[j].0;
                        if j > i && (p[0] - q[0]).hypot(p[1] - q[1]) <= eps {
                            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                            parent[a.max(b)] = a.min(b);
                        }
                    }
                }
            }
        }
    }
    let mut sizes: HashMap<usize, u64> = HashMap::new();
    for i in 0..distinct.len() {
        let root = find(&mut parent, i);
        *sizes.entry(root).or_insert(0) += distinct[i].1;
    }
    let mut sizes: Vec<u64> = sizes.into_values().collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_clusters() {
        let pts = [[0.0, 0.0], [0.1, 0.0], [0.0, 0.0], [10.0, 10.0], [10.0, 10.2]];
        let r = connected_regions(&pts, Some(0.5));
        assert_eq!(r.regions, 2);
        assert_eq!(r.sizes, vec![3, 2]);
        assert_eq!(r.distinct_points, 4);
        let r = connected_regions(&pts, None);
        assert_eq!(r.regions, 2);
        assert_eq!(connected_regions(&[], None).regions, 0);
    }

    #[test]
    fn rounding_noise_is_one_position() {
        let pts = [[1.058743248844817, 0.930743632125357], [1.0587432488448163, 0.9307436321253571], [2.0, 0.0]];
        assert_eq!(connected_regions(&pts, Some(0.01)).distinct_points, 2);
    }
}
