//! Cell-index sets ("lines") whose sums the various families constrain.
//!
//! Every function returns row-major cell indices for an order-`n` grid. The
//! predicates in [`crate::square`] and the search in [`crate::enumerate`] are
//! both built from these, so the two cannot drift apart.

use serde::{Deserialize, Serialize};

pub type Line = Vec<usize>;

pub fn rows(n: usize) -> Vec<Line> {
    (0..n).map(|r| (0..n).map(|c| r * n + c).collect()).collect()
}

pub fn columns(n: usize) -> Vec<Line> {
    (0..n).map(|c| (0..n).map(|r| r * n + c).collect()).collect()
}

pub fn main_diagonals(n: usize) -> Vec<Line> {
    vec![(0..n).map(|i| i * n + i).collect(), (0..n).map(|i| i * n + (n - 1 - i)).collect()]
}

/// The `2n` wrapped diagonals; shift 0 gives the two main diagonals.
pub fn broken_diagonals(n: usize) -> Vec<Line> {
    let mut out = Vec::with_capacity(2 * n);
    for s in 0..n {
        out.push((0..n).map(|i| i * n + (i + s) % n).collect());
        out.push((0..n).map(|i| i * n + (s + n - i % n) % n).collect());
    }
    out
}

/// Left and right halves of every row, top and bottom halves of every column.
pub fn half_lines(n: usize) -> Vec<Line> {
    let h = n / 2;
    let mut out = Vec::with_capacity(4 * n);
    for r in 0..n {
        out.push((0..h).map(|c| r * n + c).collect());
        out.push((h..n).map(|c| r * n + c).collect());
    }
    for c in 0..n {
        out.push((0..h).map(|r| r * n + c).collect());
        out.push((h..n).map(|r| r * n + c).collect());
    }
    out
}

/// Which bent diagonals a Franklin square must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BentRule {
    /// All `n` cyclic shifts in each of the four orientations (`4n` paths).
    Wrapped,
    /// Only the shifts that stay inside the grid (`n/2 + 1` per orientation).
    Unwrapped,
}

/// V-shaped paths of `n` cells. A downward V has its arms on the top edge
/// and meets in the middle rows; the other three orientations are its
/// rotations. Shifting slides a V along its axis, wrapping cyclically.
pub fn bent_diagonals(n: usize, rule: BentRule) -> Vec<Line> {
    let h = n / 2;
    let shifts: Vec<usize> = match rule {
        BentRule::Wrapped => (0..n).collect(),
        // A V spans `h` rows, so shifts up to `h` stay inside the grid.
        BentRule::Unwrapped => (0..=h).collect(),
    };
    // (depth, offset across the opening) for the two arms.
    let arm: Vec<(usize, usize)> = (0..h).map(|k| (k, k)).chain((0..h).map(|k| (h - 1 - k, h + k))).collect();
    let mut out = Vec::with_capacity(4 * shifts.len());
    for s in shifts {
        let near = |d: usize| (d + s) % n;
        let far = |d: usize| (n - 1 - d + n - s) % n;
        let down = arm.iter().map(|&(d, o)| near(d) * n + o).collect();
        let up = arm.iter().map(|&(d, o)| far(d) * n + o).collect();
        let right = arm.iter().map(|&(d, o)| o * n + near(d)).collect();
        let left = arm.iter().map(|&(d, o)| o * n + far(d)).collect();
        out.extend([down, up, right, left]);
    }
    out
}

/// Which 2×2 sub-squares a Franklin square must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockRule {
    /// The `n²/4` non-overlapping blocks on even coordinates.
    Aligned,
    /// All `(n-1)²` contiguous windows.
    Overlapping,
    /// All `n²` windows, wrapping around both edges.
    Wrapped,
}

pub fn blocks(n: usize, rule: BlockRule) -> Vec<Line> {
    let window = |r: usize, c: usize| {
        let (r1, c1) = ((r + 1) % n, (c + 1) % n);
        vec![r * n + c, r * n + c1, r1 * n + c, r1 * n + c1]
    };
    let mut out = Vec::new();
    match rule {
        BlockRule::Aligned => {
            for r in (0..n).step_by(2) {
                for c in (0..n).step_by(2) {
                    out.push(window(r, c));
                }
            }
        }
        BlockRule::Overlapping => {
            for r in 0..n - 1 {
                for c in 0..n - 1 {
                    out.push(window(r, c));
                }
            }
        }
        BlockRule::Wrapped => {
            for r in 0..n {
                for c in 0..n {
                    out.push(window(r, c));
                }
            }
        }
    }
    out
}
