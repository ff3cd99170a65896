//! The dihedral group of the square and orbit representatives.

use serde::{Deserialize, Serialize};

use crate::square::Square;

/// One of the eight rotations and reflections of a square grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum D4Transform {
    Identity,
    /// Quarter turn clockwise.
    Rot90,
    Rot180,
    Rot270,
    /// Mirror left to right.
    FlipHorizontal,
    /// Mirror top to bottom.
    FlipVertical,
    /// Transpose.
    FlipMainDiagonal,
    FlipAntiDiagonal,
}

impl D4Transform {
    pub const ALL: [D4Transform; 8] = [
        D4Transform::Identity,
        D4Transform::Rot90,
        D4Transform::Rot180,
        D4Transform::Rot270,
        D4Transform::FlipHorizontal,
        D4Transform::FlipVertical,
        D4Transform::FlipMainDiagonal,
        D4Transform::FlipAntiDiagonal,
    ];

    /// Where the cell at `(row, col)` lands.
    pub fn map(self, n: usize, row: usize, col: usize) -> (usize, usize) {
        let last = n - 1;
        match self {
            D4Transform::Identity => (row, col),
            D4Transform::Rot90 => (col, last - row),
            D4Transform::Rot180 => (last - row, last - col),
            D4Transform::Rot270 => (last - col, row),
            D4Transform::FlipHorizontal => (row, last - col),
            D4Transform::FlipVertical => (last - row, col),
            D4Transform::FlipMainDiagonal => (col, row),
            D4Transform::FlipAntiDiagonal => (last - col, last - row),
        }
    }

    /// `self.then(other)` applies `self` first and `other` second.
    pub fn then(self, other: D4Transform) -> D4Transform {
        // Two probe cells pin down a group element.
        let n = 3;
        let probe = |t: D4Transform| (t.map(n, 0, 0), t.map(n, 0, 1));
        let (a, b) = probe(self);
        let target = (other.map(n, a.0, a.1), other.map(n, b.0, b.1));
        D4Transform::ALL.into_iter().find(|&t| probe(t) == target).expect("D4 is closed under composition")
    }

    pub fn inverse(self) -> D4Transform {
        match self {
            D4Transform::Rot90 => D4Transform::Rot270,
            D4Transform::Rot270 => D4Transform::Rot90,
            t => t,
        }
    }

    /// `gather[dst] = src` for row-major indices of an order-`n` grid.
    pub fn gather_indices(self, n: usize) -> Vec<usize> {
        let mut gather = vec![0; n * n];
        for r in 0..n {
            for c in 0..n {
                let (r2, c2) = self.map(n, r, c);
                gather[r2 * n + c2] = r * n + c;
            }
        }
        gather
    }
}

/// A square grid of values the dihedral group can act on.
pub trait Grid: Sized {
    fn order(&self) -> usize;
    fn transformed(&self, t: D4Transform) -> Self;
}

pub fn apply_d4<G: Grid>(grid: &G, t: D4Transform) -> G {
    grid.transformed(t)
}

pub(crate) fn permute<T: Copy>(values: &[T], n: usize, t: D4Transform) -> Vec<T> {
    t.gather_indices(n).into_iter().map(|src| values[src]).collect()
}

impl Grid for Square {
    fn order(&self) -> usize {
        Square::order(self)
    }

    fn transformed(&self, t: D4Transform) -> Self {
        let n = Square::order(self);
        Square::from_cells_unchecked(n, permute(self.cells(), n, t))
    }
}

/// All eight images in [`D4Transform::ALL`] order.
pub fn orbit<G: Grid>(grid: &G) -> Vec<G> {
    D4Transform::ALL.iter().map(|&t| grid.transformed(t)).collect()
}

/// The D4 image with the lexicographically smallest row-major cells.
///
/// For a square with distinct entries this puts the smallest corner at the
/// top left and makes `a[0][1] < a[1][0]` (Frénicle standard form).
pub fn frenicle_form(sq: &Square) -> Square {
    orbit(sq).into_iter().min_by(|a, b| a.cells().cmp(b.cells())).expect("orbit is non-empty")
}

/// Cheap test for `frenicle_form(sq) == sq`, valid because entries are distinct.
pub fn is_frenicle_form(sq: &Square) -> bool {
    let n = sq.order();
    let corner = sq.get(0, 0);
    corner < sq.get(0, n - 1)
        && corner < sq.get(n - 1, 0)
        && corner < sq.get(n - 1, n - 1)
        && sq.get(0, 1) < sq.get(1, 0)
}
