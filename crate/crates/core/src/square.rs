use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::FranklinRules;
use crate::lines;

/// Largest order whose cell values still fit in a byte.
pub const MAX_ORDER: usize = 15;

/// Common line sum `n(n²+1)/2` of an order-`n` magic square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MagicConstant(u64);

impl MagicConstant {
    pub fn for_order(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder(n));
        }
        let n = n as u64;
        Ok(MagicConstant(n * (n * n + 1) / 2))
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

pub fn magic_constant(n: usize) -> Result<u64> {
    MagicConstant::for_order(n).map(MagicConstant::value)
}

/// An order-`n` grid holding each of `1..=n²` exactly once, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Square {
    order: usize,
    cells: Vec<u8>,
}

impl Square {
    pub fn new(order: usize, cells: Vec<u8>) -> Result<Self> {
        if !(3..=MAX_ORDER).contains(&order) {
            return Err(Error::InvalidOrder(order));
        }
        let nn = order * order;
        if cells.len() != nn {
            return Err(Error::MalformedSquare(format!("expected {nn} cells for order {order}, got {}", cells.len())));
        }
        let mut seen = vec![false; nn + 1];
        for &v in &cells {
            let v = v as usize;
            if v == 0 || v > nn {
                return Err(Error::MalformedSquare(format!("value {v} outside 1..={nn}")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::MalformedSquare(format!("duplicate value {v}")));
            }
        }
        Ok(Square { order, cells })
    }

    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let order = rows.len();
        let mut cells = Vec::with_capacity(order * order);
        for row in rows {
            let row = row.as_ref();
            if row.len() != order {
                return Err(Error::MalformedSquare(format!("row of length {} in a grid with {order} rows", row.len())));
            }
            cells.extend_from_slice(row);
        }
        Square::new(order, cells)
    }

    /// Skips validation; callers guarantee the permutation invariant.
    pub(crate) fn from_cells_unchecked(order: usize, cells: Vec<u8>) -> Self {
        debug_assert_eq!(cells.len(), order * order);
        Square { order, cells }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.cells[row * self.order + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.cells.chunks(self.order)
    }

    pub fn magic_constant(&self) -> u64 {
        let n = self.order as u64;
        n * (n * n + 1) / 2
    }

    fn line_sum(&self, line: &[usize]) -> u64 {
        line.iter().map(|&i| self.cells[i] as u64).sum()
    }

    fn all_sum_to(&self, lines: &[lines::Line], target: u64) -> bool {
        lines.iter().all(|l| self.line_sum(l) == target)
    }

    /// Rows, columns and both main diagonals all sum to the magic constant.
    pub fn is_magic(&self) -> bool {
        let n = self.order;
        let m = self.magic_constant();
        self.all_sum_to(&lines::rows(n), m)
            && self.all_sum_to(&lines::columns(n), m)
            && self.all_sum_to(&lines::main_diagonals(n), m)
    }

    /// Every pair of cells symmetric about the centre sums to `n²+1`.
    pub fn is_associative(&self) -> bool {
        let nn = self.cells.len();
        let target = (nn + 1) as u16;
        (0..nn).all(|i| self.cells[i] as u16 + self.cells[nn - 1 - i] as u16 == target)
    }

    /// All `2n` broken diagonals sum to the magic constant.
    pub fn is_pandiagonal(&self) -> bool {
        self.all_sum_to(&lines::broken_diagonals(self.order), self.magic_constant())
    }

    pub fn is_ultra(&self) -> bool {
        self.is_associative() && self.is_pandiagonal()
    }

    /// Half-lines, bent diagonals and 2×2 blocks as selected by `rules`.
    pub fn is_franklin(&self, rules: &FranklinRules) -> Result<bool> {
        let n = self.order;
        if !n.is_multiple_of(4) {
            return Err(Error::UnsupportedOrder { order: n, what: "Franklin squares" });
        }
        let m = self.magic_constant();
        let ok = self.all_sum_to(&lines::half_lines(n), m / 2)
            && self.all_sum_to(&lines::bent_diagonals(n, rules.bent), m)
            && self.all_sum_to(&lines::blocks(n, rules.blocks), 4 * m / n as u64)
            && (!rules.main_diagonals || self.all_sum_to(&lines::main_diagonals(n), m));
        Ok(ok)
    }

    /// Replaces every cell `x` by `n²+1-x`.
    pub fn complement(&self) -> Square {
        let top = (self.cells.len() + 1) as u8;
        Square { order: self.order, cells: self.cells.iter().map(|&v| top - v).collect() }
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = if self.cells.len() > 9 { 2 } else { 1 };
        for (r, row) in self.rows().enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            for (c, v) in row.iter().enumerate() {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v:>width$}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Square;

    pub fn lo_shu() -> Square {
        Square::from_rows(&[[2, 7, 6], [9, 5, 1], [4, 3, 8]]).unwrap()
    }

    pub fn durer() -> Square {
        Square::from_rows(&[[16, 3, 2, 13], [5, 10, 11, 8], [9, 6, 7, 12], [4, 15, 14, 1]]).unwrap()
    }

    pub fn pandiagonal5() -> Square {
        Square::from_rows(&[
            [1, 15, 24, 8, 17],
            [23, 7, 16, 5, 14],
            [20, 4, 13, 22, 6],
            [12, 21, 10, 19, 3],
            [9, 18, 2, 11, 25],
        ])
        .unwrap()
    }

    pub fn franklin8() -> Square {
        Square::from_rows(&[
            [52, 61, 4, 13, 20, 29, 36, 45],
            [14, 3, 62, 51, 46, 35, 30, 19],
            [53, 60, 5, 12, 21, 28, 37, 44],
            [11, 6, 59, 54, 43, 38, 27, 22],
            [55, 58, 7, 10, 23, 26, 39, 42],
            [9, 8, 57, 56, 41, 40, 25, 24],
            [50, 63, 2, 15, 18, 31, 34, 47],
            [16, 1, 64, 49, 48, 33, 32, 17],
        ])
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::lines::{BentRule, BlockRule};

    #[test]
    fn magic_constants() {
        assert_eq!(magic_constant(4).unwrap(), 34);
        assert_eq!(magic_constant(5).unwrap(), 65);
        assert_eq!(magic_constant(8).unwrap(), 260);
        assert!(matches!(magic_constant(0), Err(Error::InvalidOrder(0))));
        for n in [4, 8] {
            assert_eq!(magic_constant(n).unwrap() % 2, 0);
        }
        for n in [3, 5] {
            assert_eq!(magic_constant(n).unwrap() % 2, 1);
        }
    }

    #[test]
    fn construction_rejects_bad_cells() {
        let dup = Square::from_rows(&[[2, 7, 6], [9, 5, 1], [4, 3, 9]]);
        assert!(matches!(dup, Err(Error::MalformedSquare(_))));
        assert!(Square::new(3, vec![1, 2, 3]).is_err());
        assert!(Square::new(3, vec![0, 2, 3, 4, 5, 6, 7, 8, 9]).is_err());
        assert!(Square::new(3, vec![10, 2, 3, 4, 5, 6, 7, 8, 9]).is_err());
        assert!(Square::from_rows(&[vec![1u8, 2], vec![3, 4]]).is_err());
    }

    #[test]
    fn lo_shu_predicates() {
        let sq = lo_shu();
        assert!(sq.is_magic());
        assert!(sq.is_associative());
        assert!(!sq.is_pandiagonal());
        let swapped = Square::from_rows(&[[7, 2, 6], [9, 5, 1], [4, 3, 8]]).unwrap();
        assert!(!swapped.is_magic());
    }

    #[test]
    fn durer_predicates() {
        let sq = durer();
        assert!(sq.is_magic());
        assert!(sq.is_associative());
        // broken diagonal 3 + 11 + 12 + 4 = 30
        assert!(!sq.is_pandiagonal());
        assert!(!sq.is_franklin(&FranklinRules::default()).unwrap());
    }

    #[test]
    fn pandiagonal_example() {
        let sq = pandiagonal5();
        let m = sq.magic_constant();
        for line in lines::broken_diagonals(5) {
            assert_eq!(line.iter().map(|&i| sq.cells()[i] as u64).sum::<u64>(), m);
        }
        assert!(sq.is_magic());
        assert!(sq.is_pandiagonal());
    }

    #[test]
    fn franklin_historical_square() {
        let sq = franklin8();
        // Franklin's own square fails the main diagonals.
        assert!(!sq.is_magic());
        let mut rules = FranklinRules { main_diagonals: false, blocks: BlockRule::Aligned, bent: BentRule::Wrapped };
        for blocks in [BlockRule::Aligned, BlockRule::Overlapping, BlockRule::Wrapped] {
            rules.blocks = blocks;
            assert!(sq.is_franklin(&rules).unwrap(), "{blocks:?}");
        }
        rules.main_diagonals = true;
        assert!(!sq.is_franklin(&rules).unwrap());
    }

    #[test]
    fn franklin_rejects_odd_orders() {
        let err = pandiagonal5().is_franklin(&FranklinRules::default());
        assert!(matches!(err, Err(Error::UnsupportedOrder { order: 5, .. })));
    }

    #[test]
    fn complement_examples() {
        let c = lo_shu().complement();
        assert_eq!(c, Square::from_rows(&[[8, 3, 4], [1, 5, 9], [6, 7, 2]]).unwrap());
        assert_eq!(c.complement(), lo_shu());
        assert!(durer().complement().is_magic());
        assert!(durer().complement().is_associative());
    }
}
