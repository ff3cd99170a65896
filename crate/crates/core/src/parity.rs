//! Odd/even patterns of squares and their tallies.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::square::Square;
use crate::symmetry::{D4Transform, Grid};

/// Row-major bit grid of order `n ≤ 8`; bit `i` is set iff cell `i` is odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParityMatrix {
    order: usize,
    bits: u64,
}

impl ParityMatrix {
    pub fn new(order: usize, bits: u64) -> Result<Self> {
        if order == 0 || order > 8 {
            return Err(Error::InvalidOrder(order));
        }
        let nn = order * order;
        if nn < 64 && bits >> nn != 0 {
            return Err(Error::MalformedPattern(format!("bits beyond {nn} cells")));
        }
        Ok(ParityMatrix { order, bits })
    }

    pub fn zeros(order: usize) -> Result<Self> {
        ParityMatrix::new(order, 0)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits >> (row * self.order + col) & 1 == 1
    }

    pub fn count_ones(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Number of set bits among `cells`.
    pub fn ones_in(&self, cells: &[usize]) -> u32 {
        cells.iter().filter(|&&c| self.bits >> c & 1 == 1).count() as u32
    }

    /// Flips every cell.
    pub fn not(&self) -> ParityMatrix {
        let nn = self.order * self.order;
        let mask = if nn == 64 { u64::MAX } else { (1u64 << nn) - 1 };
        ParityMatrix { order: self.order, bits: !self.bits & mask }
    }

    pub fn pattern_string(&self) -> String {
        (0..self.order * self.order).map(|i| if self.bits >> i & 1 == 1 { '1' } else { '0' }).collect()
    }

    pub fn parse(s: &str, order: usize) -> Result<Self> {
        let nn = order * order;
        if s.len() != nn {
            return Err(Error::MalformedPattern(format!(
                "pattern of length {} for order {order} (expected {nn})",
                s.len()
            )));
        }
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                other => return Err(Error::MalformedPattern(format!("unexpected character {other:?}"))),
            }
        }
        ParityMatrix::new(order, bits)
    }

    /// Lexicographically smallest pattern string among the eight images.
    pub fn d4_canonical(&self) -> ParityMatrix {
        D4Transform::ALL.iter().map(|&t| self.transformed(t)).min_by(lex_cmp).expect("eight images")
    }
}

/// Compares pattern strings without building them: the first differing cell
/// decides, and `'0' < '1'`.
fn lex_cmp(a: &ParityMatrix, b: &ParityMatrix) -> std::cmp::Ordering {
    let diff = a.bits ^ b.bits;
    if diff == 0 {
        return std::cmp::Ordering::Equal;
    }
    let first = diff.trailing_zeros();
    if a.bits >> first & 1 == 0 {
        std::cmp::Ordering::Less
    } else {
        std::cmp::Ordering::Greater
    }
}

impl PartialOrd for ParityMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by order, then by pattern string.
impl Ord for ParityMatrix {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order.cmp(&other.order).then_with(|| lex_cmp(self, other))
    }
}

impl Grid for ParityMatrix {
    fn order(&self) -> usize {
        self.order
    }

    fn transformed(&self, t: D4Transform) -> Self {
        let gather = t.gather_indices(self.order);
        let bits = gather.iter().enumerate().fold(0u64, |acc, (dst, &src)| acc | (self.bits >> src & 1) << dst);
        ParityMatrix { order: self.order, bits }
    }
}

impl fmt::Display for ParityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pattern_string())
    }
}

pub fn to_parity(sq: &Square) -> ParityMatrix {
    let bits = sq.cells().iter().enumerate().fold(0u64, |acc, (i, &v)| acc | ((v & 1) as u64) << i);
    ParityMatrix { order: sq.order(), bits }
}

pub fn pattern_string(pm: &ParityMatrix) -> String {
    pm.pattern_string()
}

pub fn parse_pattern(s: &str, order: usize) -> Result<ParityMatrix> {
    ParityMatrix::parse(s, order)
}

pub fn d4_canonical_pattern(pm: &ParityMatrix) -> ParityMatrix {
    pm.d4_canonical()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TallyMode {
    /// Patterns as they appear.
    Raw,
    /// Patterns reduced to their D4 representative.
    #[serde(rename = "d4-canonical")]
    Canonical,
}

impl FromStr for TallyMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(TallyMode::Raw),
            "class" | "canonical" | "d4-canonical" => Ok(TallyMode::Canonical),
            other => Err(Error::MalformedPattern(format!("unknown tally mode {other:?}"))),
        }
    }
}

/// Occurrence count per pattern string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternTally {
    pub mode: TallyMode,
    pub order: usize,
    pub family: Option<String>,
    pub total: u64,
    /// Sorted by pattern string.
    pub entries: BTreeMap<String, u64>,
}

impl PatternTally {
    pub fn new(mode: TallyMode, order: usize) -> Self {
        PatternTally { mode, order, family: None, total: 0, entries: BTreeMap::new() }
    }

    pub fn with_family(mut self, family: impl Into<String>) -> Self {
        self.family = Some(family.into());
        self
    }

    pub fn add(&mut self, sq: &Square) -> Result<()> {
        if sq.order() != self.order {
            return Err(Error::MixedOrder { expected: self.order, found: sq.order() });
        }
        let pm = to_parity(sq);
        let key = match self.mode {
            TallyMode::Raw => pm,
            TallyMode::Canonical => pm.d4_canonical(),
        };
        *self.entries.entry(key.pattern_string()).or_insert(0) += 1;
        self.total += 1;
        Ok(())
    }

    /// Combines two partial tallies over disjoint inputs.
    pub fn merge(&mut self, other: &PatternTally) -> Result<()> {
        if other.order != self.order {
            return Err(Error::MixedOrder { expected: self.order, found: other.order });
        }
        for (k, v) in &other.entries {
            *self.entries.entry(k.clone()).or_insert(0) += v;
        }
        self.total += other.total;
        Ok(())
    }

    /// Sums raw counts into D4 classes.
    pub fn to_canonical(&self) -> Result<PatternTally> {
        let mut out = PatternTally { mode: TallyMode::Canonical, entries: BTreeMap::new(), ..self.clone() };
        for (k, &v) in &self.entries {
            let key = ParityMatrix::parse(k, self.order)?.d4_canonical().pattern_string();
            *out.entries.entry(key).or_insert(0) += v;
        }
        Ok(out)
    }

    /// Counts in descending order, for comparing count multisets.
    pub fn count_multiset(&self) -> Vec<u64> {
        let mut counts: Vec<u64> = self.entries.values().copied().collect();
        counts.sort_unstable_by(|a, b| b.cmp(a));
        counts
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Tallies a stream of squares that must all share one order. The order is
/// taken from the first square; an empty stream gives an empty tally of
/// order 0.
pub fn tally_patterns<'a, I>(squares: I, mode: TallyMode) -> Result<PatternTally>
where
    I: IntoIterator<Item = &'a Square>,
{
    let mut iter = squares.into_iter().peekable();
    let order = iter.peek().map_or(0, |s| s.order());
    let mut tally = PatternTally::new(mode, order);
    for sq in iter {
        tally.add(sq)?;
    }
    Ok(tally)
}

/// Which externally listed patterns occur in a tally, and with what count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reconciliation {
    pub matched: Vec<ReconciledPattern>,
    /// Listed strings that are not well-formed or not present.
    pub unmatched: Vec<ReconciledPattern>,
    /// Tally keys no listed string matched.
    pub unlisted: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconciledPattern {
    pub pattern: String,
    pub listed_count: u64,
    pub observed_count: Option<u64>,
}

pub fn reconcile(tally: &PatternTally, listed: &[(&str, u64)]) -> Reconciliation {
    let mut matched = Vec::new();
    let mut unmatched = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for &(pattern, listed_count) in listed {
        let observed = tally.entries.get(pattern).copied();
        let entry = ReconciledPattern { pattern: pattern.to_string(), listed_count, observed_count: observed };
        if observed.is_some() {
            seen.insert(pattern.to_string());
            matched.push(entry);
        } else {
            unmatched.push(entry);
        }
    }
    let unlisted = tally.entries.keys().filter(|k| !seen.contains(*k)).cloned().collect();
    Reconciliation { matched, unmatched, unlisted }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::square::fixtures::*;
    use crate::symmetry::apply_d4;

    #[test]
    fn lo_shu_and_durer_patterns() {
        assert_eq!(to_parity(&lo_shu()).pattern_string(), "010111010");
        assert_eq!(to_parity(&durer()).pattern_string(), "0101101010100101");
        assert_eq!(to_parity(&durer().complement()), to_parity(&durer()).not());
        // 26 - x keeps parity for order 5
        let p = pandiagonal5();
        assert_eq!(to_parity(&p.complement()), to_parity(&p));
    }

    #[test]
    fn string_round_trip_and_errors() {
        assert_eq!(ParityMatrix::zeros(3).unwrap().pattern_string(), "000000000");
        let pm = parse_pattern("010111010", 3).unwrap();
        assert_eq!(pm, to_parity(&lo_shu()));
        assert!(matches!(parse_pattern("01011", 3), Err(Error::MalformedPattern(_))));
        assert!(matches!(parse_pattern("01011101x", 3), Err(Error::MalformedPattern(_))));
        let full = "1".repeat(64);
        assert_eq!(parse_pattern(&full, 8).unwrap().pattern_string(), full);
    }

    #[test]
    fn canonical_patterns() {
        let zero = ParityMatrix::zeros(4).unwrap();
        assert_eq!(zero.d4_canonical(), zero);
        let lo = to_parity(&lo_shu());
        for t in D4Transform::ALL {
            assert_eq!(apply_d4(&lo, t).d4_canonical(), lo.d4_canonical());
        }
        let d = to_parity(&durer());
        let brute = D4Transform::ALL.iter().map(|&t| apply_d4(&d, t).pattern_string()).min().unwrap();
        assert_eq!(d.d4_canonical().pattern_string(), brute);
    }

    #[test]
    fn square_and_pattern_transforms_commute() {
        let sq = durer();
        for t in D4Transform::ALL {
            assert_eq!(to_parity(&apply_d4(&sq, t)), apply_d4(&to_parity(&sq), t));
        }
    }

    #[test]
    fn tally_rejects_mixed_orders() {
        let squares = [lo_shu(), durer()];
        let err = tally_patterns(squares.iter(), TallyMode::Raw);
        assert!(matches!(err, Err(Error::MixedOrder { expected: 3, found: 4 })));
    }

    #[test]
    fn reconcile_sorts_listed_strings() {
        let mut t = PatternTally::new(TallyMode::Raw, 3);
        t.add(&lo_shu()).unwrap();
        let r = reconcile(&t, &[("010111010", 1), ("0101", 3)]);
        assert_eq!(r.matched.len(), 1);
        assert_eq!(r.unmatched.len(), 1);
        assert!(r.unlisted.is_empty());
    }
}
