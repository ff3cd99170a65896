//! Backtracking over cell assignments with linear propagation.
//!
//! A [`Model`] holds two kinds of equality constraints over the cells:
//! the family's own lines (unit coefficients, e.g. a row summing to `M`) and
//! implied equalities derived from them by [`crate::linear::echelon`].
//! Assigning a value updates every constraint through the cell. A constraint
//! with one open cell forces it, a closed one must hold exactly, and an open
//! line must still be reachable with the smallest/largest unused values.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use crate::family::{Family, FamilySpec};
use crate::linear::{self, Equation};
use crate::lines::{self, Line};

pub(crate) type Assignment = (u8, u8);

#[derive(Debug, Clone)]
struct Constraint {
    cells: Vec<u8>,
    coefs: Vec<i64>,
    target: i64,
    /// All coefficients are 1, so sum bounds apply.
    unit: bool,
}

#[derive(Debug, Clone)]
pub(crate) struct Model {
    cell_count: usize,
    constraints: Vec<Constraint>,
    /// `(constraint, coefficient)` for every constraint through a cell.
    cell_constraints: Vec<Vec<(u32, i64)>>,
    /// `(a, b)`: the value at `a` must be smaller than the value at `b`.
    less_than: Vec<(u8, u8)>,
    cell_less_than: Vec<Vec<u16>>,
    branch_order: Vec<u8>,
}

/// The family's lines, each with its required sum.
pub(crate) fn family_lines(spec: &FamilySpec) -> Vec<(Line, u16)> {
    let n = spec.order;
    let nn = n * n;
    let m = (n * (nn + 1) / 2) as u16;
    let mut groups: Vec<(Line, u16)> = Vec::new();
    let mut add = |ls: Vec<Line>, target: u16| {
        for l in ls {
            let mut key = l.clone();
            key.sort_unstable();
            let dup = groups.iter().any(|(g, t)| {
                let mut g = g.clone();
                g.sort_unstable();
                g == key && *t == target
            });
            if !dup {
                groups.push((l, target));
            }
        }
    };
    let magic_lines = |add: &mut dyn FnMut(Vec<Line>, u16)| {
        add(lines::rows(n), m);
        add(lines::columns(n), m);
        add(lines::main_diagonals(n), m);
    };
    match spec.family {
        Family::General => magic_lines(&mut add),
        Family::Associative | Family::Ultra => {
            magic_lines(&mut add);
            for i in 0..nn / 2 {
                add(vec![vec![i, nn - 1 - i]], nn as u16 + 1);
            }
            if nn % 2 == 1 {
                add(vec![vec![nn / 2]], (nn as u16).div_ceil(2));
            }
            if spec.family == Family::Ultra {
                add(lines::broken_diagonals(n), m);
            }
        }
        Family::Franklin => {
            let rules = spec.franklin;
            add(lines::half_lines(n), m / 2);
            add(lines::blocks(n, rules.blocks), 4 * m / n as u16);
            add(lines::bent_diagonals(n, rules.bent), m);
            if rules.main_diagonals {
                add(lines::main_diagonals(n), m);
            }
        }
    }
    groups
}

/// Cell order for branching; propagation fills the rest.
fn branch_order(spec: &FamilySpec) -> Vec<u8> {
    let n = spec.order;
    match spec.family {
        Family::General => (0..n * n).map(|c| c as u8).collect(),
        Family::Franklin => {
            // Grow a block around the top-left corner, wrapping cyclically so
            // the four corners (which decide canonicity) come early.
            let dist = |i: usize| i.min(n - i);
            let mut cells: Vec<usize> = (0..n * n).collect();
            cells.sort_by_key(|&c| {
                let (r, col) = (c / n, c % n);
                let ring = dist(r).max(dist(col));
                // Row 0 and column 0 first within a ring: they carry the
                // free choices, the rest is forced.
                let edge = if r == 0 || col == 0 { 0 } else { 1 };
                (ring, edge, dist(r) + dist(col), c)
            });
            cells.into_iter().map(|c| c as u8).collect()
        }
        Family::Associative | Family::Ultra => {
            // First row, first column, then both diagonals; the opposite
            // lines follow from the symmetric pairs.
            let mut order: Vec<u8> = Vec::with_capacity(n * n);
            let cells = (0..n)
                .chain((1..n).map(|r| r * n))
                .chain((1..n).map(|i| i * n + i))
                .chain((1..n).map(|i| i * n + n - 1 - i))
                .chain(0..n * n);
            for c in cells {
                if !order.contains(&(c as u8)) {
                    order.push(c as u8);
                }
            }
            order
        }
    }
}

impl Model {
    /// `canonical` restricts the search to Frénicle representatives.
    pub(crate) fn for_spec(spec: &FamilySpec, canonical: bool) -> Model {
        let n = spec.order;
        let nn = n * n;
        assert!(nn <= 64, "values must fit a 64-bit mask");
        let branch_order = branch_order(spec);
        let mut position = vec![0; nn];
        for (p, &c) in branch_order.iter().enumerate() {
            position[c as usize] = p;
        }

        let equations: Vec<Equation> = family_lines(spec)
            .into_iter()
            .map(|(cells, target)| Equation {
                coefs: vec![1; cells.len()],
                cells: cells.into_iter().map(|c| c as u8).collect(),
                target: target as i64,
            })
            .collect();
        // The reduced system has the same solutions as the lines themselves
        // and is far sparser, so it replaces them. The lines always admit
        // the constant-sum solution, so the system is consistent.
        let constraints: Vec<Constraint> = linear::echelon(&equations, nn, &position)
            .expect("consistent line system")
            .into_iter()
            .map(|e| {
                let unit = e.coefs.iter().all(|&k| k == 1);
                Constraint { cells: e.cells, coefs: e.coefs, target: e.target, unit }
            })
            .collect();

        let less_than = if canonical {
            let (tr, bl, br) = (n - 1, nn - n, nn - 1);
            vec![(0, tr as u8), (0, bl as u8), (0, br as u8), (1, n as u8)]
        } else {
            Vec::new()
        };

        let mut cell_constraints = vec![Vec::new(); nn];
        for (k, c) in constraints.iter().enumerate() {
            for (&cell, &coef) in c.cells.iter().zip(&c.coefs) {
                cell_constraints[cell as usize].push((k as u32, coef));
            }
        }
        let mut cell_less_than = vec![Vec::new(); nn];
        for (k, &(a, b)) in less_than.iter().enumerate() {
            cell_less_than[a as usize].push(k as u16);
            cell_less_than[b as usize].push(k as u16);
        }
        Model { cell_count: nn, constraints, cell_constraints, less_than, cell_less_than, branch_order }
    }
}

/// Mutable search state over a [`Model`].
pub(crate) struct State<'m> {
    model: &'m Model,
    values: [u8; 64],
    used: u64,
    open: Vec<u8>,
    sums: Vec<i64>,
    trail: Vec<u8>,
    queue: Vec<Assignment>,
    pub(crate) nodes: u64,
    reported: u64,
}

impl<'m> State<'m> {
    pub(crate) fn new(model: &'m Model) -> State<'m> {
        State {
            model,
            values: [0; 64],
            used: 0,
            open: model.constraints.iter().map(|c| c.cells.len() as u8).collect(),
            sums: vec![0; model.constraints.len()],
            trail: Vec::with_capacity(64),
            queue: Vec::with_capacity(64),
            nodes: 0,
            reported: 0,
        }
    }

    /// Applies constraints that pin a cell before any choice is made.
    pub(crate) fn seed(&mut self) -> bool {
        for c in &self.model.constraints {
            if c.cells.len() == 1 {
                if c.target % c.coefs[0] != 0 {
                    return false;
                }
                let v = c.target / c.coefs[0];
                if !(1..=self.model.cell_count as i64).contains(&v) {
                    return false;
                }
                self.queue.push((c.cells[0], v as u8));
            }
        }
        self.propagate()
    }

    fn free_mask(&self) -> u64 {
        let full = if self.model.cell_count == 64 { u64::MAX } else { (1u64 << self.model.cell_count) - 1 };
        !self.used & full
    }

    fn reachable(&self, open: u8, need: i64) -> bool {
        let free = self.free_mask();
        if free.count_ones() < open as u32 {
            return false;
        }
        let (mut lo, mut hi) = (0i64, 0i64);
        let (mut low_bits, mut high_bits) = (free, free);
        for _ in 0..open {
            let b = low_bits.trailing_zeros();
            lo += b as i64 + 1;
            low_bits &= low_bits - 1;
            let t = 63 - high_bits.leading_zeros();
            hi += t as i64 + 1;
            high_bits &= !(1u64 << t);
        }
        lo <= need && need <= hi
    }

    fn assign(&mut self, cell: u8, value: u8) -> bool {
        let ci = cell as usize;
        let current = self.values[ci];
        if current != 0 {
            return current == value;
        }
        if value == 0 || value as usize > self.model.cell_count {
            return false;
        }
        let bit = 1u64 << (value - 1);
        if self.used & bit != 0 {
            return false;
        }
        let model = self.model;
        for &k in &model.cell_less_than[ci] {
            let (a, b) = model.less_than[k as usize];
            let va = if a == cell { value } else { self.values[a as usize] };
            let vb = if b == cell { value } else { self.values[b as usize] };
            if va != 0 && vb != 0 && va >= vb {
                return false;
            }
        }
        self.nodes += 1;
        self.values[ci] = value;
        self.used |= bit;
        self.trail.push(cell);
        for &(k, coef) in &model.cell_constraints[ci] {
            self.open[k as usize] -= 1;
            self.sums[k as usize] += coef * value as i64;
        }
        for &(k, _) in &model.cell_constraints[ci] {
            let k = k as usize;
            let c = &model.constraints[k];
            let need = c.target - self.sums[k];
            match self.open[k] {
                0 => {
                    if need != 0 {
                        return false;
                    }
                }
                1 => {
                    let (last, coef) = c
                        .cells
                        .iter()
                        .zip(&c.coefs)
                        .find(|(&x, _)| self.values[x as usize] == 0)
                        .expect("one open cell");
                    if need % coef != 0 {
                        return false;
                    }
                    let v = need / coef;
                    if !(1..=model.cell_count as i64).contains(&v) {
                        return false;
                    }
                    self.queue.push((*last, v as u8));
                }
                open => {
                    if c.unit && !self.reachable(open, need) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn propagate(&mut self) -> bool {
        while let Some((cell, value)) = self.queue.pop() {
            if !self.assign(cell, value) {
                self.queue.clear();
                return false;
            }
        }
        true
    }

    /// Assigns and propagates. On failure the state is left dirty and the
    /// caller must [`State::undo`] to the mark taken before.
    pub(crate) fn decide(&mut self, cell: u8, value: u8) -> bool {
        if !self.assign(cell, value) {
            self.queue.clear();
            return false;
        }
        self.propagate()
    }

    /// Nodes visited since the last flush.
    pub(crate) fn flush_nodes(&mut self) -> u64 {
        let delta = self.nodes - self.reported;
        self.reported = self.nodes;
        delta
    }

    pub(crate) fn mark(&self) -> usize {
        self.trail.len()
    }

    pub(crate) fn undo(&mut self, mark: usize) {
        let model = self.model;
        while self.trail.len() > mark {
            let cell = self.trail.pop().expect("trail above mark") as usize;
            let value = self.values[cell];
            for &(k, coef) in &model.cell_constraints[cell] {
                self.open[k as usize] += 1;
                self.sums[k as usize] -= coef * value as i64;
            }
            self.used &= !(1u64 << (value - 1));
            self.values[cell] = 0;
        }
    }

    /// Assigned cells in assignment order.
    pub(crate) fn assignments(&self) -> Vec<Assignment> {
        self.trail.iter().map(|&c| (c, self.values[c as usize])).collect()
    }

    /// Unused values for `cell` that keep every constraint with exactly one
    /// other open cell satisfiable: for unit coefficients the other cell's
    /// value must itself be unused, otherwise it must at least be in range.
    fn candidates(&self, cell: u8) -> u64 {
        let model = self.model;
        let top = model.cell_count as i64;
        let free = self.free_mask();
        let mut allowed = free;
        let (mut lo, mut hi) = (1i64, top);
        for &(k, cx) in &model.cell_constraints[cell as usize] {
            let k = k as usize;
            if self.open[k] != 2 {
                continue;
            }
            let c = &model.constraints[k];
            let Some(cy) = c
                .cells
                .iter()
                .zip(&c.coefs)
                .find(|(&y, _)| y != cell && self.values[y as usize] == 0)
                .map(|(_, &cy)| cy)
            else {
                continue;
            };
            let need = c.target - self.sums[k];
            if cx.abs() == 1 && cy.abs() == 1 {
                // y = n0 - s*x
                let (s, n0) = (cx * cy, need * cy);
                allowed &= if s == -1 {
                    // y = x + n0: bit (y-1) maps to bit (x-1) = (y-1) - n0
                    shift(free, -n0)
                } else {
                    // y = n0 - x: bit i maps to bit n0 - 2 - i
                    shift(free.reverse_bits(), n0 - 65)
                };
                if allowed == 0 {
                    return 0;
                }
                continue;
            }
            // cx*x = need - cy*y with y in 1..=top
            let (a, b) = (need - cy, need - cy * top);
            let (lo_rhs, hi_rhs) = (a.min(b), a.max(b));
            let (x_lo, x_hi) = if cx > 0 {
                (div_ceil(lo_rhs, cx), hi_rhs.div_euclid(cx))
            } else {
                (div_ceil(-hi_rhs, -cx), (-lo_rhs).div_euclid(-cx))
            };
            lo = lo.max(x_lo);
            hi = hi.min(x_hi);
            if lo > hi {
                return 0;
            }
        }
        let span = ((hi - lo + 1) as u32).min(64);
        let band = if span == 64 { u64::MAX } else { ((1u64 << span) - 1) << (lo - 1) };
        allowed & band
    }

    /// First unassigned cell at or after `from` in branch order.
    fn next_open(&self, from: usize) -> Option<usize> {
        let order = &self.model.branch_order;
        (from..order.len()).find(|&p| self.values[order[p] as usize] == 0)
    }

    /// Depth-first search below the current state. `emit` receives every
    /// complete grid. Returns false if `stop` cut the search short.
    pub(crate) fn solve(&mut self, stop: &Stop<'_>, emit: &mut dyn FnMut(&[u8])) -> bool {
        self.solve_from(0, stop, emit)
    }

    fn solve_from(&mut self, from: usize, stop: &Stop<'_>, emit: &mut dyn FnMut(&[u8])) -> bool {
        if self.nodes - self.reported >= 4096 && stop.charge(self.flush_nodes()) {
            return false;
        }
        let Some(pos) = self.next_open(from) else {
            emit(&self.values[..self.model.cell_count]);
            return true;
        };
        let cell = self.model.branch_order[pos];
        // Values used below are restored on undo, so the mask taken here
        // stays exact for this level.
        let mut free = self.candidates(cell);
        while free != 0 {
            let v = free.trailing_zeros() as u8 + 1;
            free &= free - 1;
            let mark = self.mark();
            if self.decide(cell, v) && !self.solve_from(pos + 1, stop, emit) {
                self.undo(mark);
                return false;
            }
            self.undo(mark);
        }
        true
    }

    /// Collects the states reached after `depth` branching decisions.
    pub(crate) fn frontier(&mut self, depth: usize, out: &mut Vec<Vec<Assignment>>) {
        let Some(pos) = self.next_open(0).filter(|_| depth > 0) else {
            out.push(self.assignments());
            return;
        };
        let cell = self.model.branch_order[pos];
        let mut free = self.free_mask();
        while free != 0 {
            let v = free.trailing_zeros() as u8 + 1;
            free &= free - 1;
            let mark = self.mark();
            if self.decide(cell, v) {
                self.frontier(depth - 1, out);
            }
            self.undo(mark);
        }
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    a.div_euclid(b) + (a.rem_euclid(b) != 0) as i64
}

/// `mask << by` for positive `by`, `mask >> -by` otherwise.
fn shift(mask: u64, by: i64) -> u64 {
    match by {
        0 => mask,
        1..=63 => mask << by,
        -63..=-1 => mask >> -by,
        _ => 0,
    }
}

/// Shared cancellation: a node budget across all workers, a deadline, or a
/// flag raised by whichever worker hits either first.
pub(crate) struct Stop<'a> {
    pub(crate) nodes: &'a AtomicU64,
    pub(crate) max_nodes: Option<u64>,
    pub(crate) flag: &'a AtomicBool,
    pub(crate) deadline: Option<Instant>,
}

impl Stop<'_> {
    /// Adds `delta` nodes to the shared tally; true once the search must stop.
    pub(crate) fn charge(&self, delta: u64) -> bool {
        if self.flag.load(Ordering::Relaxed) {
            return true;
        }
        let total = self.nodes.fetch_add(delta, Ordering::Relaxed) + delta;
        let over = self.max_nodes.is_some_and(|m| total > m) || self.deadline.is_some_and(|d| Instant::now() > d);
        if over {
            self.flag.store(true, Ordering::Relaxed);
        }
        over
    }

    pub(crate) fn stopped(&self) -> bool {
        self.flag.load(Ordering::Relaxed)
    }
}
