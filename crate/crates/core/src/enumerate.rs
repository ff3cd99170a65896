//! Exhaustive enumeration of the supported families, one square per D4 orbit.
//!
//! The search is split into [`SearchTask`]s by fixing the first few branching
//! decisions. Tasks run independently (optionally in parallel) and their
//! results are merged and sorted, so the output never depends on scheduling.

use std::sync::atomic::{AtomicBool, AtomicU64};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::search::{Assignment, Model, State, Stop};
use crate::square::Square;

/// Version tag of the orbit representative convention.
pub const CANONICAL_FORM: &str = "frenicle-lexmin-v1";

/// A subtree of the search: a consistent partial assignment.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchTask {
    pub spec: FamilySpec,
    /// `(cell index, value)` pairs, including values forced by propagation.
    pub prefix: Vec<(u8, u8)>,
    /// Bit `v-1` set iff value `v` appears in the prefix.
    pub used: u64,
}

impl SearchTask {
    /// Prefix values are distinct and match `used`.
    pub fn is_consistent(&self) -> bool {
        let mut mask = 0u64;
        for &(_, v) in &self.prefix {
            if v == 0 || v > 64 || mask & (1 << (v - 1)) != 0 {
                return false;
            }
            mask |= 1 << (v - 1);
        }
        mask == self.used
    }

    fn replay<'m>(&self, model: &'m Model) -> Option<State<'m>> {
        let mut state = State::new(model);
        if !state.seed() {
            return None;
        }
        for &(cell, value) in &self.prefix {
            if !state.decide(cell, value) {
                return None;
            }
        }
        Some(state)
    }
}

/// Deterministic split of the search into disjoint subtrees.
///
/// Granularity 1 is the whole tree; granularity `g` fixes the first `g-1`
/// branching decisions. A tree shallower than that is split at its leaves.
pub fn partition_tasks(spec: &FamilySpec, granularity: usize) -> Vec<SearchTask> {
    let model = Model::for_spec(spec, true);
    split(spec, &model, granularity.max(1) - 1)
}

fn split(spec: &FamilySpec, model: &Model, depth: usize) -> Vec<SearchTask> {
    let mut state = State::new(model);
    if !state.seed() {
        return Vec::new();
    }
    // Seeded cells are implied; keep them out of the task key.
    let seeded = state.mark();
    let mut prefixes = Vec::new();
    state.frontier(depth, &mut prefixes);
    prefixes
        .into_iter()
        .map(|p| {
            let prefix: Vec<Assignment> = p[seeded..].to_vec();
            let used = prefix.iter().fold(0u64, |m, &(_, v)| m | 1 << (v - 1));
            SearchTask { spec: *spec, prefix, used }
        })
        .collect()
}

/// Stop conditions for long runs, checked before each task starts.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

#[derive(Debug, Clone)]
pub struct EnumerateOptions {
    /// Worker threads; 0 uses rayon's default.
    pub workers: usize,
    pub granularity: usize,
    pub budget: Budget,
    pub resume: Option<Checkpoint>,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { workers: 1, granularity: 3, budget: Budget::default(), resume: None }
    }
}

/// Resumable progress of an interrupted enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub fingerprint: String,
    pub canonical_form: String,
    pub granularity: usize,
    pub completed: Vec<Vec<(u8, u8)>>,
    pub count: u64,
    /// Row-major cells of every square found by the completed tasks.
    pub found: Vec<Vec<u8>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub family: String,
    pub order: usize,
    pub spec: FamilySpec,
    pub fingerprint: String,
    pub canonical_form: String,
    pub total_count: u64,
    pub tasks: usize,
    pub workers: usize,
    pub nodes: u64,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    /// Frénicle forms in ascending row-major order.
    pub squares: Vec<Square>,
    pub report: EnumerationReport,
}

pub fn enumerate_family(spec: &FamilySpec) -> Result<Enumeration> {
    enumerate_with(spec, &EnumerateOptions::default())
}

pub fn enumerate_with(spec: &FamilySpec, opts: &EnumerateOptions) -> Result<Enumeration> {
    FamilySpec::with_rules(spec.family, spec.order, spec.franklin)?;
    let started = Instant::now();
    let model = Model::for_spec(spec, true);
    let tasks = split(spec, &model, opts.granularity.max(1) - 1);

    let mut completed: Vec<Vec<(u8, u8)>> = Vec::new();
    let mut found: Vec<Vec<u8>> = Vec::new();
    if let Some(cp) = &opts.resume {
        if cp.fingerprint != spec.fingerprint() || cp.granularity != opts.granularity {
            return Err(Error::Integrity {
                path: "<checkpoint>".into(),
                msg: format!(
                    "checkpoint is for {} at granularity {}, not {} at {}",
                    cp.fingerprint,
                    cp.granularity,
                    spec.fingerprint(),
                    opts.granularity
                ),
            });
        }
        completed = cp.completed.clone();
        found = cp.found.clone();
    }
    let done: std::collections::HashSet<&Vec<(u8, u8)>> = completed.iter().collect();
    let pending: Vec<&SearchTask> = tasks.iter().filter(|t| !done.contains(&t.prefix)).collect();
    drop(done);

    let nodes = AtomicU64::new(0);
    let flag = AtomicBool::new(false);
    let stop = Stop {
        nodes: &nodes,
        max_nodes: opts.budget.max_nodes,
        flag: &flag,
        deadline: opts.budget.max_time.map(|d| started + d),
    };

    let run = |task: &SearchTask| -> Option<Vec<Vec<u8>>> {
        if stop.stopped() {
            return None;
        }
        let mut out = Vec::new();
        let Some(mut state) = task.replay(&model) else {
            return Some(out);
        };
        // the budget is only checked between tasks, so every run that
        // starts a task also finishes it and a resumed run always advances
        let (task_nodes, task_flag) = (AtomicU64::new(0), AtomicBool::new(false));
        let unbounded = Stop { nodes: &task_nodes, max_nodes: None, flag: &task_flag, deadline: None };
        state.solve(&unbounded, &mut |cells| out.push(cells.to_vec()));
        stop.charge(state.flush_nodes() + task_nodes.into_inner());
        Some(out)
    };

    let results: Vec<Option<Vec<Vec<u8>>>> = if opts.workers == 1 {
        pending.iter().map(|t| run(t)).collect()
    } else {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if opts.workers > 0 {
            builder = builder.num_threads(opts.workers);
        }
        let pool = builder.build().expect("thread pool");
        pool.install(|| pending.par_iter().map(|t| run(t)).collect())
    };

    let mut interrupted = false;
    for (task, result) in pending.iter().zip(results) {
        match result {
            Some(squares) => {
                completed.push(task.prefix.clone());
                found.extend(squares);
            }
            None => interrupted = true,
        }
    }
    found.sort_unstable();

    if interrupted {
        let checkpoint = Checkpoint {
            fingerprint: spec.fingerprint(),
            canonical_form: CANONICAL_FORM.to_string(),
            granularity: opts.granularity,
            completed,
            count: found.len() as u64,
            found,
        };
        return Err(Error::PartialResult { count: checkpoint.count, checkpoint: Box::new(checkpoint) });
    }

    let squares: Vec<Square> = found.into_iter().map(|c| Square::from_cells_unchecked(spec.order, c)).collect();
    let report = EnumerationReport {
        family: spec.family.to_string(),
        order: spec.order,
        spec: *spec,
        fingerprint: spec.fingerprint(),
        canonical_form: CANONICAL_FORM.to_string(),
        total_count: squares.len() as u64,
        tasks: tasks.len(),
        workers: opts.workers,
        nodes: nodes.load(std::sync::atomic::Ordering::Relaxed),
        elapsed_ms: started.elapsed().as_millis() as u64,
    };
    Ok(Enumeration { squares, report })
}

/// Every square of the family in every orientation, unsorted. Used to
/// cross-check the canonicity pruning.
pub fn enumerate_all_orientations(spec: &FamilySpec) -> Vec<Square> {
    let model = Model::for_spec(spec, false);
    let nodes = AtomicU64::new(0);
    let flag = AtomicBool::new(false);
    let stop = Stop { nodes: &nodes, max_nodes: None, flag: &flag, deadline: None };
    let mut out = Vec::new();
    let mut state = State::new(&model);
    if state.seed() {
        state.solve(&stop, &mut |cells| out.push(Square::from_cells_unchecked(spec.order, cells.to_vec())));
    }
    out
}
