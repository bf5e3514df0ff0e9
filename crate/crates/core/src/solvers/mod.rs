//! Solvers minimizing the expected-conflict objective over gate assignments.
//!
//! Every solver returns a [`SolveResult`] whose objective has been recomputed
//! by the evaluator on the returned assignment.

mod branch_and_bound;
mod brute_force;
mod greedy;
mod local_search;
mod matching;
mod sweep;

use std::time::{Duration, Instant};

pub use branch_and_bound::{branch_and_bound, branch_and_bound_with, BnbOptions, BoundStrategy};
pub use brute_force::{brute_force, CanonicalAssignments, BRUTE_FORCE_MAX_FLIGHTS};
pub use greedy::greedy_first_fit;
pub use local_search::local_search;
pub use sweep::{objectives_non_increasing, sweep, SweepRow};

use crate::error::{Error, Result};
use crate::evaluator::{self, Assignment};
use crate::model::{conflicts_hard, pair_cost, ModelConfig, OverlapPolicy, Schedule};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult<T = f64> {
    pub assignment: Assignment,
    pub objective: T,
    pub proven_optimal: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchLimits {
    max_nodes: Option<u64>,
    time_budget: Option<Duration>,
    pub rng_seed: u64,
}

impl SearchLimits {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn with_max_nodes(mut self, nodes: u64) -> Result<Self> {
        if nodes == 0 {
            return Err(Error::InvalidLimits("node budget must be positive"));
        }
        self.max_nodes = Some(nodes);
        Ok(self)
    }

    pub fn with_time_budget(mut self, budget: Duration) -> Result<Self> {
        if budget.is_zero() {
            return Err(Error::InvalidLimits("time budget must be positive"));
        }
        self.time_budget = Some(budget);
        Ok(self)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn max_nodes(&self) -> Option<u64> {
        self.max_nodes
    }

    pub fn time_budget(&self) -> Option<Duration> {
        self.time_budget
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SolverKind {
    #[default]
    Exact,
    Greedy,
    /// Greedy construction followed by local search.
    Local,
}

/// Dispatches to the chosen solver. `Local` seeds local search with the
/// greedy assignment.
pub fn solve<T: Scalar>(
    schedule: &Schedule<T>,
    gate_count: usize,
    cfg: &ModelConfig<T>,
    kind: SolverKind,
    limits: &SearchLimits,
) -> Result<SolveResult<T>> {
    match kind {
        SolverKind::Exact => branch_and_bound(schedule, gate_count, cfg, limits),
        SolverKind::Greedy => greedy_first_fit(schedule, gate_count, cfg),
        SolverKind::Local => {
            let start = Instant::now();
            let initial = greedy_first_fit(schedule, gate_count, cfg)?;
            let mut improved = local_search(schedule, &initial.assignment, cfg, limits)?;
            improved.nodes_explored += initial.nodes_explored;
            improved.elapsed = start.elapsed();
            Ok(improved)
        }
    }
}

/// Node and wall-clock accounting shared by the search loops.
pub(crate) struct Budget {
    start: Instant,
    limits: SearchLimits,
    nodes: u64,
    exhausted: bool,
}

impl Budget {
    pub(crate) fn new(limits: &SearchLimits) -> Self {
        Self {
            start: Instant::now(),
            limits: *limits,
            nodes: 0,
            exhausted: false,
        }
    }

    /// Counts one node; returns false once a budget is used up.
    pub(crate) fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        if self.limits.max_nodes.is_some_and(|max| self.nodes > max) {
            self.exhausted = true;
        } else if let Some(budget) = self.limits.time_budget {
            if self.nodes.is_multiple_of(256) && self.start.elapsed() >= budget {
                self.exhausted = true;
            }
        }
        !self.exhausted
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.exhausted
    }

    pub(crate) fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }
}

/// Pair data over flights re-indexed by arrival order.
pub(crate) struct Prepared<'a, T> {
    pub(crate) schedule: &'a Schedule<T>,
    /// Arrival rank -> schedule position.
    pub(crate) order: Vec<usize>,
    pub(crate) n: usize,
    pub(crate) lock_start: Vec<T>,
    pub(crate) lock_end: Vec<T>,
    cost: Vec<T>,
    conflict: Vec<bool>,
}

impl<'a, T: Scalar> Prepared<'a, T> {
    pub(crate) fn new(schedule: &'a Schedule<T>, cfg: &ModelConfig<T>) -> Self {
        let order = schedule.arrival_order();
        let n = order.len();
        let flights = schedule.flights();
        let b = cfg.buffer();
        let mut cost = vec![T::zero(); n * n];
        let mut conflict = vec![false; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let (fi, fj) = (&flights[order[i]], &flights[order[j]]);
                let c = pair_cost(fi, fj, cfg);
                let x = conflicts_hard(fi, fj, b);
                cost[i * n + j] = c;
                cost[j * n + i] = c;
                conflict[i * n + j] = x;
                conflict[j * n + i] = x;
            }
        }
        Self {
            schedule,
            n,
            lock_start: order.iter().map(|&i| flights[i].arrival() - b).collect(),
            lock_end: order.iter().map(|&i| flights[i].departure() + b).collect(),
            order,
            cost,
            conflict,
        }
    }

    #[inline]
    pub(crate) fn cost(&self, i: usize, j: usize) -> T {
        self.cost[i * self.n + j]
    }

    #[inline]
    pub(crate) fn conflict(&self, i: usize, j: usize) -> bool {
        self.conflict[i * self.n + j]
    }

    /// Converts gates indexed by arrival rank into an assignment.
    pub(crate) fn assignment(&self, gate_count: usize, by_rank: &[usize]) -> Assignment {
        let mut by_position = vec![0; self.n];
        for (rank, &gate) in by_rank.iter().enumerate() {
            by_position[self.order[rank]] = gate;
        }
        Assignment::from_zero_based(self.schedule, gate_count, &by_position)
    }

    /// Inverse of [`Prepared::assignment`].
    pub(crate) fn ranks(&self, assignment: &Assignment) -> Result<Vec<usize>> {
        let by_position = assignment.resolve(self.schedule)?;
        Ok(self.order.iter().map(|&pos| by_position[pos]).collect())
    }
}

pub(crate) fn finish<T: Scalar>(
    schedule: &Schedule<T>,
    assignment: Assignment,
    cfg: &ModelConfig<T>,
    proven_optimal: bool,
    budget: &Budget,
) -> Result<SolveResult<T>> {
    let objective = evaluator::objective(schedule, &assignment, cfg)?;
    Ok(SolveResult {
        assignment,
        objective,
        proven_optimal,
        nodes_explored: budget.nodes(),
        elapsed: budget.elapsed(),
    })
}

pub(crate) fn check_gates(gate_count: usize) -> Result<()> {
    if gate_count == 0 {
        Err(Error::NoGates)
    } else {
        Ok(())
    }
}

pub(crate) fn is_hard(cfg: &ModelConfig<impl Scalar>) -> bool {
    cfg.overlap_policy == OverlapPolicy::Hard
}
