//! Exhaustive enumeration over gate-canonical assignments.
//!
//! Scores every candidate through the evaluator directly, sharing no code
//! with the incremental bookkeeping of the tree search, so it can serve as an
//! oracle for it.

use crate::error::{Error, Result};
use crate::evaluator::{conflict_pairs, raw_objective};
use crate::model::{ModelConfig, Schedule};
use crate::scalar::Scalar;

use super::{check_gates, finish, is_hard, Budget, SearchLimits, SolveResult};

pub const BRUTE_FORCE_MAX_FLIGHTS: usize = 12;

/// Restricted-growth strings: item 0 is on gate 0 and each item uses at most
/// one more gate than all items before it. One representative per gate
/// relabeling class, at most `max_gates` gates.
pub struct CanonicalAssignments {
    gates: Vec<usize>,
    /// `prefix_max[k]` = highest gate among items `0..k`, plus one.
    prefix_max: Vec<usize>,
    max_gates: usize,
    started: bool,
    done: bool,
}

impl CanonicalAssignments {
    pub fn new(items: usize, max_gates: usize) -> Self {
        Self {
            gates: vec![0; items],
            prefix_max: vec![0; items + 1],
            max_gates,
            started: false,
            done: items == 0 || max_gates == 0,
        }
    }

    fn refresh_prefix(&mut self, from: usize) {
        for k in from..self.gates.len() {
            self.prefix_max[k + 1] = self.prefix_max[k].max(self.gates[k] + 1);
        }
    }
}

impl Iterator for CanonicalAssignments {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.refresh_prefix(0);
            return Some(self.gates.clone());
        }
        // Increment the rightmost position that can still grow.
        let mut k = self.gates.len();
        while k > 1 {
            k -= 1;
            let ceiling = self.prefix_max[k].min(self.max_gates - 1);
            if self.gates[k] < ceiling {
                self.gates[k] += 1;
                for later in &mut self.gates[k + 1..] {
                    *later = 0;
                }
                self.refresh_prefix(k);
                return Some(self.gates.clone());
            }
        }
        self.done = true;
        None
    }
}

/// Minimum-objective assignment by full enumeration (`n ≤ 12`).
///
/// Ties keep the first candidate in enumeration order.
pub fn brute_force<T: Scalar>(
    schedule: &Schedule<T>,
    gate_count: usize,
    cfg: &ModelConfig<T>,
) -> Result<SolveResult<T>> {
    check_gates(gate_count)?;
    schedule.require_non_empty()?;
    if schedule.len() > BRUTE_FORCE_MAX_FLIGHTS {
        return Err(Error::InstanceTooLarge {
            flights: schedule.len(),
            limit: BRUTE_FORCE_MAX_FLIGHTS,
        });
    }
    let mut budget = Budget::new(&SearchLimits::unlimited());
    let mut best: Option<(T, Vec<usize>)> = None;
    for gates in CanonicalAssignments::new(schedule.len(), gate_count) {
        budget.tick();
        if is_hard(cfg) && !conflict_pairs(schedule, &gates, cfg.buffer()).is_empty() {
            continue;
        }
        let value = raw_objective(schedule, &gates, gate_count, cfg);
        if best
            .as_ref()
            .is_none_or(|(incumbent, _)| value < *incumbent)
        {
            best = Some((value, gates));
        }
    }
    let (_, gates) = best.ok_or(Error::Infeasible { gate_count })?;
    let assignment = crate::evaluator::Assignment::from_zero_based(schedule, gate_count, &gates);
    finish(schedule, assignment, cfg, true, &budget)
}
