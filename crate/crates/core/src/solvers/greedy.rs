use crate::error::{Error, Result};
use crate::model::{ModelConfig, Schedule};
use crate::scalar::Scalar;

use super::{check_gates, finish, is_hard, Budget, Prepared, SearchLimits, SolveResult};

/// Places flights in arrival order, each on the admissible gate where it adds
/// the least objective, lowest gate index on ties. Deterministic.
///
/// Under the hard policy a gate is admissible when none of its flights is in
/// hard conflict with the newcomer; under the soft policy every gate is.
pub fn greedy_first_fit<T: Scalar>(
    schedule: &Schedule<T>,
    gate_count: usize,
    cfg: &ModelConfig<T>,
) -> Result<SolveResult<T>> {
    check_gates(gate_count)?;
    schedule.require_non_empty()?;
    let mut budget = Budget::new(&SearchLimits::unlimited());
    let p = Prepared::new(schedule, cfg);
    let hard = is_hard(cfg);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); gate_count];
    let mut ranks = Vec::with_capacity(p.n);

    for f in 0..p.n {
        budget.tick();
        let mut choice: Option<(T, usize)> = None;
        for (gate, on_gate) in members.iter().enumerate() {
            if hard && on_gate.iter().any(|&h| p.conflict(h, f)) {
                continue;
            }
            let added = on_gate.iter().fold(T::zero(), |acc, &h| acc + p.cost(h, f));
            if choice.as_ref().is_none_or(|(best, _)| added < *best) {
                choice = Some((added, gate));
            }
        }
        let (_, gate) = choice.ok_or(Error::Infeasible { gate_count })?;
        members[gate].push(f);
        ranks.push(gate);
    }

    let assignment = p.assignment(gate_count, &ranks);
    finish(schedule, assignment, cfg, false, &budget)
}
