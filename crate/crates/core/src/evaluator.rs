//! Scoring of a (schedule, assignment) pair.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::{conflicts_hard, pair_cost, ModelConfig, OverlapPolicy, Schedule};
use crate::scalar::Scalar;

/// A total map from flight id to a 1-based gate index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    gate_count: usize,
    gate_of: HashMap<String, usize>,
}

impl Assignment {
    pub fn new(gate_count: usize) -> Result<Self> {
        if gate_count == 0 {
            return Err(Error::NoGates);
        }
        Ok(Self {
            gate_count,
            gate_of: HashMap::new(),
        })
    }

    /// Builds an assignment from 1-based gates listed in schedule order.
    pub fn from_gates<T: Scalar>(
        schedule: &Schedule<T>,
        gate_count: usize,
        gates: &[usize],
    ) -> Result<Self> {
        assert_eq!(schedule.len(), gates.len(), "one gate per flight");
        let mut assignment = Self::new(gate_count)?;
        for (flight, &gate) in schedule.flights().iter().zip(gates) {
            assignment.assign(flight.id(), gate)?;
        }
        Ok(assignment)
    }

    pub(crate) fn from_zero_based<T: Scalar>(
        schedule: &Schedule<T>,
        gate_count: usize,
        gates: &[usize],
    ) -> Self {
        let one_based: Vec<usize> = gates.iter().map(|g| g + 1).collect();
        Self::from_gates(schedule, gate_count, &one_based).expect("solver gates in range")
    }

    pub fn assign(&mut self, id: impl Into<String>, gate: usize) -> Result<()> {
        if gate == 0 || gate > self.gate_count {
            return Err(Error::GateOutOfRange {
                gate,
                gate_count: self.gate_count,
            });
        }
        self.gate_of.insert(id.into(), gate);
        Ok(())
    }

    pub fn gate_count(&self) -> usize {
        self.gate_count
    }

    pub fn gate_of(&self, id: &str) -> Option<usize> {
        self.gate_of.get(id).copied()
    }

    pub fn len(&self) -> usize {
        self.gate_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gate_of.is_empty()
    }

    /// Zero-based gate per schedule position. Fails unless the assignment
    /// covers exactly the schedule's flights.
    pub fn resolve<T: Scalar>(&self, schedule: &Schedule<T>) -> Result<Vec<usize>> {
        let mut gates = Vec::with_capacity(schedule.len());
        for flight in schedule.flights() {
            let gate = self
                .gate_of(flight.id())
                .ok_or_else(|| Error::UnassignedFlight(flight.id().to_owned()))?;
            gates.push(gate - 1);
        }
        if self.gate_of.len() != schedule.len() {
            let stray = self
                .gate_of
                .keys()
                .filter(|id| schedule.position(id).is_none())
                .min()
                .expect("extra id exists");
            return Err(Error::UnknownFlight(stray.clone()));
        }
        Ok(gates)
    }

    /// The same assignment with gates renamed through `relabel` (1-based in,
    /// 1-based out).
    pub fn relabeled(&self, relabel: impl Fn(usize) -> usize) -> Result<Self> {
        let mut out = Self::new(self.gate_count)?;
        for (id, &gate) in &self.gate_of {
            out.assign(id.clone(), relabel(gate))?;
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Good,
    Acceptable,
    Poor,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerdictThresholds {
    /// Objectives strictly above this are poor.
    pub poor_above: f64,
    /// Objectives strictly below this are good.
    pub good_below: f64,
}

impl Default for VerdictThresholds {
    fn default() -> Self {
        Self {
            poor_above: 10.0,
            good_below: 0.5,
        }
    }
}

impl VerdictThresholds {
    pub fn classify(&self, objective: f64) -> Verdict {
        if objective > self.poor_above {
            Verdict::Poor
        } else if objective < self.good_below {
            Verdict::Good
        } else {
            Verdict::Acceptable
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationReport<T = f64> {
    pub objective: T,
    pub hard_conflicts: Vec<(String, String)>,
    pub feasible: bool,
    /// Flight ids per gate (index 0 is gate 1), ordered by arrival.
    pub per_gate: Vec<Vec<String>>,
    pub verdict: Verdict,
}

#[derive(serde::Serialize)]
struct ReportDocument<'a> {
    objective: f64,
    feasible: bool,
    hard_conflicts: Vec<[&'a str; 2]>,
    per_gate: Vec<GateDocument<'a>>,
    verdict: Verdict,
}

#[derive(serde::Serialize)]
struct GateDocument<'a> {
    gate: usize,
    flights: &'a [String],
}

impl<T: Scalar> EvaluationReport<T> {
    pub fn to_json(&self) -> Result<String> {
        let doc = ReportDocument {
            objective: self.objective.to_f64_lossy(),
            feasible: self.feasible,
            hard_conflicts: self
                .hard_conflicts
                .iter()
                .map(|(a, b)| [a.as_str(), b.as_str()])
                .collect(),
            per_gate: self
                .per_gate
                .iter()
                .enumerate()
                .map(|(i, flights)| GateDocument {
                    gate: i + 1,
                    flights,
                })
                .collect(),
            verdict: self.verdict,
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }
}

/// Schedule positions per gate, each list sorted by arrival.
fn gate_members<T: Scalar>(
    schedule: &Schedule<T>,
    gates: &[usize],
    gate_count: usize,
) -> Vec<Vec<usize>> {
    let mut members = vec![Vec::new(); gate_count];
    for idx in schedule.arrival_order() {
        members[gates[idx]].push(idx);
    }
    members
}

/// The `y_ij` indicator: distinct flights sharing a gate.
pub fn same_gate(assignment: &Assignment, first: &str, second: &str) -> Result<bool> {
    let a = assignment
        .gate_of(first)
        .ok_or_else(|| Error::UnknownFlight(first.to_owned()))?;
    let b = assignment
        .gate_of(second)
        .ok_or_else(|| Error::UnknownFlight(second.to_owned()))?;
    Ok(first != second && a == b)
}

/// Every same-gate pair whose locked intervals overlap, each listed once with
/// the earlier-listed schedule flight first.
pub fn hard_conflicts<T: Scalar>(
    schedule: &Schedule<T>,
    assignment: &Assignment,
    cfg: &ModelConfig<T>,
) -> Result<Vec<(String, String)>> {
    let gates = assignment.resolve(schedule)?;
    Ok(conflict_pairs(schedule, &gates, cfg.buffer())
        .into_iter()
        .map(|(i, j)| {
            let flights = schedule.flights();
            (flights[i].id().to_owned(), flights[j].id().to_owned())
        })
        .collect())
}

pub(crate) fn conflict_pairs<T: Scalar>(
    schedule: &Schedule<T>,
    gates: &[usize],
    buffer: T,
) -> Vec<(usize, usize)> {
    let flights = schedule.flights();
    let mut pairs = Vec::new();
    for i in 0..flights.len() {
        for j in i + 1..flights.len() {
            if gates[i] == gates[j] && conflicts_hard(&flights[i], &flights[j], buffer) {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// Sum of pair costs over all same-gate pairs, without the hard-policy check.
pub(crate) fn raw_objective<T: Scalar>(
    schedule: &Schedule<T>,
    gates: &[usize],
    gate_count: usize,
    cfg: &ModelConfig<T>,
) -> T {
    let flights = schedule.flights();
    let mut total = T::zero();
    for members in gate_members(schedule, gates, gate_count) {
        for (k, &i) in members.iter().enumerate() {
            for &j in &members[k + 1..] {
                total = total + pair_cost(&flights[i], &flights[j], cfg);
            }
        }
    }
    total
}

/// Expected-conflict objective. Under the hard policy an assignment with any
/// hard conflict is rejected.
pub fn objective<T: Scalar>(
    schedule: &Schedule<T>,
    assignment: &Assignment,
    cfg: &ModelConfig<T>,
) -> Result<T> {
    let gates = assignment.resolve(schedule)?;
    if cfg.overlap_policy == OverlapPolicy::Hard {
        let conflicts = conflict_pairs(schedule, &gates, cfg.buffer()).len();
        if conflicts > 0 {
            return Err(Error::HardConflicts(conflicts));
        }
    }
    Ok(raw_objective(
        schedule,
        &gates,
        assignment.gate_count(),
        cfg,
    ))
}

pub fn evaluate<T: Scalar>(
    schedule: &Schedule<T>,
    assignment: &Assignment,
    cfg: &ModelConfig<T>,
) -> Result<EvaluationReport<T>> {
    evaluate_with(schedule, assignment, cfg, &VerdictThresholds::default())
}

/// Full report. Never fails on conflicts: under the hard policy a
/// conflicting assignment reports the unpenalized sum and a poor verdict.
pub fn evaluate_with<T: Scalar>(
    schedule: &Schedule<T>,
    assignment: &Assignment,
    cfg: &ModelConfig<T>,
    thresholds: &VerdictThresholds,
) -> Result<EvaluationReport<T>> {
    let gates = assignment.resolve(schedule)?;
    let flights = schedule.flights();
    let hard_conflicts: Vec<(String, String)> = conflict_pairs(schedule, &gates, cfg.buffer())
        .into_iter()
        .map(|(i, j)| (flights[i].id().to_owned(), flights[j].id().to_owned()))
        .collect();
    let feasible = hard_conflicts.is_empty();
    let objective = raw_objective(schedule, &gates, assignment.gate_count(), cfg);
    let verdict = if !feasible && cfg.overlap_policy == OverlapPolicy::Hard {
        Verdict::Poor
    } else {
        thresholds.classify(objective.to_f64_lossy())
    };
    let per_gate = gate_members(schedule, &gates, assignment.gate_count())
        .into_iter()
        .map(|members| {
            members
                .into_iter()
                .map(|i| flights[i].id().to_owned())
                .collect()
        })
        .collect();
    Ok(EvaluationReport {
        objective,
        hard_conflicts,
        feasible,
        per_gate,
        verdict,
    })
}

/// Largest number of locked intervals sharing a common interior point. No
/// conflict-free assignment uses fewer gates, and one always exists with
/// exactly this many.
pub fn min_gates_lower_bound<T: Scalar>(schedule: &Schedule<T>, buffer: T) -> Result<usize> {
    schedule.require_non_empty()?;
    // (time, delta): ends sort before starts at equal times so touching
    // intervals never count as concurrent.
    let mut events: Vec<(T, i32)> = Vec::with_capacity(schedule.len() * 2);
    for flight in schedule.flights() {
        events.push((flight.arrival() - buffer, 1));
        events.push((flight.departure() + buffer, -1));
    }
    events.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .expect("comparable times")
            .then(a.1.cmp(&b.1))
    });
    let mut live = 0i32;
    let mut peak = 0i32;
    for (_, delta) in events {
        live += delta;
        peak = peak.max(live);
    }
    Ok(peak as usize)
}
