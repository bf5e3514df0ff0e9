use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::model::{ModelConfig, Schedule};
use crate::scalar::Scalar;

use super::{solve, SearchLimits, SolverKind};

/// One gate count of a sweep. `objective` is `None` when infeasible.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow<T = f64> {
    pub gate_count: usize,
    pub objective: Option<T>,
    pub runtime: Duration,
    pub proven_optimal: bool,
}

/// Solves the schedule once per gate count. Rows come back sorted by gate
/// count with duplicates removed.
pub fn sweep<T: Scalar>(
    schedule: &Schedule<T>,
    gate_counts: &[usize],
    cfg: &ModelConfig<T>,
    kind: SolverKind,
    limits: &SearchLimits,
) -> Result<Vec<SweepRow<T>>> {
    let mut counts = gate_counts.to_vec();
    counts.sort_unstable();
    counts.dedup();
    let mut rows = Vec::with_capacity(counts.len());
    for gate_count in counts {
        let start = Instant::now();
        let row = match solve(schedule, gate_count, cfg, kind, limits) {
            Ok(result) => SweepRow {
                gate_count,
                objective: Some(result.objective),
                runtime: start.elapsed(),
                proven_optimal: result.proven_optimal,
            },
            Err(Error::Infeasible { .. }) => SweepRow {
                gate_count,
                objective: None,
                runtime: start.elapsed(),
                // Heuristics can miss feasible assignments; only the exact
                // solver proves infeasibility.
                proven_optimal: kind == SolverKind::Exact,
            },
            Err(e) => return Err(e),
        };
        rows.push(row);
    }
    Ok(rows)
}

/// Whether objectives never increase down the table, counting infeasible
/// rows as +infinity. `tolerance` is relative.
pub fn objectives_non_increasing<T: Scalar>(rows: &[SweepRow<T>], tolerance: f64) -> bool {
    rows.windows(2)
        .all(|w| match (w[0].objective, w[1].objective) {
            (_, None) => w[0].objective.is_none(),
            (None, Some(_)) => true,
            (Some(a), Some(b)) => {
                let (a, b) = (a.to_f64_lossy(), b.to_f64_lossy());
                b <= a + tolerance * a.abs().max(1.0)
            }
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::fixtures::{cfg, random_schedule};

    #[test]
    fn rows_sorted_and_monotone() {
        let s = random_schedule(4, 9);
        let rows = sweep(
            &s,
            &[5, 1, 3, 2, 4, 3],
            &cfg(15.0),
            SolverKind::Exact,
            &SearchLimits::unlimited(),
        )
        .unwrap();
        let counts: Vec<_> = rows.iter().map(|r| r.gate_count).collect();
        assert_eq!(counts, vec![1, 2, 3, 4, 5]);
        assert!(rows.iter().all(|r| r.proven_optimal));
        assert!(objectives_non_increasing(&rows, 1e-9));
    }

    #[test]
    fn single_row() {
        let s = random_schedule(4, 9);
        let rows = sweep(
            &s,
            &[5],
            &cfg(15.0),
            SolverKind::Greedy,
            &SearchLimits::unlimited(),
        )
        .unwrap();
        assert_eq!(rows.len(), 1);
    }

    #[test]
    fn monotonicity_check() {
        let row = |c, v: Option<f64>| SweepRow {
            gate_count: c,
            objective: v,
            runtime: Duration::ZERO,
            proven_optimal: true,
        };
        assert!(objectives_non_increasing(
            &[row(1, None), row(2, Some(3.0)), row(3, Some(1.0))],
            1e-9
        ));
        assert!(!objectives_non_increasing(
            &[row(1, Some(1.0)), row(2, Some(3.0))],
            1e-9
        ));
        assert!(!objectives_non_increasing(
            &[row(1, Some(1.0)), row(2, None)],
            1e-9
        ));
    }
}
