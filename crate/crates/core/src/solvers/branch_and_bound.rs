//! Depth-first branch and bound over gate-canonical partial assignments.
//!
//! Flights are placed in arrival order. A flight may join any used gate whose
//! latest locked interval ends no later than the flight's locked start, or
//! open exactly one fresh gate. Partial objectives only grow as flights are
//! added, so the accumulated sum bounds every completion from below; the
//! lookahead bound adds a per-flight minimum for the flights still unplaced.

use crate::error::{Error, Result};
use crate::evaluator::min_gates_lower_bound;
use crate::model::{ModelConfig, Schedule};
use crate::scalar::Scalar;

use super::matching::min_cost_assignment;
use super::{
    check_gates, finish, greedy_first_fit, is_hard, local_search, Budget, Prepared, SearchLimits,
    SolveResult,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BoundStrategy {
    /// The accumulated objective of the placed flights.
    PartialSum,
    /// Partial sum plus, for each unplaced flight, the cheapest way it could
    /// be preceded on a gate, with the most expensive flights assumed to open
    /// the remaining fresh gates for free.
    Lookahead,
    /// Partial sum plus a minimum-cost matching of unplaced flights to
    /// distinct immediate predecessors: the current last flight of a used
    /// gate, another unplaced flight, or the start of a fresh gate.
    Matching,
    /// The matching bound plus one further matching per depth `t ≥ 2` that
    /// charges each unplaced flight its `t`-th unplaced predecessor on the
    /// same gate. At most `t` unplaced flights per gate lack one.
    #[default]
    Layered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BnbOptions {
    pub bound: BoundStrategy,
    /// Answer `infeasible` up front when the gate count is below the clique
    /// bound instead of proving it by search.
    pub clique_presolve: bool,
    /// Seed the incumbent with greedy construction plus local search.
    pub warm_start: bool,
}

impl Default for BnbOptions {
    fn default() -> Self {
        Self {
            bound: BoundStrategy::Layered,
            clique_presolve: true,
            warm_start: true,
        }
    }
}

pub fn branch_and_bound<T: Scalar>(
    schedule: &Schedule<T>,
    gate_count: usize,
    cfg: &ModelConfig<T>,
    limits: &SearchLimits,
) -> Result<SolveResult<T>> {
    branch_and_bound_with(schedule, gate_count, cfg, limits, &BnbOptions::default())
}

/// Exact search under the hard overlap policy. On budget exhaustion the best
/// incumbent is returned with `proven_optimal = false`.
pub fn branch_and_bound_with<T: Scalar>(
    schedule: &Schedule<T>,
    gate_count: usize,
    cfg: &ModelConfig<T>,
    limits: &SearchLimits,
    options: &BnbOptions,
) -> Result<SolveResult<T>> {
    check_gates(gate_count)?;
    schedule.require_non_empty()?;
    if !is_hard(cfg) {
        return Err(Error::SoftPolicyUnsupported);
    }
    let mut budget = Budget::new(limits);
    if options.clique_presolve && gate_count < min_gates_lower_bound(schedule, cfg.buffer())? {
        return Err(Error::Infeasible { gate_count });
    }

    let prepared = Prepared::new(schedule, cfg);
    let mut search = Search::new(&prepared, gate_count, options.bound);
    if options.warm_start {
        if let Some((value, ranks)) = warm_start(schedule, gate_count, cfg, limits, &prepared)? {
            search.best = Some((value, ranks));
        }
    }
    search.dfs(0, &mut budget);

    let proven = !budget.exhausted();
    match search.best {
        Some((_, ranks)) => {
            let assignment = prepared.assignment(gate_count, &ranks);
            finish(schedule, assignment, cfg, proven, &budget)
        }
        None if proven => Err(Error::Infeasible { gate_count }),
        None => Err(Error::BudgetExhausted),
    }
}

fn warm_start<T: Scalar>(
    schedule: &Schedule<T>,
    gate_count: usize,
    cfg: &ModelConfig<T>,
    limits: &SearchLimits,
    prepared: &Prepared<'_, T>,
) -> Result<Option<(T, Vec<usize>)>> {
    let greedy = match greedy_first_fit(schedule, gate_count, cfg) {
        Ok(result) => result,
        Err(Error::Infeasible { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let polish = SearchLimits::unlimited()
        .with_seed(limits.rng_seed)
        .with_max_nodes(200_000)?;
    let improved = local_search(schedule, &greedy.assignment, cfg, &polish)?;
    let ranks = prepared.ranks(&improved.assignment)?;
    // Score with the search's own pair table so pruning compares like with like.
    let mut value = T::zero();
    for i in 0..ranks.len() {
        for j in i + 1..ranks.len() {
            if ranks[i] == ranks[j] {
                value = value + prepared.cost(i, j);
            }
        }
    }
    Ok(Some((value, ranks)))
}

struct Search<'p, 'a, T> {
    p: &'p Prepared<'a, T>,
    /// Gates that can ever be used; opening more than `n` is pointless.
    gate_cap: usize,
    bound: BoundStrategy,
    /// `pred_min[s * n + f]`: cheapest pair cost between `f` and a compatible
    /// earlier flight with rank in `s..f`.
    pred_min: Vec<Option<T>>,
    /// Locked end of the latest flight on each used gate.
    gate_end: Vec<T>,
    /// `gate_cost[g * n + f]`: cost `f` would pay joining gate `g` now.
    gate_cost: Vec<T>,
    ranks: Vec<usize>,
    partial: T,
    best: Option<(T, Vec<usize>)>,
    scratch: Vec<Vec<T>>,
}

impl<'p, 'a, T: Scalar> Search<'p, 'a, T> {
    fn new(p: &'p Prepared<'a, T>, gate_count: usize, bound: BoundStrategy) -> Self {
        let n = p.n;
        let gate_cap = gate_count.min(n);
        let mut pred_min = vec![
            None;
            if bound == BoundStrategy::Lookahead {
                n * n
            } else {
                0
            }
        ];
        if bound == BoundStrategy::Lookahead {
            for f in 0..n {
                let mut running: Option<T> = None;
                for s in (0..f).rev() {
                    if !p.conflict(s, f) {
                        let c = p.cost(s, f);
                        running = Some(running.map_or(c, |r| r.min_of(c)));
                    }
                    pred_min[s * n + f] = running;
                }
            }
        }
        Self {
            p,
            gate_cap,
            bound,
            pred_min,
            gate_end: Vec::with_capacity(gate_cap),
            gate_cost: vec![T::zero(); gate_cap * n],
            ranks: Vec::with_capacity(n),
            partial: T::zero(),
            best: None,
            scratch: vec![Vec::with_capacity(n); n + 1],
        }
    }

    fn admissible(&self, gate: usize, flight: usize) -> bool {
        self.gate_end[gate] <= self.p.lock_start[flight]
    }

    /// Lower bound on the cost still to be paid by flights `depth..n`, or
    /// `None` when they cannot all be placed.
    fn lookahead(&self, depth: usize) -> Option<T> {
        let n = self.p.n;
        let fresh = self.gate_cap - self.gate_end.len();
        let mut must_open = 0usize;
        let mut floors: Vec<T> = Vec::with_capacity(n - depth);
        for f in depth..n {
            let mut floor = self.pred_min[depth * n + f];
            for g in 0..self.gate_end.len() {
                if self.admissible(g, f) {
                    let c = self.gate_cost[g * n + f];
                    floor = Some(floor.map_or(c, |x| x.min_of(c)));
                }
            }
            match floor {
                Some(x) => floors.push(x),
                None => must_open += 1,
            }
        }
        if must_open > fresh {
            return None;
        }
        let free = (fresh - must_open).min(floors.len());
        floors.sort_by(|a, b| b.partial_cmp(a).expect("comparable costs"));
        Some(floors[free..].iter().fold(T::zero(), |acc, &x| acc + x))
    }

    /// Matching lower bound on the cost still to be paid by flights
    /// `depth..n`, or `None` when they cannot all be placed.
    fn matching(&self, depth: usize) -> Option<T> {
        let n = self.p.n;
        let m = n - depth;
        let used = self.gate_end.len();
        let fresh = (self.gate_cap - used).min(m);
        // Columns: used gate tails, then unplaced predecessors, then fresh gates.
        min_cost_assignment(m, used + m + fresh, |row, col| {
            let f = depth + row;
            if col < used {
                self.admissible(col, f).then(|| self.gate_cost[col * n + f])
            } else if col < used + m {
                let h = depth + col - used;
                (h < f && !self.p.conflict(h, f)).then(|| self.p.cost(h, f))
            } else {
                Some(T::zero())
            }
        })
    }

    /// Extra cost from unplaced flights' second and deeper unplaced
    /// predecessors.
    fn deeper_layers(&self, depth: usize) -> Option<T> {
        let n = self.p.n;
        let m = n - depth;
        let mut total = T::zero();
        let mut layer = 2;
        while layer * self.gate_cap < m {
            let exempt = layer * self.gate_cap;
            total = total
                + min_cost_assignment(m, m + exempt, |row, col| {
                    let f = depth + row;
                    if col < m {
                        let h = depth + col;
                        (h < f && !self.p.conflict(h, f)).then(|| self.p.cost(h, f))
                    } else {
                        Some(T::zero())
                    }
                })?;
            layer += 1;
        }
        Some(total)
    }

    fn dfs(&mut self, depth: usize, budget: &mut Budget) {
        if !budget.tick() {
            return;
        }
        let n = self.p.n;
        if depth == n {
            if self.best.as_ref().is_none_or(|(b, _)| self.partial < *b) {
                self.best = Some((self.partial, self.ranks.clone()));
            }
            return;
        }
        let bound = match self.bound {
            BoundStrategy::PartialSum => self.partial,
            BoundStrategy::Lookahead => match self.lookahead(depth) {
                Some(rest) => self.partial + rest,
                None => return,
            },
            BoundStrategy::Matching => match self.matching(depth) {
                Some(rest) => self.partial + rest,
                None => return,
            },
            BoundStrategy::Layered => match (self.matching(depth), self.deeper_layers(depth)) {
                (Some(first), Some(rest)) => self.partial + first + rest,
                _ => return,
            },
        };
        if let Some((incumbent, _)) = &self.best {
            // Ties and sub-epsilon improvements are not worth a subtree.
            let slack = T::improvement_epsilon() * incumbent.max_of(T::one());
            if bound >= *incumbent - slack {
                return;
            }
        }

        let used = self.gate_end.len();
        let mut children: Vec<(T, usize)> = (0..used)
            .filter(|&g| self.admissible(g, depth))
            .map(|g| (self.gate_cost[g * n + depth], g))
            .collect();
        if used < self.gate_cap {
            children.push((T::zero(), used));
        }
        children.sort_by(|a, b| {
            a.0.partial_cmp(&b.0)
                .expect("comparable costs")
                .then(a.1.cmp(&b.1))
        });

        for (cost, gate) in children {
            let opened = gate == self.gate_end.len();
            let saved_partial = self.partial;
            let saved_end = if opened {
                self.gate_end.push(self.p.lock_end[depth]);
                None
            } else {
                Some(std::mem::replace(
                    &mut self.gate_end[gate],
                    self.p.lock_end[depth],
                ))
            };
            let row = gate * n;
            let mut saved_row = std::mem::take(&mut self.scratch[depth]);
            saved_row.clear();
            saved_row.extend_from_slice(&self.gate_cost[row + depth + 1..row + n]);
            for f in depth + 1..n {
                self.gate_cost[row + f] = self.gate_cost[row + f] + self.p.cost(depth, f);
            }
            self.partial = self.partial + cost;
            self.ranks.push(gate);

            self.dfs(depth + 1, budget);

            self.ranks.pop();
            self.partial = saved_partial;
            self.gate_cost[row + depth + 1..row + n].copy_from_slice(&saved_row);
            self.scratch[depth] = saved_row;
            match saved_end {
                Some(end) => self.gate_end[gate] = end,
                None => {
                    self.gate_end.pop();
                }
            }
            if budget.exhausted() {
                return;
            }
        }
    }
}
