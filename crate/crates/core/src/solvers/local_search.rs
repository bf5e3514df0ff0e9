//! First-improvement hill climbing with relocate and swap moves.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::evaluator::{self, Assignment};
use crate::model::{ModelConfig, Schedule};
use crate::scalar::Scalar;

use super::{finish, is_hard, Budget, Prepared, SearchLimits, SolveResult};

struct State<'p, 'a, T> {
    p: &'p Prepared<'a, T>,
    hard: bool,
    gate: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl<T: Scalar> State<'_, '_, T> {
    /// Cost `f` pays against gate `g`'s flights, ignoring `skip`.
    fn load(&self, f: usize, g: usize, skip: Option<usize>) -> T {
        self.members[g]
            .iter()
            .filter(|&&h| h != f && Some(h) != skip)
            .fold(T::zero(), |acc, &h| acc + self.p.cost(h, f))
    }

    fn fits(&self, f: usize, g: usize, skip: Option<usize>) -> bool {
        !self.hard
            || self.members[g]
                .iter()
                .all(|&h| h == f || Some(h) == skip || !self.p.conflict(h, f))
    }

    fn relocate_delta(&self, f: usize, to: usize) -> Option<T> {
        self.fits(f, to, None)
            .then(|| self.load(f, to, None) - self.load(f, self.gate[f], None))
    }

    fn swap_delta(&self, f: usize, other: usize) -> Option<T> {
        let (gf, go) = (self.gate[f], self.gate[other]);
        if !self.fits(f, go, Some(other)) || !self.fits(other, gf, Some(f)) {
            return None;
        }
        let after = self.load(f, go, Some(other)) + self.load(other, gf, Some(f));
        let before = self.load(f, gf, None) + self.load(other, go, None);
        Some(after - before)
    }

    fn move_to(&mut self, f: usize, to: usize) {
        let from = self.gate[f];
        self.members[from].retain(|&h| h != f);
        self.members[to].push(f);
        self.gate[f] = to;
    }
}

/// Improves `init` until no relocate or swap move lowers the objective, or a
/// budget runs out. Never returns a worse assignment than `init`.
///
/// Flights are scanned in an order shuffled once per pass from `rng_seed`;
/// target gates and swap partners are scanned in ascending order.
pub fn local_search<T: Scalar>(
    schedule: &Schedule<T>,
    init: &Assignment,
    cfg: &ModelConfig<T>,
    limits: &SearchLimits,
) -> Result<SolveResult<T>> {
    let mut budget = Budget::new(limits);
    // Validates coverage and, under the hard policy, feasibility of `init`.
    evaluator::objective(schedule, init, cfg)?;
    let p = Prepared::new(schedule, cfg);
    let gate_count = init.gate_count();
    let gate = p.ranks(init)?;
    let mut members = vec![Vec::new(); gate_count];
    for (f, &g) in gate.iter().enumerate() {
        members[g].push(f);
    }
    let mut state = State {
        p: &p,
        hard: is_hard(cfg),
        gate,
        members,
    };
    let eps = T::improvement_epsilon();
    let threshold = T::zero() - eps;
    let mut rng = ChaCha8Rng::seed_from_u64(limits.rng_seed);
    let mut order: Vec<usize> = (0..p.n).collect();

    'passes: loop {
        order.shuffle(&mut rng);
        let mut improved = false;
        for &f in &order {
            for to in 0..gate_count {
                if to == state.gate[f] {
                    continue;
                }
                if !budget.tick() {
                    break 'passes;
                }
                if state.relocate_delta(f, to).is_some_and(|d| d < threshold) {
                    state.move_to(f, to);
                    improved = true;
                }
            }
            for other in 0..p.n {
                if state.gate[other] == state.gate[f] {
                    continue;
                }
                if !budget.tick() {
                    break 'passes;
                }
                if state.swap_delta(f, other).is_some_and(|d| d < threshold) {
                    let (gf, go) = (state.gate[f], state.gate[other]);
                    state.move_to(f, go);
                    state.move_to(other, gf);
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }

    let assignment = p.assignment(gate_count, &state.gate);
    finish(schedule, assignment, cfg, false, &budget)
}
