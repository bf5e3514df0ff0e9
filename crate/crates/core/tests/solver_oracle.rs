use gatekeeper_core::data_io::{generate_instance, GeneratorSpec};
use gatekeeper_core::evaluator::{self, min_gates_lower_bound};
use gatekeeper_core::solvers::{
    branch_and_bound_with, brute_force, greedy_first_fit, local_search, BnbOptions, BoundStrategy,
};
use gatekeeper_core::{Error, Flight, ModelConfig, Schedule, SearchLimits, SolveResult};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn dense(seed: u64, n: usize) -> Schedule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let flights = (0..n)
        .map(|i| {
            let a = rng.gen_range(0..400) as f64;
            Flight::new(format!("D{i}"), a, a + rng.gen_range(15..120) as f64).unwrap()
        })
        .collect();
    Schedule::new(flights).unwrap()
}

fn cold(bound: BoundStrategy) -> BnbOptions {
    BnbOptions {
        bound,
        clique_presolve: false,
        warm_start: false,
    }
}

fn same(a: &Result<SolveResult, Error>, b: &Result<SolveResult, Error>) -> bool {
    match (a, b) {
        (Ok(x), Ok(y)) => (x.objective - y.objective).abs() <= 1e-9 * x.objective.abs().max(1.0),
        (Err(Error::Infeasible { .. }), Err(Error::Infeasible { .. })) => true,
        _ => false,
    }
}

#[test]
fn every_bound_matches_brute_force_on_larger_instances() {
    let limits = SearchLimits::unlimited();
    for seed in 0..40u64 {
        let n = 8 + (seed as usize % 4);
        for (label, schedule) in [
            ("dense", dense(seed, n)),
            (
                "generated",
                generate_instance(&GeneratorSpec {
                    window_end: 700,
                    ..GeneratorSpec::new(n, seed)
                })
                .unwrap(),
            ),
        ] {
            let b = [0.0, 5.0, 15.0][seed as usize % 3];
            let cfg = ModelConfig::with_buffer(b).unwrap();
            let lb = min_gates_lower_bound(&schedule, b).unwrap();
            for c in [lb.saturating_sub(1).max(1), lb, lb + 1, lb + 2] {
                let oracle = brute_force(&schedule, c, &cfg);
                for bound in [
                    BoundStrategy::Layered,
                    BoundStrategy::Matching,
                    BoundStrategy::Lookahead,
                ] {
                    let got = branch_and_bound_with(&schedule, c, &cfg, &limits, &cold(bound));
                    assert!(
                        same(&oracle, &got),
                        "{label} seed {seed} n {n} c {c} b {b} {bound:?}: {oracle:?} vs {got:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn solver_results_reverify_through_the_evaluator() {
    for seed in 0..30u64 {
        let schedule = dense(seed, 9);
        let cfg = ModelConfig::with_buffer(10.0).unwrap();
        let c = min_gates_lower_bound(&schedule, 10.0).unwrap() + 1;
        let exact = branch_and_bound_with(
            &schedule,
            c,
            &cfg,
            &SearchLimits::unlimited(),
            &BnbOptions::default(),
        )
        .unwrap();
        let greedy = greedy_first_fit(&schedule, c, &cfg).unwrap();
        let local = local_search(
            &schedule,
            &greedy.assignment,
            &cfg,
            &SearchLimits::unlimited(),
        )
        .unwrap();
        for result in [&exact, &greedy, &local] {
            let again = evaluator::objective(&schedule, &result.assignment, &cfg).unwrap();
            assert_eq!(again, result.objective);
            assert!(
                evaluator::hard_conflicts(&schedule, &result.assignment, &cfg)
                    .unwrap()
                    .is_empty()
            );
        }
        assert!(exact.objective <= local.objective + 1e-12);
        assert!(local.objective <= greedy.objective);
    }
}

#[test]
fn optimal_objective_is_monotone_in_gate_count() {
    for seed in 0..20u64 {
        let schedule = dense(seed, 10);
        let cfg = ModelConfig::with_buffer(15.0).unwrap();
        let mut previous = f64::INFINITY;
        for c in 1..=10 {
            let value = match branch_and_bound_with(
                &schedule,
                c,
                &cfg,
                &SearchLimits::unlimited(),
                &BnbOptions::default(),
            ) {
                Ok(r) => r.objective,
                Err(Error::Infeasible { .. }) => f64::INFINITY,
                Err(e) => panic!("{e}"),
            };
            assert!(value <= previous + 1e-12, "seed {seed} c {c}");
            previous = value;
        }
        assert_eq!(previous, 0.0);
    }
}
