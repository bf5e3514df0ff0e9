use std::fs;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use gatekeeper_core::data_io::{
    generate_instance, parse_assignment, parse_schedule, write_assignment, write_schedule,
    GeneratorSpec, ScheduleFormat,
};
use gatekeeper_core::evaluator::{self, min_gates_lower_bound};
use gatekeeper_core::model::{conflict_probability, expected_term};
use gatekeeper_core::solvers::{
    branch_and_bound, branch_and_bound_with, brute_force, greedy_first_fit, local_search,
    objectives_non_increasing, solve, sweep, BnbOptions,
};
use gatekeeper_core::{
    Error, Flight, ModelConfig, Schedule, SearchLimits, SolveResult, SolverKind,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORACLE_REL_TOL: f64 = 1e-9;
const ORACLE_INSTANCES: usize = 240;
const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(60);
const FEASIBILITY_INSTANCES: usize = 120;
const ZERO_INSTANCES: usize = 120;
const SWEEP_FLIGHTS: usize = 33;
const SWEEP_SEED: u64 = 7;
const SWEEP_GATES: [usize; 14] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 15, 20, 30, 50];
const SWEEP_TOL: f64 = 1e-9;
const WORKED_TOL: f64 = 1e-9;
const FORMULA_TOL: f64 = 1e-12;
const FORMULA_PAIRS: usize = 1000;
const SCALE_FLIGHTS: usize = 996;
const SCALE_TIME_LIMIT: Duration = Duration::from_secs(10);
const ROUND_TRIP_TOL: f64 = 1e-9;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn random_schedule(rng: &mut ChaCha8Rng, n: usize) -> Schedule {
    let flights = (0..n)
        .map(|i| {
            let a = rng.gen_range(0..300) as f64;
            Flight::new(format!("R{i}"), a, a + rng.gen_range(10..90) as f64).unwrap()
        })
        .collect();
    Schedule::new(flights).unwrap()
}

fn relative_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

fn objective_or_infeasible(result: Result<SolveResult, Error>) -> Result<Option<f64>, String> {
    match result {
        Ok(r) => Ok(Some(r.objective)),
        Err(Error::Infeasible { .. }) => Ok(None),
        Err(e) => Err(e.to_string()),
    }
}

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let started = Instant::now();
    let mut worst = 0.0f64;
    for k in 0..ORACLE_INSTANCES {
        let n = rng.gen_range(2..=7);
        let c = rng.gen_range(1..=4);
        let b = [0.0, 5.0, 15.0][rng.gen_range(0..3)];
        let schedule = random_schedule(&mut rng, n);
        let cfg = ModelConfig::with_buffer(b).unwrap();
        let oracle = objective_or_infeasible(brute_force(&schedule, c, &cfg))?;
        let exact = objective_or_infeasible(branch_and_bound(
            &schedule,
            c,
            &cfg,
            &SearchLimits::unlimited(),
        ))?;
        match (oracle, exact) {
            (Some(x), Some(y)) => {
                let gap = relative_gap(x, y);
                worst = worst.max(gap);
                if gap > ORACLE_REL_TOL {
                    return Err(format!("instance {k} (n={n}, c={c}, b={b}): {x} vs {y}"));
                }
            }
            (None, None) => {}
            _ => {
                return Err(format!(
                    "instance {k} (n={n}, c={c}, b={b}): feasibility differs"
                ))
            }
        }
    }
    let elapsed = started.elapsed();
    if elapsed > ORACLE_TIME_LIMIT {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "{ORACLE_INSTANCES} instances, max rel diff {worst:.1e}, {elapsed:.2?}"
    ))
}

fn interval_coloring_feasibility() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let no_presolve = BnbOptions {
        clique_presolve: false,
        ..BnbOptions::default()
    };
    let mut checks = 0;
    for k in 0..FEASIBILITY_INSTANCES {
        let n = rng.gen_range(1..=8);
        let b = rng.gen_range(0..=20) as f64;
        let schedule = random_schedule(&mut rng, n);
        let cfg = ModelConfig::with_buffer(b).unwrap();
        let lb = min_gates_lower_bound(&schedule, b).map_err(|e| e.to_string())?;
        for c in 1..=n {
            let limits = SearchLimits::unlimited();
            let solved = branch_and_bound_with(&schedule, c, &cfg, &limits, &no_presolve);
            let feasible = objective_or_infeasible(solved)?.is_some();
            let oracle = objective_or_infeasible(brute_force(&schedule, c, &cfg))?.is_some();
            if feasible != (c >= lb) || oracle != feasible {
                return Err(format!(
                    "instance {k}: c={c}, lower bound {lb}, solver feasible {feasible}"
                ));
            }
            checks += 1;
        }
    }
    Ok(format!(
        "{FEASIBILITY_INSTANCES} instances, {checks} gate counts"
    ))
}

fn sweep_schedule() -> Schedule {
    generate_instance(&GeneratorSpec::new(SWEEP_FLIGHTS, SWEEP_SEED)).unwrap()
}

fn monotone_sweep_library() -> Check {
    let schedule = sweep_schedule();
    let cfg = ModelConfig::with_buffer(15.0).unwrap();
    let rows = sweep(
        &schedule,
        &SWEEP_GATES,
        &cfg,
        SolverKind::Exact,
        &SearchLimits::unlimited(),
    )
    .map_err(|e| e.to_string())?;
    if rows.len() != SWEEP_GATES.len() {
        return Err(format!("{} rows", rows.len()));
    }
    if let Some(row) = rows.iter().find(|r| !r.proven_optimal) {
        return Err(format!("gate count {} not proven optimal", row.gate_count));
    }
    if !objectives_non_increasing(&rows, SWEEP_TOL) {
        return Err("objectives increase".into());
    }
    let last = rows.last().and_then(|r| r.objective);
    if last != Some(0.0) {
        return Err(format!("floor is {last:?}"));
    }
    let feasible_from = rows
        .iter()
        .find(|r| r.objective.is_some())
        .map(|r| r.gate_count);
    Ok(format!(
        "{} rows, feasible from {feasible_from:?} gates, floor 0",
        rows.len()
    ))
}

fn monotone_sweep_cli() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let schedule = dir.path().join("schedule.csv");
    let table = dir.path().join("sweep.csv");
    let mut text = Vec::new();
    write_schedule(&sweep_schedule(), &mut text).map_err(|e| e.to_string())?;
    fs::write(&schedule, text).map_err(|e| e.to_string())?;
    let gates = SWEEP_GATES.map(|g| g.to_string()).join(",");
    let output = Command::new(env!("CARGO_BIN_EXE_gatekeeper"))
        .args(["sweep", "--gates", &gates, "--csv"])
        .arg(&table)
        .arg("--schedule")
        .arg(&schedule)
        .env_remove("GATEKEEPER_OVERLAP")
        .output()
        .map_err(|e| e.to_string())?;
    if !output.status.success() {
        return Err(String::from_utf8_lossy(&output.stderr).into_owned());
    }
    let csv = fs::read_to_string(&table).map_err(|e| e.to_string())?;
    let mut previous = f64::INFINITY;
    let mut rows = 0;
    for line in csv.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        let value = match cells[1] {
            "infeasible" => f64::INFINITY,
            v => v.parse::<f64>().map_err(|e| e.to_string())?,
        };
        if cells[3] != "true" {
            return Err(format!("row {line} not proven optimal"));
        }
        if value > previous + SWEEP_TOL * previous.abs().max(1.0) {
            return Err(format!("row {line} increases"));
        }
        previous = value;
        rows += 1;
    }
    if rows != SWEEP_GATES.len() {
        return Err(format!("{rows} rows"));
    }
    Ok(format!("{rows} rows non-increasing"))
}

fn zero_characterization() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in 0..ZERO_INSTANCES {
        let n = rng.gen_range(1..=8);
        let b = rng.gen_range(1..=20) as f64;
        let schedule = random_schedule(&mut rng, n);
        let cfg = ModelConfig::with_buffer(b).unwrap();
        for c in 1..=n + 1 {
            let objective = objective_or_infeasible(branch_and_bound(
                &schedule,
                c,
                &cfg,
                &SearchLimits::unlimited(),
            ))?;
            if (objective == Some(0.0)) != (c >= n) {
                return Err(format!(
                    "instance {k}: n={n}, c={c}, objective {objective:?}"
                ));
            }
        }
    }
    Ok(format!("{ZERO_INSTANCES} instances"))
}

fn worked_example() -> Check {
    let schedule: Schedule = Schedule::new(vec![
        Flight::new("f1", 0.0, 60.0).unwrap(),
        Flight::new("f2", 100.0, 160.0).unwrap(),
        Flight::new("f3", 200.0, 260.0).unwrap(),
    ])
    .unwrap();
    let cfg = ModelConfig::with_buffer(15.0).unwrap();
    let mut found = Vec::new();
    for (c, expected) in [(1, 2.0 / 70.0 + 1.0 / 170.0), (2, 1.0 / 170.0)] {
        let got = branch_and_bound(&schedule, c, &cfg, &SearchLimits::unlimited())
            .map_err(|e| e.to_string())?
            .objective;
        let oracle = brute_force(&schedule, c, &cfg)
            .map_err(|e| e.to_string())?
            .objective;
        if (got - expected).abs() > WORKED_TOL || (oracle - expected).abs() > WORKED_TOL {
            return Err(format!(
                "c={c}: solver {got}, oracle {oracle}, expected {expected}"
            ));
        }
        found.push(format!("c={c}: {got:.7}"));
    }
    Ok(found.join(", "))
}

fn formula_checks() -> Check {
    let f1: Flight = Flight::new("i", 0.0, 60.0).unwrap();
    let f2: Flight = Flight::new("j", 100.0, 160.0).unwrap();
    let p = conflict_probability(&f1, &f2, 15.0).map_err(|e| e.to_string())?;
    if (p - 3.0 / 7.0).abs() > FORMULA_TOL {
        return Err(format!("probability at gap 40, buffer 15 is {p}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for _ in 0..FORMULA_PAIRS {
        let b: f64 = rng.gen_range(0.5..30.0);
        let gap = 2.0 * b + rng.gen_range(0.0..300.0);
        let a = rng.gen_range(0.0..600.0);
        let first = Flight::new("i", a, a + rng.gen_range(1.0..120.0)).unwrap();
        let second =
            Flight::new("j", first.departure() + gap, first.departure() + gap + 60.0).unwrap();
        let cfg = ModelConfig::with_buffer(b).unwrap();
        let p = conflict_probability(&first, &second, b).map_err(|e| e.to_string())?;
        let term = expected_term(&first, &second, &cfg).map_err(|e| e.to_string())?;
        let diff = (term - p / (2.0 * b)).abs();
        worst = worst.max(diff);
        if diff > FORMULA_TOL {
            return Err(format!(
                "gap {gap}, buffer {b}: term {term}, p/(2b) {}",
                p / (2.0 * b)
            ));
        }
    }
    Ok(format!(
        "p = 3/7, {FORMULA_PAIRS} pairs, max diff {worst:.1e}"
    ))
}

fn scale_smoke_test() -> Check {
    let started = Instant::now();
    let schedule: Schedule =
        generate_instance(&GeneratorSpec::new(SCALE_FLIGHTS, 1)).map_err(|e| e.to_string())?;
    let cfg = ModelConfig::with_buffer(15.0).unwrap();
    let c = min_gates_lower_bound(&schedule, 15.0).map_err(|e| e.to_string())? + 2;
    let greedy = greedy_first_fit(&schedule, c, &cfg).map_err(|e| e.to_string())?;
    let local = local_search(
        &schedule,
        &greedy.assignment,
        &cfg,
        &SearchLimits::unlimited(),
    )
    .map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();
    if elapsed > SCALE_TIME_LIMIT {
        return Err(format!("took {elapsed:?}"));
    }
    if local.objective > greedy.objective {
        return Err(format!(
            "local {} above greedy {}",
            local.objective, greedy.objective
        ));
    }
    Ok(format!(
        "{c} gates, greedy {:.4}, local {:.4}, {elapsed:.2?}",
        greedy.objective, local.objective
    ))
}

fn round_trip() -> Check {
    let mut instances = 0;
    for seed in 0..20u64 {
        let spec = GeneratorSpec::new(15 + seed as usize, seed);
        let schedule: Schedule = generate_instance(&spec).map_err(|e| e.to_string())?;
        let mut bytes = Vec::new();
        write_schedule(&schedule, &mut bytes).map_err(|e| e.to_string())?;
        let parsed: Schedule =
            parse_schedule(bytes.as_slice(), ScheduleFormat::Csv).map_err(|e| e.to_string())?;
        let mut again = Vec::new();
        write_schedule(&parsed, &mut again).map_err(|e| e.to_string())?;
        if bytes != again {
            return Err(format!("seed {seed}: schedule CSV changed on round trip"));
        }

        let cfg = ModelConfig::with_buffer(15.0).unwrap();
        let c = min_gates_lower_bound(&schedule, 15.0).map_err(|e| e.to_string())? + 1;
        for kind in [SolverKind::Exact, SolverKind::Greedy, SolverKind::Local] {
            let result = solve(&schedule, c, &cfg, kind, &SearchLimits::unlimited())
                .map_err(|e| e.to_string())?;
            let mut csv = Vec::new();
            write_assignment(&schedule, &result.assignment, &mut csv).map_err(|e| e.to_string())?;
            let assignment =
                parse_assignment(csv.as_slice(), Some(c)).map_err(|e| e.to_string())?;
            let report =
                evaluator::evaluate(&parsed, &assignment, &cfg).map_err(|e| e.to_string())?;
            if relative_gap(report.objective, result.objective) > ROUND_TRIP_TOL {
                return Err(format!(
                    "seed {seed} {kind:?}: solved {}, evaluated {}",
                    result.objective, report.objective
                ));
            }
            instances += 1;
        }
    }
    Ok(format!(
        "{instances} solve/evaluate round trips, 20 byte-exact schedule round trips"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 oracle equivalence", oracle_equivalence),
        (
            "2 interval-coloring feasibility",
            interval_coloring_feasibility,
        ),
        ("3 monotone sweep (library)", monotone_sweep_library),
        ("3 monotone sweep (cli)", monotone_sweep_cli),
        ("4 zero characterization", zero_characterization),
        ("5 worked example", worked_example),
        ("6 formula checks", formula_checks),
        ("7 scale smoke test", scale_smoke_test),
        ("8 round trip", round_trip),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
