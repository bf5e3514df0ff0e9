use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::Path;
use std::time::Duration;

use anyhow::{bail, Context};
use gatekeeper_core::data_io::{
    emit_gantt, emit_scatter_plot, generate_instance, parse_assignment, parse_schedule,
    write_assignment, write_schedule, GeneratorSpec, ScheduleFormat,
};
use gatekeeper_core::evaluator::evaluate_with;
use gatekeeper_core::solvers::{objectives_non_increasing, solve, sweep};
use gatekeeper_core::{
    Error, ModelConfig, Schedule, SearchLimits, SolverKind, SweepRow, VerdictThresholds,
};

use crate::args::{
    parse_gate_list, EvaluateArgs, GenerateArgs, LimitArgs, ModelArgs, OverlapArg, PlotArgs,
    SolveArgs, SweepArgs,
};

/// How a successful run should exit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    ConflictsFound,
    Infeasible,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::ConflictsFound => 2,
            Outcome::Infeasible => 3,
        }
    }
}

fn read_schedule(path: &Path) -> anyhow::Result<Schedule> {
    let file =
        File::open(path).with_context(|| format!("cannot open schedule {}", path.display()))?;
    parse_schedule(BufReader::new(file), ScheduleFormat::Csv)
        .with_context(|| format!("invalid schedule {}", path.display()))
}

fn read_assignment(
    path: &Path,
    gates: Option<usize>,
) -> anyhow::Result<gatekeeper_core::Assignment> {
    let file =
        File::open(path).with_context(|| format!("cannot open assignment {}", path.display()))?;
    parse_assignment(BufReader::new(file), gates)
        .with_context(|| format!("invalid assignment {}", path.display()))
}

fn model_config(model: &ModelArgs, overlap: OverlapArg) -> anyhow::Result<ModelConfig> {
    if !model.buffer.is_finite() {
        bail!("buffer must be a finite number of minutes");
    }
    Ok(ModelConfig::new(
        model.buffer,
        model.objective.into(),
        overlap.into(),
    )?)
}

fn search_limits(args: &LimitArgs) -> anyhow::Result<SearchLimits> {
    let mut limits = SearchLimits::unlimited().with_seed(args.seed);
    if let Some(nodes) = args.max_nodes {
        limits = limits.with_max_nodes(nodes)?;
    }
    if let Some(seconds) = args.time_budget {
        let budget = Duration::try_from_secs_f64(seconds).context("invalid time budget")?;
        limits = limits.with_time_budget(budget)?;
    }
    Ok(limits)
}

fn create(path: &Path) -> anyhow::Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(file))
}

/// Runs `write` against `path`, or standard output when `path` is `None`.
fn with_output(
    path: Option<&Path>,
    write: impl FnOnce(&mut dyn Write) -> anyhow::Result<()>,
) -> anyhow::Result<()> {
    match path {
        Some(path) => {
            let mut sink = create(path)?;
            write(&mut sink)?;
            sink.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut sink = stdout.lock();
            write(&mut sink)?;
            sink.flush()?;
        }
    }
    Ok(())
}

pub fn generate(args: &GenerateArgs) -> anyhow::Result<Outcome> {
    let spec = GeneratorSpec {
        flight_count: args.flights,
        window_start: args.window_start,
        window_end: args.window_end,
        stay_duration: args.stay,
        rng_seed: args.seed,
    };
    let schedule: Schedule = generate_instance(&spec)?;
    with_output(args.out.as_deref(), |sink| {
        Ok(write_schedule(&schedule, sink)?)
    })?;
    Ok(Outcome::Success)
}

pub fn evaluate(args: &EvaluateArgs) -> anyhow::Result<Outcome> {
    let schedule = read_schedule(&args.schedule)?;
    let assignment = read_assignment(&args.assignment, args.gates)?;
    let cfg = model_config(&args.model, args.overlap)?;
    let thresholds = VerdictThresholds {
        poor_above: args.poor_above,
        good_below: args.good_below,
    };
    let report = evaluate_with(&schedule, &assignment, &cfg, &thresholds)?;
    let json = report.to_json()?;
    with_output(None, |sink| Ok(writeln!(sink, "{json}")?))?;
    Ok(if report.feasible {
        Outcome::Success
    } else {
        Outcome::ConflictsFound
    })
}

#[derive(serde::Serialize)]
struct SolveSummary<'a> {
    solver: &'a str,
    gate_count: usize,
    flights: usize,
    objective: f64,
    proven_optimal: bool,
    nodes_explored: u64,
    elapsed_seconds: f64,
}

fn solver_name(kind: SolverKind) -> &'static str {
    match kind {
        SolverKind::Exact => "exact",
        SolverKind::Greedy => "greedy",
        SolverKind::Local => "local",
    }
}

pub fn solve_cmd(args: &SolveArgs) -> anyhow::Result<Outcome> {
    let schedule = read_schedule(&args.schedule)?;
    let cfg = model_config(&args.model, args.overlap)?;
    let limits = search_limits(&args.limits)?;
    let kind = SolverKind::from(args.solver);
    let result = match solve(&schedule, args.gates, &cfg, kind, &limits) {
        Ok(result) => result,
        Err(Error::Infeasible { gate_count }) => {
            eprintln!(
                "infeasible: {gate_count} gate(s) cannot host {} flights without conflicts",
                schedule.len()
            );
            return Ok(Outcome::Infeasible);
        }
        Err(e) => return Err(e.into()),
    };
    with_output(args.out.as_deref(), |sink| {
        Ok(write_assignment(&schedule, &result.assignment, sink)?)
    })?;
    let summary = SolveSummary {
        solver: solver_name(kind),
        gate_count: args.gates,
        flights: schedule.len(),
        objective: result.objective,
        proven_optimal: result.proven_optimal,
        nodes_explored: result.nodes_explored,
        elapsed_seconds: result.elapsed.as_secs_f64(),
    };
    let json = serde_json::to_string_pretty(&summary)?;
    match &args.summary {
        Some(path) => {
            let mut sink = create(path)?;
            writeln!(sink, "{json}")?;
            sink.flush()?;
        }
        None => eprintln!("{json}"),
    }
    Ok(Outcome::Success)
}

fn objective_cell(row: &SweepRow) -> String {
    match row.objective {
        Some(v) => format!("{v:.4}"),
        None => "infeasible".into(),
    }
}

pub fn sweep_cmd(args: &SweepArgs) -> anyhow::Result<Outcome> {
    let schedule = read_schedule(&args.schedule)?;
    let cfg = model_config(&args.model, args.overlap)?;
    let limits = search_limits(&args.limits)?;
    let gates = parse_gate_list(&args.gates).map_err(anyhow::Error::msg)?;
    let kind = SolverKind::from(args.solver);
    let rows = sweep(&schedule, &gates, &cfg, kind, &limits)?;

    let stdout = io::stdout();
    let mut out = stdout.lock();
    writeln!(
        out,
        "{:>6}  {:>12}  {:>12}  {:>7}",
        "gates", "objective", "runtime_s", "optimal"
    )?;
    for row in &rows {
        writeln!(
            out,
            "{:>6}  {:>12}  {:>12.3}  {:>7}",
            row.gate_count,
            objective_cell(row),
            row.runtime.as_secs_f64(),
            if row.proven_optimal { "yes" } else { "no" }
        )?;
    }
    out.flush()?;

    if let Some(path) = &args.csv {
        let mut sink = create(path)?;
        writeln!(sink, "gate_count,objective,runtime_seconds,proven_optimal")?;
        for row in &rows {
            let objective = row
                .objective
                .map_or_else(|| "infeasible".to_owned(), |v| format!("{v}"));
            writeln!(
                sink,
                "{},{},{},{}",
                row.gate_count,
                objective,
                row.runtime.as_secs_f64(),
                row.proven_optimal
            )?;
        }
        sink.flush()?;
    }

    if rows.iter().all(|r| r.proven_optimal) && !objectives_non_increasing(&rows, 1e-9) {
        eprintln!("warning: optimal objectives increase with the gate count");
    }
    Ok(Outcome::Success)
}

pub fn plot(args: &PlotArgs) -> anyhow::Result<Outcome> {
    let schedule = read_schedule(&args.schedule)?;
    let mut sink = create(&args.scatter)?;
    emit_scatter_plot(&schedule, &mut sink)?;
    sink.flush()?;
    if let Some(path) = &args.assignment {
        let assignment = read_assignment(path, args.gates)?;
        let cfg = model_config(&args.model, args.overlap)?;
        let mut sink = create(&args.gantt)?;
        emit_gantt(&schedule, &assignment, &cfg, &mut sink)?;
        sink.flush()?;
    }
    eprintln!("wrote {}", args.scatter.display());
    if args.assignment.is_some() {
        eprintln!("wrote {}", args.gantt.display());
    }
    Ok(Outcome::Success)
}
