use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gatekeeper_core::{ObjectiveVariant, OverlapPolicy, SolverKind};

/// Airport gate assignment: generate schedules, score assignments, solve and
/// sweep gate counts, and plot the results.
///
/// Every flag can also be set through a `GATEKEEPER_`-prefixed environment
/// variable; flags take precedence.
#[derive(Debug, Parser)]
#[command(name = "gatekeeper", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthetic single-day schedule as CSV.
    Generate(GenerateArgs),
    /// Score an assignment and print the report as JSON.
    Evaluate(EvaluateArgs),
    /// Find an assignment for a fixed number of gates.
    Solve(SolveArgs),
    /// Solve once per gate count and tabulate objective and runtime.
    Sweep(SweepArgs),
    /// Render a scatter plot of arrivals and, given an assignment, a Gantt chart.
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    Buffered,
    Opl,
}

impl From<ObjectiveArg> for ObjectiveVariant {
    fn from(value: ObjectiveArg) -> Self {
        match value {
            ObjectiveArg::Buffered => ObjectiveVariant::Buffered,
            ObjectiveArg::Opl => ObjectiveVariant::OplCompat,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OverlapArg {
    Hard,
    Soft,
}

impl From<OverlapArg> for OverlapPolicy {
    fn from(value: OverlapArg) -> Self {
        match value {
            OverlapArg::Hard => OverlapPolicy::Hard,
            OverlapArg::Soft => OverlapPolicy::Soft,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverArg {
    Exact,
    Greedy,
    Local,
}

impl From<SolverArg> for SolverKind {
    fn from(value: SolverArg) -> Self {
        match value {
            SolverArg::Exact => SolverKind::Exact,
            SolverArg::Greedy => SolverKind::Greedy,
            SolverArg::Local => SolverKind::Local,
        }
    }
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Buffer time in minutes added before arrival and after departure.
    #[arg(long, env = "GATEKEEPER_BUFFER", default_value_t = 15.0)]
    pub buffer: f64,
    /// Objective denominator: `buffered` uses gap + 2b, `opl` uses the gap alone.
    #[arg(long, env = "GATEKEEPER_OBJECTIVE", value_enum, default_value_t = ObjectiveArg::Buffered)]
    pub objective: ObjectiveArg,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    /// Stop after exploring this many search nodes.
    #[arg(long, env = "GATEKEEPER_MAX_NODES")]
    pub max_nodes: Option<u64>,
    /// Stop after this many seconds.
    #[arg(long, env = "GATEKEEPER_TIME_BUDGET")]
    pub time_budget: Option<f64>,
    /// Seed for randomized move ordering.
    #[arg(long, env = "GATEKEEPER_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, env = "GATEKEEPER_FLIGHTS")]
    pub flights: usize,
    #[arg(long, env = "GATEKEEPER_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Earliest departure, minutes since midnight.
    #[arg(long, env = "GATEKEEPER_WINDOW_START", default_value_t = 360)]
    pub window_start: u32,
    /// Latest departure, minutes since midnight.
    #[arg(long, env = "GATEKEEPER_WINDOW_END", default_value_t = 1439)]
    pub window_end: u32,
    /// Minutes each flight spends at its gate.
    #[arg(long, env = "GATEKEEPER_STAY", default_value_t = 60)]
    pub stay: u32,
    /// Output file; standard output when omitted.
    #[arg(long, short, env = "GATEKEEPER_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long, env = "GATEKEEPER_SCHEDULE")]
    pub schedule: PathBuf,
    /// CSV with header `flight_id,gate`.
    #[arg(long, env = "GATEKEEPER_ASSIGNMENT")]
    pub assignment: PathBuf,
    /// Gate count; defaults to the highest gate in the assignment.
    #[arg(long, env = "GATEKEEPER_GATES")]
    pub gates: Option<usize>,
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, env = "GATEKEEPER_OVERLAP", value_enum, default_value_t = OverlapArg::Soft)]
    pub overlap: OverlapArg,
    /// Objectives above this are judged poor.
    #[arg(long, env = "GATEKEEPER_POOR_ABOVE", default_value_t = 10.0)]
    pub poor_above: f64,
    /// Objectives below this are judged good.
    #[arg(long, env = "GATEKEEPER_GOOD_BELOW", default_value_t = 0.5)]
    pub good_below: f64,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, env = "GATEKEEPER_SCHEDULE")]
    pub schedule: PathBuf,
    #[arg(long, env = "GATEKEEPER_GATES")]
    pub gates: usize,
    #[arg(long, env = "GATEKEEPER_SOLVER", value_enum, default_value_t = SolverArg::Exact)]
    pub solver: SolverArg,
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, env = "GATEKEEPER_OVERLAP", value_enum, default_value_t = OverlapArg::Hard)]
    pub overlap: OverlapArg,
    #[command(flatten)]
    pub limits: LimitArgs,
    /// Assignment CSV destination; standard output when omitted.
    #[arg(long, short, env = "GATEKEEPER_OUT")]
    pub out: Option<PathBuf>,
    /// Summary JSON destination; standard error when omitted.
    #[arg(long, env = "GATEKEEPER_SUMMARY")]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, env = "GATEKEEPER_SCHEDULE")]
    pub schedule: PathBuf,
    /// Gate counts, e.g. `1-10,15,20,30,50`.
    #[arg(long, env = "GATEKEEPER_GATES")]
    pub gates: String,
    #[arg(long, env = "GATEKEEPER_SOLVER", value_enum, default_value_t = SolverArg::Exact)]
    pub solver: SolverArg,
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, env = "GATEKEEPER_OVERLAP", value_enum, default_value_t = OverlapArg::Hard)]
    pub overlap: OverlapArg,
    #[command(flatten)]
    pub limits: LimitArgs,
    /// Also write the table as CSV here.
    #[arg(long, env = "GATEKEEPER_CSV")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(long, env = "GATEKEEPER_SCHEDULE")]
    pub schedule: PathBuf,
    #[arg(long, env = "GATEKEEPER_ASSIGNMENT")]
    pub assignment: Option<PathBuf>,
    #[arg(long, env = "GATEKEEPER_GATES")]
    pub gates: Option<usize>,
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, env = "GATEKEEPER_OVERLAP", value_enum, default_value_t = OverlapArg::Soft)]
    pub overlap: OverlapArg,
    #[arg(long, env = "GATEKEEPER_SCATTER", default_value = "scatter.svg")]
    pub scatter: PathBuf,
    #[arg(long, env = "GATEKEEPER_GANTT", default_value = "gantt.svg")]
    pub gantt: PathBuf,
}

/// Parses `1-10,15,20` into a list of gate counts.
pub fn parse_gate_list(text: &str) -> Result<Vec<usize>, String> {
    let mut gates = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let number = |s: &str| {
            s.trim()
                .parse::<usize>()
                .ok()
                .filter(|&g| g > 0)
                .ok_or_else(|| format!("bad gate count `{s}`"))
        };
        match part.split_once('-') {
            Some((lo, hi)) => {
                let (lo, hi) = (number(lo)?, number(hi)?);
                if lo > hi {
                    return Err(format!("empty range `{part}`"));
                }
                gates.extend(lo..=hi);
            }
            None => gates.push(number(part)?),
        }
    }
    if gates.is_empty() {
        return Err("gate list is empty".into());
    }
    Ok(gates)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gate_lists() {
        assert_eq!(
            parse_gate_list("1-10,15,20,30,50").unwrap(),
            vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 15, 20, 30, 50]
        );
        assert_eq!(parse_gate_list("5").unwrap(), vec![5]);
        assert!(parse_gate_list("").is_err());
        assert!(parse_gate_list("0").is_err());
        assert!(parse_gate_list("4-2").is_err());
        assert!(parse_gate_list("x").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
