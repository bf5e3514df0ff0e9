//! Airport gate assignment under an expected-conflict objective.
//!
//! Flights lock their gate for `[arrival - b, departure + b]`. Two flights on
//! one gate may not have overlapping locked intervals (hard policy), and each
//! same-gate pair separated by a positive gap costs `1 / (gap + 2b)`. The
//! crate scores assignments, finds optimal ones exactly on small instances
//! and heuristically on large ones, and reads/writes the CSV and SVG formats
//! used by the `gatekeeper` CLI.
//!
//! All types are generic over a [`Scalar`] (`f64` by default); the aliases
//! below name the common instantiations.

pub mod data_io;
pub mod error;
pub mod evaluator;
pub mod model;
pub mod scalar;
pub mod solvers;

use num_rational::Ratio;

pub use error::{Error, Result};
pub use evaluator::{Assignment, EvaluationReport, Verdict, VerdictThresholds};
pub use model::{Flight, LockedInterval, ModelConfig, ObjectiveVariant, OverlapPolicy, Schedule};
pub use scalar::Scalar;
pub use solvers::{SearchLimits, SolveResult, SolverKind, SweepRow};

/// Exact rational minutes.
pub type Exact = Ratio<i128>;

pub type Flight64 = Flight<f64>;
pub type Schedule64 = Schedule<f64>;
pub type ModelConfig64 = ModelConfig<f64>;
pub type SolveResult64 = SolveResult<f64>;
pub type EvaluationReport64 = EvaluationReport<f64>;

pub type Flight32 = Flight<f32>;
pub type Schedule32 = Schedule<f32>;
pub type ModelConfig32 = ModelConfig<f32>;

pub type ExactFlight = Flight<Exact>;
pub type ExactSchedule = Schedule<Exact>;
pub type ExactModelConfig = ModelConfig<Exact>;
pub type ExactSolveResult = SolveResult<Exact>;
