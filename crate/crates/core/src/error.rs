use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("flight `{id}`: {reason}")]
    InvalidFlight { id: String, reason: &'static str },
    #[error("duplicate flight id `{0}`")]
    DuplicateId(String),
    #[error("schedule is empty")]
    EmptySchedule,
    #[error("buffer must be non-negative")]
    NegativeBuffer,
    #[error("conflict probability is undefined for a zero buffer")]
    ZeroBuffer,
    #[error("expected-conflict term undefined: denominator is not positive")]
    UndefinedTerm,
    #[error("unknown flight id `{0}`")]
    UnknownFlight(String),
    #[error("flight `{0}` has no gate in the assignment")]
    UnassignedFlight(String),
    #[error("gate {gate} out of range 1..={gate_count}")]
    GateOutOfRange { gate: usize, gate_count: usize },
    #[error("gate count must be at least 1")]
    NoGates,
    #[error("assignment has {0} hard conflict(s) under the hard overlap policy")]
    HardConflicts(usize),
    #[error("infeasible: {gate_count} gate(s) cannot host the schedule without conflicts")]
    Infeasible { gate_count: usize },
    #[error("instance too large for exhaustive enumeration: {flights} flights (limit {limit})")]
    InstanceTooLarge { flights: usize, limit: usize },
    #[error("search budget exhausted before any feasible assignment was found")]
    BudgetExhausted,
    #[error("invalid search limits: {0}")]
    InvalidLimits(&'static str),
    #[error("exact search supports only the hard overlap policy")]
    SoftPolicyUnsupported,
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error(transparent)]
    Csv(csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl From<csv::Error> for Error {
    fn from(error: csv::Error) -> Self {
        if error.is_io_error() {
            if let csv::ErrorKind::Io(io) = error.into_kind() {
                return Error::Io(io);
            }
            unreachable!("is_io_error implies an Io kind");
        }
        Error::Csv(error)
    }
}
