use thiserror::Error;

/// Errors produced by the library and surfaced by the command-line tool.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not a direction: zero vector")]
    NotADirection,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("not ferromagnetic: negative coefficient {value} at {offset}")]
    NotFerromagnetic { offset: String, value: String },

    #[error("degenerate sublattice: rank {rank} < dimension {dim}")]
    DegenerateSublattice { rank: usize, dim: usize },

    #[error("degenerate Wulff shape; restrict to a subspace ({0})")]
    DegenerateWulffShape(String),

    #[error("not a rational zonotope: generator {0} has no rational direction")]
    NotRational(String),

    #[error("measure weights are not exact per-direction aggregates")]
    InexactMeasure,

    #[error("increase denominator_bound: sup-error {achieved:.6} is not below eta = {eta}")]
    ToleranceUnreachable { achieved: f64, eta: f64 },

    #[error("enumeration budget exceeded ({0}); use annealing")]
    EnumerationBudget(String),

    #[error("capacity overflow while scaling to integers")]
    CapacityOverflow,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the `zonoids` binary: 2 for validation
    /// failures, 3 for well-formed requests that cannot be satisfied.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ToleranceUnreachable { .. }
            | Error::EnumerationBudget(_)
            | Error::DegenerateWulffShape(_)
            | Error::DegenerateSublattice { .. }
            | Error::CapacityOverflow => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
