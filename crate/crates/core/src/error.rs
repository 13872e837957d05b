use thiserror::Error;

/// Errors raised by the simulator.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RacError {
    #[error("invalid dimension {0}: must be at least 1")]
    InvalidDimension(usize),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized (norm squared {0})")]
    NotNormalized(String),

    #[error("basis is not orthonormal: {0}")]
    NotOrthonormal(String),

    #[error("dit {value} out of range for alphabet size {d}")]
    DitOutOfRange { value: usize, d: usize },

    #[error("question {0} out of range: must be 1 or 2")]
    QuestionOutOfRange(usize),

    #[error("measurement outcome {outcome} out of range for dimension {dim}")]
    OutcomeOutOfRange { outcome: usize, dim: usize },

    #[error("invalid protocol: {0}")]
    InvalidProtocol(String),

    #[error("dimensional advantage r = {r} must be smaller than d = {d}")]
    AdvantageOutOfRange { d: usize, r: usize },

    #[error("invalid task: {0}")]
    InvalidTask(String),

    #[error("closed form only known for n = 2 or n = 3, got n = {0}")]
    UnsupportedLength(usize),

    #[error("malformed strategy: {0}")]
    MalformedStrategy(String),

    #[error("invalid mixture: {0}")]
    InvalidMixture(String),

    #[error("search requires {required} decoder tuples, budget allows {allowed}")]
    InfeasibleSize { required: u128, allowed: u128 },

    #[error("trials must be at least 1")]
    ZeroTrials,

    #[error("strategy table parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = RacError> = std::result::Result<T, E>;
