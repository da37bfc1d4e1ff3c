use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid environment: side length must be positive and finite, got {0}")]
    InvalidEnvironment(f64),

    #[error("invalid step {step} for side length {side}: need 0 < step <= side")]
    InvalidStep { step: f64, side: f64 },

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("invalid array: {0}")]
    InvalidArray(String),

    #[error("element index {index} out of range 1..={count}")]
    ElementIndexOutOfRange { index: usize, count: usize },

    #[error("amplitude lists differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("noise power must be positive, got {0}")]
    NonPositiveNoise(f64),

    #[error("{role} ({x}, {y}) is not strictly inside the {side} m room")]
    EndpointOutside { role: &'static str, x: f64, y: f64, side: f64 },

    #[error("no feasible {0} placement")]
    NoFeasiblePlacement(&'static str),

    #[error("endpoint sampling gave up after {0} attempts")]
    SamplingExhausted(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed CSV at line {line}: {reason}")]
    Csv { line: usize, reason: String },
}
