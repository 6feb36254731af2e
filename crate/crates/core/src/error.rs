use thiserror::Error;

/// Errors produced by parsing, compilation, simulation and analysis.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid fault tree: {0}")]
    Validation(String),

    #[error("qubit count {0} outside supported range 1..=24")]
    QubitCount(usize),

    #[error("qubit index {index} out of range for {qubit_count} qubits")]
    QubitIndex { index: usize, qubit_count: usize },

    #[error("probability {0} outside [0, 1]")]
    ProbabilityRange(f64),

    #[error("gate requires at least one input")]
    EmptyInputs,

    #[error("qubit {0} used as both input and output of a gate")]
    OverlappingQubits(usize),

    #[error("state is not normalized (norm deviates from 1 by more than 1e-9)")]
    Unnormalized,

    #[error("basic event `{0}` feeds more than one gate; closed-form evaluation assumes independence, use the brute-force or quantum path")]
    SharedEvent(String),

    #[error("{0} basic events exceed the exhaustive-enumeration limit of 20")]
    TooManyEvents(usize),

    #[error("bitstring length {got} does not match layout length {want}")]
    LengthMismatch { got: usize, want: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
