use thiserror::Error;

use super::gate::GateKind;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("qubit index {qubit} out of range for width {width}")]
    QubitOutOfRange { qubit: usize, width: usize },
    #[error("gate uses qubit {qubit} more than once")]
    DuplicateQubits { qubit: usize },
    #[error("{kind} expects {expected} qubit(s), got {got}")]
    WrongQubitCount { kind: GateKind, expected: usize, got: usize },
    #[error("{kind} requires an angle parameter")]
    MissingParam { kind: GateKind },
    #[error("{kind} does not take a parameter")]
    UnexpectedParam { kind: GateKind },
    #[error("circuit width {circuit} does not match state width {state}")]
    WidthMismatch { circuit: usize, state: usize },
    #[error("width {width} exceeds the {what} limit of {max} qubits")]
    WidthTooLarge { width: usize, max: usize, what: &'static str },
    #[error("amplitude vector length {len} is not a power of two")]
    BadLength { len: usize },
    #[error("state norm² is {norm2}, expected 1 within {tol}")]
    NotNormalized { norm2: f64, tol: f64 },
    #[error("shot count must be at least 1")]
    ZeroShots,
}
