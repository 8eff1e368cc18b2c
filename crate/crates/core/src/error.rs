//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Requested dimensions fall outside the supported 1..=64 range.
    #[error("matrix dimensions {rows}x{cols} outside supported range 1..={max}")]
    Capacity { rows: usize, cols: usize, max: usize },

    /// Shapes of the operands do not line up.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// Kernel file could not be parsed; `line` is 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An exhaustive computation was requested beyond its enumeration guard.
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    /// A derived quantity violated an internal consistency bound.
    #[error("integrity error: {0}")]
    Integrity(String),

    /// The supplied polarization behavior does not contract (e.g. identity kernel).
    #[error("no polarization: {0}")]
    NoPolarization(String),

    /// Input is well-formed but rejected by a domain precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
