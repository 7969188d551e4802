//! Crate-wide error type.

use alloc::string::String;

/// Errors produced by parsing, validation and search operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Malformed text input, with 1-based line/column of the offending token.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A bit sequence whose length does not match the expected layout.
    #[error("length mismatch: expected {expected} bits, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// Paired grid-shaped values with different dimensions.
    #[error("dimension mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    /// A value outside its documented domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An invalid configuration (rates, sizes, curve parameters).
    #[error("config error: {0}")]
    Config(String),

    /// An exhaustive search whose state space exceeds the enumeration cap.
    #[error("search space too large: {bits} bits exceeds the {cap}-bit cap")]
    TooLarge { bits: usize, cap: usize },
}

impl Error {
    pub(crate) fn dim_mismatch(
        (left_rows, left_cols): (usize, usize),
        (right_rows, right_cols): (usize, usize),
    ) -> Self {
        Error::DimMismatch {
            left_rows,
            left_cols,
            right_rows,
            right_cols,
        }
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
