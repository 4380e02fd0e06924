//! From-scratch numerical substrate: dense matrices, a Householder QR
//! least-squares solver, and the special functions needed for inference.

mod lstsq;
mod matrix;
mod special;

pub use lstsq::{lstsq, LeastSquaresSolution};
pub use matrix::Matrix;
pub use special::{f_cdf, ln_gamma, regularized_incomplete_beta, student_t_cdf};

use thiserror::Error;

/// Errors from the numerical substrate.
#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("data length {len} does not match a {rows}x{cols} matrix")]
    ShapeMismatch { rows: usize, cols: usize, len: usize },

    #[error("row has {found} entries, expected {expected}")]
    RaggedRows { expected: usize, found: usize },

    #[error("non-finite value at row {row}, column {col}")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("least squares requires n >= p >= 1, got {rows}x{cols}")]
    InvalidLeastSquaresShape { rows: usize, cols: usize },

    #[error("vector length {found} does not match {expected}")]
    VectorLengthMismatch { expected: usize, found: usize },

    #[error("design matrix is rank deficient at column {column}")]
    RankDeficient { column: usize },

    #[error("incomplete beta arguments out of domain: a={a}, b={b}, x={x}")]
    BetaDomain { a: f64, b: f64, x: f64 },
}
