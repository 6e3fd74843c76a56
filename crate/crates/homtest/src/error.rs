//! Crate-wide error type.

use thiserror::Error;

/// Convenience alias used by every fallible function in this crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the numerical kernels and the testing layer.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument was outside the documented domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative routine hit its iteration/subdivision budget before
    /// reaching the requested tolerance. `best` is the estimate at the
    /// point the budget ran out and `error` the residual error bound,
    /// so callers can still inspect or accept the partial result.
    #[error("did not converge after {iterations} iterations (best estimate {best:e}, residual error {error:e})")]
    Convergence {
        best: f64,
        error: f64,
        iterations: u32,
    },

    /// A root solver was given an interval whose endpoints do not
    /// bracket the target value.
    #[error("endpoints do not bracket the target: g(lo)-target = {lo_residual:e}, g(hi)-target = {hi_residual:e}")]
    Bracket { lo_residual: f64, hi_residual: f64 },

    /// A data file could not be read or written.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// A sample file contained a line that could not be parsed as a
    /// finite decimal number. Line numbers are 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
