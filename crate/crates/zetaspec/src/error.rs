//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("argument {arg} is within {tol} of a pole of {function}")]
    Pole {
        function: &'static str,
        arg: f64,
        tol: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("series failed to converge: {0}")]
    Convergence(String),

    #[error("principal-value quadrature failed to converge: {0}")]
    Quadrature(String),

    #[error("root bracketing failed on [{lo}, {hi}]: {message}")]
    Bracket { lo: f64, hi: f64, message: String },

    #[error("contour radius {radius} encloses {found} net zeros-minus-poles, expected {expected}")]
    Radius {
        radius: f64,
        found: i64,
        expected: i64,
    },

    #[error("boundary set is numerically degenerate: min Gram eigenvalue {min_eigenvalue:.3e}")]
    DegenerateSet { min_eigenvalue: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("matrix is not in G(F): defect {defect:.3e} exceeds tolerance {tol:.3e}")]
    GroupMembership { defect: f64, tol: f64 },

    #[error("operation not defined on this representation: {0}")]
    Representation(String),

    #[error("function has a pole at angle {angle} not listed in the boundary set")]
    UnlistedPole { angle: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
