//! Error taxonomy shared by every layer of the crate.
//!
//! Numerical routines distinguish *recoverable input problems* (rank-deficient
//! spans, indefinite metrics, out-of-domain chart points) from *solver
//! failures* (an eigensolver that did not converge). Grid evaluation never
//! aborts on a single bad point — per-point failures are recorded as flags —
//! so the variants here surface either from direct library calls or from
//! configuration validation in the command-line driver.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// The input span is numerically rank deficient: its Gram determinant
    /// fell below the relative rank tolerance.
    #[error("rank-deficient span: gram determinant {det:.3e} is below {threshold:.3e}")]
    RankDeficient { det: f64, threshold: f64 },

    /// A supplied metric is not symmetric positive definite.
    #[error("metric is not symmetric positive definite: {reason}")]
    BadMetric { reason: String },

    /// A metric/operator pair violates the compatibility identities.
    #[error("incompatible structure: {reason}")]
    IncompatibleStructure { reason: String },

    /// Skew-symmetric machinery requires even dimension.
    #[error("dimension {n} is odd; skew-symmetric canonical machinery needs an even dimension")]
    OddDimension { n: usize },

    /// A combinatorial routine was asked for a dimension past its design limit.
    #[error("dimension {n} exceeds the combinatorial limit {limit}")]
    TooLarge { n: usize, limit: usize },

    /// An iterative solver exhausted its iteration budget.
    #[error("eigensolver failed to converge")]
    ConvergenceFailure,

    /// Two objects that must share a dimension do not.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A vector required to be unit length is not.
    #[error("expected a unit vector, got norm {norm}")]
    NotUnit { norm: f64 },

    /// A matrix or vector entry is NaN or infinite.
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    /// A catalog lookup used an unknown name.
    #[error("unknown catalog entry `{name}`")]
    UnknownCatalogEntry { name: String },

    /// A point lies outside the domain of the active chart.
    #[error("point outside chart domain: {reason}")]
    ChartDomain { reason: String },

    /// A finite-difference step is too large for the chart domain.
    #[error("finite-difference step {step} too large for domain radius {radius}")]
    StepTooLarge { step: f64, radius: f64 },

    /// The immersion's differential dropped rank at an evaluation point.
    #[error("degenerate immersion: jacobian gram determinant {det:.3e}")]
    DegenerateImmersion { det: f64 },

    /// A grid operation needs more samples per axis than were supplied.
    #[error("grid too small: need at least {needed} samples per axis, got {got}")]
    GridTooSmall { needed: usize, got: usize },

    /// An expression failed to parse. The offset is the 1-based byte position
    /// at which parsing stopped.
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// An expression parsed but could not be evaluated (unknown variable,
    /// division by zero, domain error, non-finite result).
    #[error("evaluation error: {0}")]
    Eval(String),

    /// A job configuration is malformed or incomplete for its command.
    #[error("configuration error: {0}")]
    Config(String),

    /// Filesystem trouble while reading configs or writing reports.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the command-line driver.
    ///
    /// `0` success, `1` bad input or configuration, `2` property violation
    /// (issued by the verification driver directly), `3` numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ConvergenceFailure | Error::DegenerateImmersion { .. } => 3,
            _ => 1,
        }
    }
}
