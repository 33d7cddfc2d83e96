//! Centralized numerical tolerances.
//!
//! Every tolerance used by the crate lives in this one record so that test
//! suites, the command-line driver, and library callers agree on what
//! "numerically zero" means at each scale. The values fall into three bands:
//!
//! * `1e-12` — identities that hold to rounding error after explicit
//!   re-orthogonalization (frame Gram residuals, rank cutoffs);
//! * `1e-10` / `1e-9` — exact algebraic identities checked after a single
//!   pass of floating-point arithmetic, and quantities derived from them;
//! * `1e-8` / `1e-6` — classification cutoffs where the answer is a label
//!   rather than a number, sized so that honest numerical noise never flips
//!   a label.

/// Numerical tolerance bundle. Construct with [`Tolerances::default`] or use
/// [`Tolerances::DEFAULT`] in const contexts; individual fields may be
/// overridden for experiments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Exact algebraic identities: `J² + I`, `JᵀGJ − G`, skewness residuals.
    pub algebraic: f64,
    /// Quantities derived through a factorization or product of identities,
    /// e.g. the Wirtinger bound margin `1 − |cos α|`.
    pub derived: f64,
    /// Orthonormality residuals of frames produced with re-orthogonalization.
    pub orthogonality: f64,
    /// Relative rank cutoff: a Gram determinant below `rank` times its scale
    /// marks the span as rank deficient.
    pub rank: f64,
    /// Metric positive-definiteness: smallest eigenvalue must exceed
    /// `spectrum` times the largest.
    pub spectrum: f64,
    /// Point classification cutoff on `1 − |cos α|` and `‖Ω‖` scales.
    pub classification: f64,
    /// Complexity residual below which a subspace counts as J-invariant when
    /// cross-checking the Wirtinger equality case.
    pub equality_residual: f64,
    /// `|cos α| ≥ 1 − singular_cos` marks the angle function as numerically
    /// non-smooth: `arccos` loses a square root of precision there and the
    /// gradient is reported as singular instead of as a number.
    pub singular_cos: f64,
}

impl Tolerances {
    /// The default bundle; identical to [`Tolerances::default`].
    pub const DEFAULT: Tolerances = Tolerances {
        algebraic: 1e-10,
        derived: 1e-9,
        orthogonality: 1e-12,
        rank: 1e-12,
        spectrum: 1e-10,
        classification: 1e-8,
        equality_residual: 1e-8,
        singular_cos: 1e-6,
    };

    /// Bundle with a caller-chosen classification cutoff, everything else at
    /// the defaults. This is the knob the command-line `--tol` flag turns.
    pub fn with_classification(tol: f64) -> Self {
        Tolerances {
            classification: tol,
            ..Self::DEFAULT
        }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
