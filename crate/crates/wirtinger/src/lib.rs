//! Kähler angles of oriented subspaces in almost-Hermitian spaces.
//!
//! An almost-Hermitian structure on ℝ^{2n} is a pair `(G, J)` of an inner
//! product and a compatible almost-complex structure; together they induce
//! the Kähler 2-form `ω(U, V) = ⟨JU, V⟩`. For an oriented `2m`-dimensional
//! subspace `W` the generalized Kähler angle `α` is defined by
//!
//! ```text
//! cos α = ω^m|_W / (m! · dV_W),
//! ```
//!
//! the ratio of the top wedge power of the restricted form to the metric
//! volume form of `W`. Wirtinger's inequality bounds it by `|cos α| ≤ 1`,
//! with equality exactly on complex (`J`-invariant) subspaces.
//!
//! The crate computes this quantity exactly as built: the Pfaffian of the
//! pulled-back form on a metric-orthonormal frame ([`exterior`]), its
//! factorization into principal Kähler cosines, the classification of
//! subspaces as complex / anti-complex / isotropic / generic ([`angle`]),
//! and the same analysis swept over parametrized submanifolds, including
//! point-dependent structures such as the octonionic almost-complex
//! structure of S⁶ ([`structures`], [`charts`]). The [`cli`] module wraps
//! everything as the `wirtinger` binary.
//!
//! Numerical contract: all checks run against the explicit tolerance
//! bundle in [`tolerances`], and every computation is deterministic —
//! identical inputs (and seeds) give bit-identical results.

pub mod angle;
pub mod charts;
pub mod cli;
pub mod error;
pub mod exterior;
pub mod structures;
pub mod tolerances;

pub use error::{Error, Result};
pub use tolerances::Tolerances;
