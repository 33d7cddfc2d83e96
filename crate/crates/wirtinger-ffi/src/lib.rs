//! C ABI for the `wirtinger` Kähler-angle library.
//!
//! The surface is deliberately small: structures are built through
//! constructors that return an opaque handle, every fallible call reports a
//! [`WirtingerStatus`], and results land in plain C structs the caller
//! supplies. Handles are immutable once built — sharing one across threads
//! for concurrent evaluation is sound — and must be released exactly once
//! with [`wirtinger_structure_free`].
//!
//! Conventions, mirrored in the generated `include/wirtinger.h`:
//!
//! * Matrices and frames cross the boundary as row-major `double` arrays.
//!   A frame of `count` spanning vectors in ambient dimension `dim` is one
//!   contiguous block of `count × dim` doubles, one vector per row; the row
//!   order fixes the orientation.
//! * Out-parameters are written only when the call returns
//!   `WIRTINGER_STATUS_OK`; on any other status they are left untouched.
//! * No call unwinds across the boundary: a library panic is caught and
//!   surfaced as `WIRTINGER_STATUS_PANIC`.

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use nalgebra::{DMatrix, DVector};
use wirtinger::angle::{angle_report, verify_wirtinger, Classification, OrientedSubspace};
use wirtinger::structures::{
    random_compatible, s6_structure, standard_structure, validate, CompatibleStructure,
};
use wirtinger::{Error, Tolerances};

/// Opaque compatible structure: an ambient metric `G` together with an
/// almost complex operator `J` satisfying `J² = −I` and `JᵀGJ = G`.
pub struct WirtingerStructure {
    inner: CompatibleStructure,
}

/// Outcome of a C-ABI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WirtingerStatus {
    /// The call succeeded and every out-parameter is filled.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument fails its documented precondition: an odd or zero frame
    /// size, a dimension mismatch, a non-finite entry, an undersized
    /// buffer, or a base point off its sphere.
    InvalidArgument = 2,
    /// The spanning vectors are numerically linearly dependent.
    RankDeficient = 3,
    /// The supplied metric/operator pair violates the compatibility
    /// identities, or the metric is not symmetric positive definite.
    IncompatibleStructure = 4,
    /// An eigensolve failed to converge or the computation degenerated.
    NumericalBreakdown = 5,
    /// A panic was caught at the boundary; the out-parameters are
    /// untouched and the handle, if any, is still valid.
    Panic = 6,
}

/// Point classification by Kähler angle, mirroring the library's labels.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WirtingerClassification {
    /// `α = 0`: the subspace is complex with its induced orientation.
    Complex = 0,
    /// `α = π`: complex with the opposite orientation.
    AntiComplex = 1,
    /// `ω|_W ≡ 0`: every principal cosine vanishes.
    Isotropic = 2,
    /// None of the above.
    Generic = 3,
}

/// Compatibility diagnostics of a structure, all residuals in the max norm.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct WirtingerDiagnostics {
    /// Ambient dimension.
    pub dim: usize,
    /// `‖J² + I‖`, tangentially restricted for hypersurface structures.
    pub square_residual: f64,
    /// `‖JᵀGJ − G‖`, tangentially restricted likewise.
    pub compatibility_residual: f64,
    /// `‖G − Gᵀ‖`.
    pub metric_asymmetry: f64,
    /// Smallest eigenvalue of the metric.
    pub metric_eigen_min: f64,
    /// Largest eigenvalue of the metric.
    pub metric_eigen_max: f64,
    /// `|J p|` for the recorded normal `p`; zero without a normal.
    pub normal_image_residual: f64,
    /// True when every residual sits within the default tolerances.
    pub passes: bool,
}

/// Kähler angle data for one oriented subspace.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct WirtingerAngleReport {
    /// Raw Kähler function value `cos α`, unclamped.
    pub cos_alpha: f64,
    /// `arccos` of the clamped value, in `[0, π]`.
    pub alpha: f64,
    /// Complexity residual `ρ = ‖(I − P_W)·J·P_W‖₂`; zero exactly on
    /// `J`-invariant subspaces.
    pub complexity_residual: f64,
    /// Classification at the tolerance the report was built with.
    pub classification: WirtingerClassification,
}

/// Outcome of checking Wirtinger's inequality on one subspace.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct WirtingerCheck {
    /// Raw Kähler function value.
    pub cos_alpha: f64,
    /// `1 − |cos α|`; the inequality holds when this is above `−1e-9`.
    pub bound_margin: f64,
    /// Complexity residual of the spanned subspace.
    pub complexity_residual: f64,
    /// False when a `J`-invariant subspace fails to attain the bound —
    /// which the equality half of Wirtinger's theorem forbids.
    pub equality_consistent: bool,
}

fn status_of(err: &Error) -> WirtingerStatus {
    match err {
        Error::RankDeficient { .. } => WirtingerStatus::RankDeficient,
        Error::BadMetric { .. } | Error::IncompatibleStructure { .. } => {
            WirtingerStatus::IncompatibleStructure
        }
        Error::ConvergenceFailure | Error::DegenerateImmersion { .. } => {
            WirtingerStatus::NumericalBreakdown
        }
        _ => WirtingerStatus::InvalidArgument,
    }
}

fn classification_of(label: Classification) -> WirtingerClassification {
    match label {
        Classification::Complex => WirtingerClassification::Complex,
        Classification::AntiComplex => WirtingerClassification::AntiComplex,
        Classification::Isotropic => WirtingerClassification::Isotropic,
        Classification::Generic => WirtingerClassification::Generic,
    }
}

/// Runs a fallible body under a panic guard so no unwind crosses the ABI.
fn guarded(body: impl FnOnce() -> WirtingerStatus) -> WirtingerStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => WirtingerStatus::Panic,
    }
}

/// Boxes a freshly built structure into the out-parameter.
///
/// # Safety
/// `out` must be a valid, writable pointer.
unsafe fn deliver(
    result: Result<CompatibleStructure, Error>,
    out: *mut *mut WirtingerStructure,
) -> WirtingerStatus {
    match result {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(WirtingerStructure { inner }));
            WirtingerStatus::Ok
        }
        Err(err) => status_of(&err),
    }
}

/// Reads a row-major `count × dim` frame into an oriented subspace.
///
/// # Safety
/// `vectors` must point to `count * dim` readable doubles.
unsafe fn read_subspace(
    vectors: *const f64,
    count: usize,
    dim: usize,
) -> Result<OrientedSubspace, Error> {
    let data = std::slice::from_raw_parts(vectors, count * dim);
    OrientedSubspace::new(
        data.chunks_exact(dim)
            .map(DVector::from_column_slice)
            .collect(),
    )
}

/// Builds the flat structure on `ℝ^dim`: the identity metric with `J`
/// rotating each coordinate pair `(e_{2k}, e_{2k+1})`.
///
/// `dim` must be even and positive. On success `*out` owns the handle.
///
/// # Safety
/// `out` must be a valid, writable pointer.
#[no_mangle]
pub unsafe extern "C" fn wirtinger_standard_structure(
    dim: usize,
    out: *mut *mut WirtingerStructure,
) -> WirtingerStatus {
    if out.is_null() {
        return WirtingerStatus::NullPointer;
    }
    if dim == 0 || dim % 2 != 0 {
        return WirtingerStatus::InvalidArgument;
    }
    guarded(|| deliver(Ok(standard_structure(dim / 2)), out))
}

/// Builds a seeded random compatible structure on `ℝ^dim` with metric
/// condition number at most `10⁴`. Identical seeds give bitwise identical
/// structures.
///
/// `dim` must be even and positive. On success `*out` owns the handle.
///
/// # Safety
/// `out` must be a valid, writable pointer.
#[no_mangle]
pub unsafe extern "C" fn wirtinger_random_structure(
    dim: usize,
    seed: u64,
    out: *mut *mut WirtingerStructure,
) -> WirtingerStatus {
    if out.is_null() {
        return WirtingerStatus::NullPointer;
    }
    if dim == 0 || dim % 2 != 0 {
        return WirtingerStatus::InvalidArgument;
    }
    guarded(|| deliver(Ok(random_compatible(dim / 2, seed)), out))
}

/// Builds the nearly-Kähler structure of `S⁶ ⊂ ℝ⁷` at a unit point `p`:
/// `J v = p × v` in the octonion cross product, with `p` recorded as the
/// normal direction.
///
/// `point` must hold `point_len == 7` doubles of unit norm. On success
/// `*out` owns the handle; its ambient dimension is `7`.
///
/// # Safety
/// `point` must point to `point_len` readable doubles; `out` must be a
/// valid, writable pointer.
#[no_mangle]
pub unsafe extern "C" fn wirtinger_s6_structure(
    point: *const f64,
    point_len: usize,
    out: *mut *mut WirtingerStructure,
) -> WirtingerStatus {
    if point.is_null() || out.is_null() {
        return WirtingerStatus::NullPointer;
    }
    if point_len != 7 {
        return WirtingerStatus::InvalidArgument;
    }
    let p = DVector::from_column_slice(std::slice::from_raw_parts(point, point_len));
    guarded(|| deliver(s6_structure(&p), out))
}

/// Builds a structure from explicit row-major `dim × dim` matrices for the
/// metric `G` and the operator `J`, validating the compatibility
/// identities.
///
/// On success `*out` owns the handle.
///
/// # Safety
/// `metric` and `jop` must each point to `dim * dim` readable doubles;
/// `out` must be a valid, writable pointer.
#[no_mangle]
pub unsafe extern "C" fn wirtinger_structure_from_parts(
    dim: usize,
    metric: *const f64,
    jop: *const f64,
    out: *mut *mut WirtingerStructure,
) -> WirtingerStatus {
    if metric.is_null() || jop.is_null() || out.is_null() {
        return WirtingerStatus::NullPointer;
    }
    if dim == 0 {
        return WirtingerStatus::InvalidArgument;
    }
    let g = DMatrix::from_row_slice(dim, dim, std::slice::from_raw_parts(metric, dim * dim));
    let j = DMatrix::from_row_slice(dim, dim, std::slice::from_raw_parts(jop, dim * dim));
    guarded(|| deliver(CompatibleStructure::new(g, j), out))
}

/// Releases a structure handle. Passing null is a no-op; passing the same
/// handle twice is undefined behavior.
///
/// # Safety
/// `structure` must be null or a handle produced by a constructor in this
/// library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn wirtinger_structure_free(structure: *mut WirtingerStructure) {
    if !structure.is_null() {
        drop(Box::from_raw(structure));
    }
}

/// Ambient dimension of a structure; `0` for a null handle.
///
/// # Safety
/// `structure` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wirtinger_structure_dim(structure: *const WirtingerStructure) -> usize {
    if structure.is_null() {
        return 0;
    }
    (*structure).inner.dim()
}

/// Recomputes the compatibility residuals of a structure from scratch.
///
/// The call succeeds whether or not the structure passes; read
/// `diagnostics->passes` for the verdict.
///
/// # Safety
/// `structure` must be a live handle; `diagnostics` must be a valid,
/// writable pointer.
#[no_mangle]
pub unsafe extern "C" fn wirtinger_structure_validate(
    structure: *const WirtingerStructure,
    diagnostics: *mut WirtingerDiagnostics,
) -> WirtingerStatus {
    if structure.is_null() || diagnostics.is_null() {
        return WirtingerStatus::NullPointer;
    }
    guarded(|| {
        let report = validate(&(*structure).inner);
        *diagnostics = WirtingerDiagnostics {
            dim: report.dim,
            square_residual: report.square_residual,
            compatibility_residual: report.compatibility_residual,
            metric_asymmetry: report.metric_asymmetry,
            metric_eigen_min: report.metric_eigen_min,
            metric_eigen_max: report.metric_eigen_max,
            normal_image_residual: report.normal_image_residual,
            passes: report.passes,
        };
        WirtingerStatus::Ok
    })
}

/// Computes the Kähler angle of the oriented subspace spanned by a
/// row-major `count × dim` frame, where `dim` is the structure's ambient
/// dimension and `count` is even and positive.
///
/// `classification_tol` sets the angular tolerance for the complex /
/// anti-complex / isotropic labels; any value `≤ 0` selects the library
/// default. When `lambdas` is non-null it receives the `count / 2`
/// principal cosines in descending `|λ|` order, so `lambdas_len` must be at
/// least `count / 2`; slots past the written prefix are left untouched.
/// Pass null with `lambdas_len == 0` to skip them.
///
/// # Safety
/// `structure` must be a live handle; `vectors` must point to
/// `count * dim` readable doubles; `lambdas` must be null or point to
/// `lambdas_len` writable doubles; `report` must be a valid, writable
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn wirtinger_angle(
    structure: *const WirtingerStructure,
    vectors: *const f64,
    count: usize,
    classification_tol: f64,
    lambdas: *mut f64,
    lambdas_len: usize,
    report: *mut WirtingerAngleReport,
) -> WirtingerStatus {
    if structure.is_null() || vectors.is_null() || report.is_null() {
        return WirtingerStatus::NullPointer;
    }
    if count == 0 || count % 2 != 0 {
        return WirtingerStatus::InvalidArgument;
    }
    if !lambdas.is_null() && lambdas_len < count / 2 {
        return WirtingerStatus::InvalidArgument;
    }
    guarded(|| {
        let s = &(*structure).inner;
        let subspace = match read_subspace(vectors, count, s.dim()) {
            Ok(w) => w,
            Err(err) => return status_of(&err),
        };
        let tol = if classification_tol > 0.0 {
            Tolerances::with_classification(classification_tol)
        } else {
            Tolerances::DEFAULT
        };
        match angle_report(s, &subspace, &tol) {
            Ok(data) => {
                if !lambdas.is_null() {
                    let slots = std::slice::from_raw_parts_mut(lambdas, data.lambdas.len());
                    slots.copy_from_slice(&data.lambdas);
                }
                *report = WirtingerAngleReport {
                    cos_alpha: data.cos_alpha,
                    alpha: data.alpha,
                    complexity_residual: data.complexity_residual,
                    classification: classification_of(data.classification),
                };
                WirtingerStatus::Ok
            }
            Err(err) => status_of(&err),
        }
    })
}

/// Checks Wirtinger's inequality `|cos α| ≤ 1` and its equality condition
/// on the subspace spanned by a row-major `count × dim` frame.
///
/// # Safety
/// `structure` must be a live handle; `vectors` must point to
/// `count * dim` readable doubles; `check` must be a valid, writable
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn wirtinger_verify(
    structure: *const WirtingerStructure,
    vectors: *const f64,
    count: usize,
    check: *mut WirtingerCheck,
) -> WirtingerStatus {
    if structure.is_null() || vectors.is_null() || check.is_null() {
        return WirtingerStatus::NullPointer;
    }
    if count == 0 || count % 2 != 0 {
        return WirtingerStatus::InvalidArgument;
    }
    guarded(|| {
        let s = &(*structure).inner;
        let subspace = match read_subspace(vectors, count, s.dim()) {
            Ok(w) => w,
            Err(err) => return status_of(&err),
        };
        match verify_wirtinger(s, &subspace) {
            Ok(record) => {
                *check = WirtingerCheck {
                    cos_alpha: record.cos_alpha,
                    bound_margin: record.bound_margin,
                    complexity_residual: record.complexity_residual,
                    equality_consistent: record.equality_consistent,
                };
                WirtingerStatus::Ok
            }
            Err(err) => status_of(&err),
        }
    })
}

/// Static, nul-terminated name of a status code.
#[no_mangle]
pub extern "C" fn wirtinger_status_name(status: WirtingerStatus) -> *const c_char {
    let name = match status {
        WirtingerStatus::Ok => c"ok",
        WirtingerStatus::NullPointer => c"null pointer",
        WirtingerStatus::InvalidArgument => c"invalid argument",
        WirtingerStatus::RankDeficient => c"rank-deficient span",
        WirtingerStatus::IncompatibleStructure => c"incompatible structure",
        WirtingerStatus::NumericalBreakdown => c"numerical breakdown",
        WirtingerStatus::Panic => c"panic",
    };
    name.as_ptr()
}

/// Static, nul-terminated name of a classification label, matching the
/// CLI's CSV vocabulary.
#[no_mangle]
pub extern "C" fn wirtinger_classification_name(
    classification: WirtingerClassification,
) -> *const c_char {
    let name = match classification {
        WirtingerClassification::Complex => c"complex",
        WirtingerClassification::AntiComplex => c"anti-complex",
        WirtingerClassification::Isotropic => c"isotropic",
        WirtingerClassification::Generic => c"generic",
    };
    name.as_ptr()
}
