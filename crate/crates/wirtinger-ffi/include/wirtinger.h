#ifndef WIRTINGER_H
#define WIRTINGER_H

/* Generated from wirtinger-ffi; refresh with `cargo build -p wirtinger-ffi`. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Point classification by Kähler angle, mirroring the library's labels.
 */
typedef enum WirtingerClassification {
  /**
   * `α = 0`: the subspace is complex with its induced orientation.
   */
  WIRTINGER_CLASSIFICATION_COMPLEX = 0,
  /**
   * `α = π`: complex with the opposite orientation.
   */
  WIRTINGER_CLASSIFICATION_ANTI_COMPLEX = 1,
  /**
   * `ω|_W ≡ 0`: every principal cosine vanishes.
   */
  WIRTINGER_CLASSIFICATION_ISOTROPIC = 2,
  /**
   * None of the above.
   */
  WIRTINGER_CLASSIFICATION_GENERIC = 3,
} WirtingerClassification;

/**
 * Outcome of a C-ABI call.
 */
typedef enum WirtingerStatus {
  /**
   * The call succeeded and every out-parameter is filled.
   */
  WIRTINGER_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  WIRTINGER_STATUS_NULL_POINTER = 1,
  /**
   * An argument fails its documented precondition: an odd or zero frame
   * size, a dimension mismatch, a non-finite entry, an undersized
   * buffer, or a base point off its sphere.
   */
  WIRTINGER_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The spanning vectors are numerically linearly dependent.
   */
  WIRTINGER_STATUS_RANK_DEFICIENT = 3,
  /**
   * The supplied metric/operator pair violates the compatibility
   * identities, or the metric is not symmetric positive definite.
   */
  WIRTINGER_STATUS_INCOMPATIBLE_STRUCTURE = 4,
  /**
   * An eigensolve failed to converge or the computation degenerated.
   */
  WIRTINGER_STATUS_NUMERICAL_BREAKDOWN = 5,
  /**
   * A panic was caught at the boundary; the out-parameters are
   * untouched and the handle, if any, is still valid.
   */
  WIRTINGER_STATUS_PANIC = 6,
} WirtingerStatus;

/**
 * Opaque compatible structure: an ambient metric `G` together with an
 * almost complex operator `J` satisfying `J² = −I` and `JᵀGJ = G`.
 */
typedef struct WirtingerStructure WirtingerStructure;

/**
 * Compatibility diagnostics of a structure, all residuals in the max norm.
 */
typedef struct WirtingerDiagnostics {
  /**
   * Ambient dimension.
   */
  size_t dim;
  /**
   * `‖J² + I‖`, tangentially restricted for hypersurface structures.
   */
  double square_residual;
  /**
   * `‖JᵀGJ − G‖`, tangentially restricted likewise.
   */
  double compatibility_residual;
  /**
   * `‖G − Gᵀ‖`.
   */
  double metric_asymmetry;
  /**
   * Smallest eigenvalue of the metric.
   */
  double metric_eigen_min;
  /**
   * Largest eigenvalue of the metric.
   */
  double metric_eigen_max;
  /**
   * `|J p|` for the recorded normal `p`; zero without a normal.
   */
  double normal_image_residual;
  /**
   * True when every residual sits within the default tolerances.
   */
  bool passes;
} WirtingerDiagnostics;

/**
 * Kähler angle data for one oriented subspace.
 */
typedef struct WirtingerAngleReport {
  /**
   * Raw Kähler function value `cos α`, unclamped.
   */
  double cos_alpha;
  /**
   * `arccos` of the clamped value, in `[0, π]`.
   */
  double alpha;
  /**
   * Complexity residual `ρ = ‖(I − P_W)·J·P_W‖₂`; zero exactly on
   * `J`-invariant subspaces.
   */
  double complexity_residual;
  /**
   * Classification at the tolerance the report was built with.
   */
  enum WirtingerClassification classification;
} WirtingerAngleReport;

/**
 * Outcome of checking Wirtinger's inequality on one subspace.
 */
typedef struct WirtingerCheck {
  /**
   * Raw Kähler function value.
   */
  double cos_alpha;
  /**
   * `1 − |cos α|`; the inequality holds when this is above `−1e-9`.
   */
  double bound_margin;
  /**
   * Complexity residual of the spanned subspace.
   */
  double complexity_residual;
  /**
   * False when a `J`-invariant subspace fails to attain the bound —
   * which the equality half of Wirtinger's theorem forbids.
   */
  bool equality_consistent;
} WirtingerCheck;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds the flat structure on `ℝ^dim`: the identity metric with `J`
 * rotating each coordinate pair `(e_{2k}, e_{2k+1})`.
 *
 * `dim` must be even and positive. On success `*out` owns the handle.
 *
 * # Safety
 * `out` must be a valid, writable pointer.
 */
enum WirtingerStatus wirtinger_standard_structure(size_t dim, struct WirtingerStructure **out);

/**
 * Builds a seeded random compatible structure on `ℝ^dim` with metric
 * condition number at most `10⁴`. Identical seeds give bitwise identical
 * structures.
 *
 * `dim` must be even and positive. On success `*out` owns the handle.
 *
 * # Safety
 * `out` must be a valid, writable pointer.
 */
enum WirtingerStatus wirtinger_random_structure(size_t dim,
                                                uint64_t seed,
                                                struct WirtingerStructure **out);

/**
 * Builds the nearly-Kähler structure of `S⁶ ⊂ ℝ⁷` at a unit point `p`:
 * `J v = p × v` in the octonion cross product, with `p` recorded as the
 * normal direction.
 *
 * `point` must hold `point_len == 7` doubles of unit norm. On success
 * `*out` owns the handle; its ambient dimension is `7`.
 *
 * # Safety
 * `point` must point to `point_len` readable doubles; `out` must be a
 * valid, writable pointer.
 */
enum WirtingerStatus wirtinger_s6_structure(const double *point,
                                            size_t point_len,
                                            struct WirtingerStructure **out);

/**
 * Builds a structure from explicit row-major `dim × dim` matrices for the
 * metric `G` and the operator `J`, validating the compatibility
 * identities.
 *
 * On success `*out` owns the handle.
 *
 * # Safety
 * `metric` and `jop` must each point to `dim * dim` readable doubles;
 * `out` must be a valid, writable pointer.
 */
enum WirtingerStatus wirtinger_structure_from_parts(size_t dim,
                                                    const double *metric,
                                                    const double *jop,
                                                    struct WirtingerStructure **out);

/**
 * Releases a structure handle. Passing null is a no-op; passing the same
 * handle twice is undefined behavior.
 *
 * # Safety
 * `structure` must be null or a handle produced by a constructor in this
 * library that has not been freed.
 */
void wirtinger_structure_free(struct WirtingerStructure *structure);

/**
 * Ambient dimension of a structure; `0` for a null handle.
 *
 * # Safety
 * `structure` must be null or a live handle.
 */
size_t wirtinger_structure_dim(const struct WirtingerStructure *structure);

/**
 * Recomputes the compatibility residuals of a structure from scratch.
 *
 * The call succeeds whether or not the structure passes; read
 * `diagnostics->passes` for the verdict.
 *
 * # Safety
 * `structure` must be a live handle; `diagnostics` must be a valid,
 * writable pointer.
 */
enum WirtingerStatus wirtinger_structure_validate(const struct WirtingerStructure *structure,
                                                  struct WirtingerDiagnostics *diagnostics);

/**
 * Computes the Kähler angle of the oriented subspace spanned by a
 * row-major `count × dim` frame, where `dim` is the structure's ambient
 * dimension and `count` is even and positive.
 *
 * `classification_tol` sets the angular tolerance for the complex /
 * anti-complex / isotropic labels; any value `≤ 0` selects the library
 * default. When `lambdas` is non-null it receives the `count / 2`
 * principal cosines in descending `|λ|` order, so `lambdas_len` must be at
 * least `count / 2`; slots past the written prefix are left untouched.
 * Pass null with `lambdas_len == 0` to skip them.
 *
 * # Safety
 * `structure` must be a live handle; `vectors` must point to
 * `count * dim` readable doubles; `lambdas` must be null or point to
 * `lambdas_len` writable doubles; `report` must be a valid, writable
 * pointer.
 */
enum WirtingerStatus wirtinger_angle(const struct WirtingerStructure *structure,
                                     const double *vectors,
                                     size_t count,
                                     double classification_tol,
                                     double *lambdas,
                                     size_t lambdas_len,
                                     struct WirtingerAngleReport *report);

/**
 * Checks Wirtinger's inequality `|cos α| ≤ 1` and its equality condition
 * on the subspace spanned by a row-major `count × dim` frame.
 *
 * # Safety
 * `structure` must be a live handle; `vectors` must point to
 * `count * dim` readable doubles; `check` must be a valid, writable
 * pointer.
 */
enum WirtingerStatus wirtinger_verify(const struct WirtingerStructure *structure,
                                      const double *vectors,
                                      size_t count,
                                      struct WirtingerCheck *check);

/**
 * Static, nul-terminated name of a status code.
 */
const char *wirtinger_status_name(enum WirtingerStatus status);

/**
 * Static, nul-terminated name of a classification label, matching the
 * CLI's CSV vocabulary.
 */
const char *wirtinger_classification_name(enum WirtingerClassification classification);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WIRTINGER_H */
