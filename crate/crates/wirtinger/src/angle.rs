//! Kähler angles of oriented subspaces: pullback of the Kähler form,
//! the Kähler function, principal cosines, the Wirtinger bound, and point
//! classification.
//!
//! The chain of definitions: an oriented subspace `W` of dimension `2m`
//! receives an oriented orthonormal frame; the Kähler form pulls back to a
//! skew matrix `Ω` on that frame; the Kähler function
//! `cos α = ω^m|_W / (m!·vol)` is exactly the Pfaffian of `Ω`; and the
//! canonical block form of `Ω` exposes the principal Kähler cosines `λ_k`
//! whose product recovers the Pfaffian. Wirtinger's inequality says
//! `|cos α| ≤ 1`, with equality exactly on complex (or anti-complex)
//! subspaces — [`verify_wirtinger`] checks both the bound and the equality
//! condition through an independent projector residual.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{orthonormalize, pfaffian, skew_canonical, SkewMatrix};
use crate::structures::{kahler_form, CompatibleStructure};
use crate::tolerances::Tolerances;

/// An oriented subspace of an ambient space, given by an ordered spanning
/// list of `2m` vectors; the order of the list is the orientation.
#[derive(Debug, Clone)]
pub struct OrientedSubspace {
    vectors: Vec<DVector<f64>>,
}

impl OrientedSubspace {
    /// Wraps an ordered spanning set.
    ///
    /// Requires an even, positive number of vectors of a common dimension,
    /// at most the ambient dimension, with finite entries and a Euclidean
    /// Gram determinant above the rank tolerance. Metric-aware independence
    /// is re-checked against the relevant structure when the form is pulled
    /// back.
    pub fn new(vectors: Vec<DVector<f64>>) -> Result<Self> {
        let tol = Tolerances::DEFAULT;
        if vectors.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: 0,
            });
        }
        if vectors.len() % 2 != 0 {
            return Err(Error::OddDimension { n: vectors.len() });
        }
        let dim = vectors[0].len();
        for v in &vectors {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
            for (i, entry) in v.iter().enumerate() {
                if !entry.is_finite() {
                    return Err(Error::NonFinite { row: i, col: 0 });
                }
            }
        }
        if vectors.len() > dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: vectors.len(),
            });
        }
        let k = vectors.len();
        let gram = DMatrix::from_fn(k, k, |i, j| vectors[i].dot(&vectors[j]));
        let mut scale = 1.0_f64;
        for i in 0..k {
            let d = gram[(i, i)];
            if d <= 0.0 {
                return Err(Error::RankDeficient {
                    det: 0.0,
                    threshold: tol.rank,
                });
            }
            scale *= d;
        }
        let det = gram.determinant();
        let threshold = tol.rank * scale;
        if det <= threshold {
            return Err(Error::RankDeficient { det, threshold });
        }
        Ok(OrientedSubspace { vectors })
    }

    /// Dimension of the ambient space the vectors live in.
    pub fn ambient_dim(&self) -> usize {
        self.vectors[0].len()
    }

    /// Subspace dimension `2m`.
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Half the subspace dimension.
    pub fn half_dim(&self) -> usize {
        self.vectors.len() / 2
    }

    /// The ordered spanning vectors.
    pub fn vectors(&self) -> &[DVector<f64>] {
        &self.vectors
    }
}

/// Classification of a point (equivalently, of its tangent subspace) by its
/// Kähler angle data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    /// `α = 0`: the subspace is complex with its induced orientation.
    Complex,
    /// `α = π`: complex with the opposite orientation.
    AntiComplex,
    /// `ω|_W ≡ 0`: every principal cosine vanishes. Strictly stronger than
    /// `cos α = 0` once `m > 1`.
    Isotropic,
    /// None of the above.
    Generic,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let label = match self {
            Classification::Complex => "complex",
            Classification::AntiComplex => "anti-complex",
            Classification::Isotropic => "isotropic",
            Classification::Generic => "generic",
        };
        f.write_str(label)
    }
}

/// Full angle data for one oriented subspace.
#[derive(Debug, Clone, Serialize)]
pub struct AngleReport {
    /// Raw Kähler function value, unclamped so tolerance audits can see
    /// drift past `±1`; always within `1e-9` of the product of `lambdas`.
    pub cos_alpha: f64,
    /// `arccos` of the clamped Kähler function, in `[0, π]`.
    pub alpha: f64,
    /// Principal Kähler cosines, `|λ_1| ≥ … ≥ |λ_m|`, each in `[−1, 1]` up
    /// to tolerance.
    pub lambdas: Vec<f64>,
    /// Label at the classification tolerance the report was built with.
    pub classification: Classification,
    /// `ρ = ‖(I − P_W)·J·P_W‖₂` in the metric operator norm: zero exactly
    /// when the subspace is `J`-invariant, one when `JW ⊥ W`.
    pub complexity_residual: f64,
}

/// Orthonormalizes the subspace against the structure's metric and pulls the
/// Kähler form back to the frame: `Ω_ij = ω(e_i, e_j)`, exactly skew by
/// packed storage after antisymmetrized evaluation.
pub fn pullback_form(
    s: &CompatibleStructure,
    w: &OrientedSubspace,
) -> Result<(Vec<DVector<f64>>, SkewMatrix)> {
    if w.ambient_dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            got: w.ambient_dim(),
        });
    }
    let frame = orthonormalize(w.vectors(), s.metric())?;
    let omega = DMatrix::from_fn(frame.len(), frame.len(), |i, j| {
        kahler_form(s, &frame[i], &frame[j]).expect("frame dimensions verified")
    });
    let skew = SkewMatrix::from_dense(&omega)?;
    Ok((frame, skew))
}

/// The Kähler function `cos α = ω^m|_W / (m!·vol_W)`, evaluated as the
/// Pfaffian of the pulled-back form on an oriented orthonormal frame.
///
/// Wirtinger's inequality bounds the value by `1` in absolute value (up to
/// tolerance) for any compatible structure; the sign carries the
/// orientation.
pub fn kahler_function(s: &CompatibleStructure, w: &OrientedSubspace) -> Result<f64> {
    let (_, omega) = pullback_form(s, w)?;
    Ok(pfaffian(&omega))
}

/// Principal Kähler cosines of the subspace: the block coefficients of the
/// canonical form of the pulled-back Kähler form, ordered by descending
/// magnitude. Their product equals the Kähler function; each lies in
/// `[−1, 1]` up to tolerance.
pub fn principal_angles(s: &CompatibleStructure, w: &OrientedSubspace) -> Result<Vec<f64>> {
    let (_, omega) = pullback_form(s, w)?;
    Ok(skew_canonical(&omega)?.lambdas)
}

/// Classifies a point from its angle data.
///
/// `complex` when `cos α ≥ 1 − tol`, `anti-complex` when
/// `cos α ≤ −1 + tol`, `isotropic` when the pulled-back form vanishes
/// (`‖Ω‖_max ≤ tol` — strictly stronger than `cos α = 0` for `m > 1`),
/// `generic` otherwise. The principal cosines ride along so call sites can
/// pass the full report data uniformly; the decision itself needs only
/// `cos α` and `Ω`.
pub fn classify(cos_alpha: f64, _lambdas: &[f64], omega: &SkewMatrix, tol: f64) -> Classification {
    if cos_alpha >= 1.0 - tol {
        Classification::Complex
    } else if cos_alpha <= -1.0 + tol {
        Classification::AntiComplex
    } else if omega.max_norm() <= tol {
        Classification::Isotropic
    } else {
        Classification::Generic
    }
}

/// Outcome of checking Wirtinger's inequality and its equality condition on
/// one subspace.
#[derive(Debug, Clone, Serialize)]
pub struct WirtingerRecord {
    /// Raw Kähler function value.
    pub cos_alpha: f64,
    /// `1 − |cos α|`; the inequality holds when this is above `−1e-9`.
    pub bound_margin: f64,
    /// Projector residual `ρ = ‖(I − P_W)·J·P_W‖₂`; vanishes exactly on
    /// `J`-invariant subspaces.
    pub complexity_residual: f64,
    /// Equality-condition consistency: a `J`-invariant subspace
    /// (`ρ ≤ 1e-8`) must attain the bound (`|cos α| ≥ 1 − 1e-6`).
    pub equality_consistent: bool,
}

/// Checks the Wirtinger bound `|cos α| ≤ 1` and cross-examines the equality
/// condition against the independent complexity residual.
pub fn verify_wirtinger(s: &CompatibleStructure, w: &OrientedSubspace) -> Result<WirtingerRecord> {
    let tol = Tolerances::DEFAULT;
    let (frame, omega) = pullback_form(s, w)?;
    let cos_alpha = pfaffian(&omega);
    let bound_margin = 1.0 - cos_alpha.abs();
    let complexity_residual = complexity_residual(s, &frame);
    let equality_consistent =
        !(complexity_residual <= tol.equality_residual && cos_alpha.abs() < 1.0 - tol.singular_cos);
    Ok(WirtingerRecord {
        cos_alpha,
        bound_margin,
        complexity_residual,
        equality_consistent,
    })
}

/// Builds the full [`AngleReport`] for a subspace at the given tolerances.
pub fn angle_report(
    s: &CompatibleStructure,
    w: &OrientedSubspace,
    tol: &Tolerances,
) -> Result<AngleReport> {
    let (frame, omega) = pullback_form(s, w)?;
    let cos_alpha = pfaffian(&omega);
    let lambdas = skew_canonical(&omega)?.lambdas;
    let alpha = cos_alpha.clamp(-1.0, 1.0).acos();
    let classification = classify(cos_alpha, &lambdas, &omega, tol.classification);
    let complexity_residual = complexity_residual(s, &frame);
    Ok(AngleReport {
        cos_alpha,
        alpha,
        lambdas,
        classification,
        complexity_residual,
    })
}

/// The complexity residual `ρ = ‖(I − P_W)·J·P_W‖₂` of a metric-orthonormal
/// frame, measured in the operator norm of the structure's metric: the
/// largest fraction of metric length that `J` moves out of the subspace.
///
/// `P_W = F Fᵀ G` is the metric-orthogonal projector onto the frame's span.
/// For a non-Euclidean metric `G = L Lᵀ` the operator norm is computed by
/// conjugating with the Cholesky factor, `σ_max(Lᵀ A L⁻ᵀ)`.
pub fn complexity_residual(s: &CompatibleStructure, frame: &[DVector<f64>]) -> f64 {
    let dim = s.dim();
    let mut basis = DMatrix::zeros(dim, frame.len());
    for (j, v) in frame.iter().enumerate() {
        basis.set_column(j, v);
    }
    let projector = &basis * basis.transpose() * s.metric();
    let moved = (DMatrix::identity(dim, dim) - &projector) * s.jop() * projector;

    let identity_metric = (s.metric() - DMatrix::identity(dim, dim)).abs().max() == 0.0;
    if identity_metric {
        return spectral_norm(moved);
    }
    let chol = s
        .metric()
        .clone()
        .cholesky()
        .expect("structure metrics are positive definite");
    let l = chol.l();
    // B = A·L⁻ᵀ, solved from L·Bᵀ = Aᵀ; then the conjugate is Lᵀ·B.
    let bt = l
        .solve_lower_triangular(&moved.transpose())
        .expect("Cholesky factor is nonsingular");
    spectral_norm(l.transpose() * bt.transpose())
}

fn spectral_norm(m: DMatrix<f64>) -> f64 {
    let values = m.singular_values();
    if values.is_empty() {
        0.0
    } else {
        values[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{random_compatible, standard_structure};

    fn unit(dim: usize, index: usize) -> DVector<f64> {
        let mut v = DVector::zeros(dim);
        v[index] = 1.0;
        v
    }

    fn span(vectors: Vec<DVector<f64>>) -> OrientedSubspace {
        OrientedSubspace::new(vectors).expect("valid test subspace")
    }

    #[test]
    fn pullback_on_complex_plane() {
        let s = standard_structure(2);
        let w = span(vec![unit(4, 0), unit(4, 1)]);
        let (frame, omega) = pullback_form(&s, &w).unwrap();
        assert_eq!(frame.len(), 2);
        assert_eq!(omega.get(0, 1), 1.0);
        assert_eq!(omega.get(1, 0), -1.0);
    }

    #[test]
    fn pullback_on_totally_real_plane() {
        let s = standard_structure(2);
        let w = span(vec![unit(4, 0), unit(4, 2)]);
        let (_, omega) = pullback_form(&s, &w).unwrap();
        assert_eq!(omega.max_norm(), 0.0);
    }

    #[test]
    fn kahler_function_on_model_planes() {
        let s = standard_structure(2);

        let complex = span(vec![unit(4, 0), unit(4, 1)]);
        assert!((kahler_function(&s, &complex).unwrap() - 1.0).abs() < 1e-12);

        let reversed = span(vec![unit(4, 1), unit(4, 0)]);
        assert!((kahler_function(&s, &reversed).unwrap() + 1.0).abs() < 1e-12);

        let totally_real = span(vec![unit(4, 0), unit(4, 2)]);
        assert!(kahler_function(&s, &totally_real).unwrap().abs() < 1e-12);

        // Slant plane at θ = π/6: cos α = sin θ = 1/2.
        let theta = std::f64::consts::FRAC_PI_6;
        let slanted = unit(4, 2) * theta.cos() + unit(4, 1) * theta.sin();
        let slant = span(vec![unit(4, 0), slanted]);
        assert!((kahler_function(&s, &slant).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn kahler_function_with_general_position_complex_span() {
        // span{v, Jv} for a non-axis v, random compatible metric.
        let s = random_compatible(3, 17);
        let v = DVector::from_fn(6, |i, _| ((i + 1) as f64 * 0.83).sin() + 0.2);
        let jv = s.apply(&v).unwrap();
        let w = span(vec![v, jv]);
        assert!((kahler_function(&s, &w).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn principal_angles_on_dual_slant() {
        // Two slant planes at π/6 and π/3 in standard ℂ⁴.
        let s = standard_structure(4);
        let t1 = std::f64::consts::FRAC_PI_6;
        let t2 = std::f64::consts::FRAC_PI_3;
        let w = span(vec![
            unit(8, 0),
            unit(8, 2) * t1.cos() + unit(8, 1) * t1.sin(),
            unit(8, 4),
            unit(8, 6) * t2.cos() + unit(8, 5) * t2.sin(),
        ]);
        let lambdas = principal_angles(&s, &w).unwrap();
        assert_eq!(lambdas.len(), 2);
        assert!((lambdas[0].abs() - t2.sin()).abs() < 1e-9, "{lambdas:?}");
        assert!((lambdas[1].abs() - t1.sin()).abs() < 1e-9, "{lambdas:?}");
        let product: f64 = lambdas.iter().product();
        let cos_alpha = kahler_function(&s, &w).unwrap();
        assert!((product - cos_alpha).abs() < 1e-9);
    }

    #[test]
    fn principal_angles_on_complex_four_space() {
        let s = standard_structure(3);
        let v1 = DVector::from_fn(6, |i, _| (i as f64 + 0.5).cos());
        let v2 = DVector::from_fn(6, |i, _| (2.0 * i as f64 - 0.7).sin() + 0.1);
        let jv1 = s.apply(&v1).unwrap();
        let jv2 = s.apply(&v2).unwrap();
        let w = span(vec![v1, jv1, v2, jv2]);
        let lambdas = principal_angles(&s, &w).unwrap();
        for lam in &lambdas {
            assert!((lam - 1.0).abs() < 1e-10, "{lambdas:?}");
        }
    }

    #[test]
    fn classify_covers_all_labels() {
        let tol = 1e-8;
        let omega_zero = SkewMatrix::zeros(4).unwrap();
        let omega_mixed = SkewMatrix::block_diagonal(&[0.9, 0.0]).unwrap();
        let omega_full = SkewMatrix::block_diagonal(&[1.0, 1.0]).unwrap();

        assert_eq!(
            classify(1.0, &[1.0, 1.0], &omega_full, tol),
            Classification::Complex
        );
        assert_eq!(
            classify(-1.0, &[1.0, -1.0], &omega_full, tol),
            Classification::AntiComplex
        );
        assert_eq!(
            classify(0.0, &[0.0, 0.0], &omega_zero, tol),
            Classification::Isotropic
        );
        // cos α = 0 without ω|_W = 0: one vanishing cosine only.
        assert_eq!(
            classify(0.0, &[0.9, 0.0], &omega_mixed, tol),
            Classification::Generic
        );
    }

    #[test]
    fn verify_wirtinger_on_model_planes() {
        let s = standard_structure(2);

        let complex = span(vec![unit(4, 0), unit(4, 1)]);
        let record = verify_wirtinger(&s, &complex).unwrap();
        assert!(record.complexity_residual <= 1e-10);
        assert!(record.bound_margin.abs() <= 1e-10);
        assert!(record.equality_consistent);

        let totally_real = span(vec![unit(4, 0), unit(4, 2)]);
        let record = verify_wirtinger(&s, &totally_real).unwrap();
        assert!((record.complexity_residual - 1.0).abs() < 1e-10);
        assert!((record.bound_margin - 1.0).abs() < 1e-12);
        assert!(record.equality_consistent);
    }

    #[test]
    fn angle_report_is_internally_consistent() {
        let s = random_compatible(2, 5);
        let w = span(vec![
            DVector::from_fn(4, |i, _| (i as f64 * 1.3).sin() + 0.4),
            DVector::from_fn(4, |i, _| (i as f64 * 0.7 - 0.2).cos()),
        ]);
        let report = angle_report(&s, &w, &Tolerances::DEFAULT).unwrap();
        let product: f64 = report.lambdas.iter().product();
        assert!((report.cos_alpha - product).abs() < 1e-9);
        assert!(report.alpha >= 0.0 && report.alpha <= std::f64::consts::PI);
        assert!((report.alpha - report.cos_alpha.clamp(-1.0, 1.0).acos()).abs() < 1e-15);
        for lam in &report.lambdas {
            assert!(lam.abs() <= 1.0 + 1e-9);
        }
        assert!(report.cos_alpha.abs() <= 1.0 + 1e-9);
    }

    #[test]
    fn rank_deficient_subspace_is_rejected() {
        let a = unit(4, 0);
        let b = unit(4, 0) * 2.0;
        assert!(matches!(
            OrientedSubspace::new(vec![a, b]),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn odd_vector_count_is_rejected() {
        assert!(matches!(
            OrientedSubspace::new(vec![unit(4, 0)]),
            Err(Error::OddDimension { n: 1 })
        ));
    }
}
