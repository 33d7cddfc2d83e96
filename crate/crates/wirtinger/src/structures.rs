//! Almost-Hermitian structures: compatible metric/rotation pairs, the
//! octonionic structure on the six-sphere, and smoothly varying structure
//! fields over chart domains.
//!
//! A [`CompatibleStructure`] packages a positive-definite metric `G` with an
//! almost complex structure `J` satisfying `J² = −I` and `JᵀGJ = G`; the
//! Kähler form is then `ω(u, v) = ⟨Ju, v⟩`. Beyond the flat model and seeded
//! random conjugates, the crate carries one genuinely curved example: the
//! standard non-integrable structure on `S⁶` induced by the octonion cross
//! product, exposed both at a point ([`s6_structure`]) and as a chart-level
//! field ([`chart_field`]). The finite-difference Nijenhuis tensor
//! ([`nijenhuis`]) distinguishes the two regimes — identically zero on flat
//! space, order-one on the sphere.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::check_spd_metric;
use crate::tolerances::Tolerances;

/// Condition-number cap enforced on the conjugating factor in
/// [`random_compatible`]; the metric's condition number is its square.
const RANDOM_CONDITION_LIMIT: f64 = 100.0;

/// Numerical guard at the edge of the orthographic disc: points with
/// `1 − |x|²` below this are rejected as outside the usable chart domain
/// (the pulled-back metric degenerates at the equator).
const ORTHOGRAPHIC_MARGIN: f64 = 1e-4;

/// A metric together with a compatible almost complex structure on `ℝ^{2n}`.
///
/// Invariants (enforced on construction, re-checkable with [`validate`]):
/// `G` symmetric positive definite, `J² = −I`, and `JᵀGJ = G`, all within
/// the algebraic tolerance. A structure may carry a `normal` direction, in
/// which case it represents the tangential structure of a hypersurface at a
/// point — the identities are then required only on the complement of the
/// normal, and `J` annihilates the normal itself.
#[derive(Debug, Clone)]
pub struct CompatibleStructure {
    metric: DMatrix<f64>,
    jop: DMatrix<f64>,
    normal: Option<DVector<f64>>,
}

impl CompatibleStructure {
    /// Validates and wraps a metric/operator pair.
    pub fn new(metric: DMatrix<f64>, jop: DMatrix<f64>) -> Result<Self> {
        Self::assemble(metric, jop, None)
    }

    /// Validates and wraps a hypersurface structure with a distinguished
    /// normal direction; the compatibility identities are checked on the
    /// normal's orthogonal complement.
    pub fn with_normal(
        metric: DMatrix<f64>,
        jop: DMatrix<f64>,
        normal: DVector<f64>,
    ) -> Result<Self> {
        Self::assemble(metric, jop, Some(normal))
    }

    fn assemble(
        metric: DMatrix<f64>,
        jop: DMatrix<f64>,
        normal: Option<DVector<f64>>,
    ) -> Result<Self> {
        let tol = Tolerances::DEFAULT;
        let dim = metric.nrows();
        check_spd_metric(&metric, dim)?;
        if jop.nrows() != dim || jop.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: jop.nrows().max(jop.ncols()),
            });
        }
        if let Some(p) = &normal {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
        } else if dim % 2 != 0 {
            return Err(Error::OddDimension { n: dim });
        }
        for i in 0..dim {
            for j in 0..dim {
                if !jop[(i, j)].is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        let candidate = CompatibleStructure {
            metric,
            jop,
            normal,
        };
        let diag = validate(&candidate);
        if !diag.passes {
            return Err(Error::IncompatibleStructure {
                reason: format!(
                    "residuals J²+I = {:.3e}, JᵀGJ−G = {:.3e} exceed {:.1e}",
                    diag.square_residual, diag.compatibility_residual, tol.algebraic
                ),
            });
        }
        Ok(candidate)
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.metric.nrows()
    }

    /// The metric `G`.
    pub fn metric(&self) -> &DMatrix<f64> {
        &self.metric
    }

    /// The almost complex operator `J`.
    pub fn jop(&self) -> &DMatrix<f64> {
        &self.jop
    }

    /// Distinguished normal direction, when this is a hypersurface structure.
    pub fn normal(&self) -> Option<&DVector<f64>> {
        self.normal.as_ref()
    }

    /// Applies `J` to a vector.
    pub fn apply(&self, v: &DVector<f64>) -> Result<DVector<f64>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        Ok(&self.jop * v)
    }

    /// Metric inner product `⟨u, v⟩ = uᵀ G v`.
    pub fn inner(&self, u: &DVector<f64>, v: &DVector<f64>) -> Result<f64> {
        if u.len() != self.dim() || v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: u.len().max(v.len()),
            });
        }
        Ok((&self.metric * v).dot(u))
    }
}

/// Residual record produced by [`validate`].
///
/// All residuals are max-norm entries of the corresponding defect matrix;
/// for a hypersurface structure the defects are first compressed to the
/// normal's orthogonal complement. `passes` is true when every residual sits
/// within the algebraic tolerance band and the metric spectrum is safely
/// positive.
#[derive(Debug, Clone, Serialize)]
pub struct StructureDiagnostics {
    /// Ambient dimension of the structure.
    pub dim: usize,
    /// `‖J² + I‖_max`, tangentially restricted if a normal is present.
    pub square_residual: f64,
    /// `‖JᵀGJ − G‖_max`, tangentially restricted if a normal is present.
    pub compatibility_residual: f64,
    /// `‖G − Gᵀ‖_max`.
    pub metric_asymmetry: f64,
    /// Smallest eigenvalue of the metric.
    pub metric_eigen_min: f64,
    /// Largest eigenvalue of the metric.
    pub metric_eigen_max: f64,
    /// `|J p|` for the normal `p`, zero when no normal is present.
    pub normal_image_residual: f64,
    /// Overall verdict at the default tolerances.
    pub passes: bool,
}

/// Recomputes the compatibility residuals of a structure from scratch.
pub fn validate(s: &CompatibleStructure) -> StructureDiagnostics {
    let tol = Tolerances::DEFAULT;
    let dim = s.dim();
    let identity = DMatrix::identity(dim, dim);

    let projector = match s.normal() {
        Some(p) => {
            let gp = &s.metric * p;
            let weight = gp.dot(p);
            // G-orthogonal projector onto the complement of p.
            &identity - p * (gp.transpose() / weight)
        }
        None => identity.clone(),
    };

    let square_defect = &s.jop * &s.jop + &identity;
    let compat_defect = s.jop.transpose() * &s.metric * &s.jop - &s.metric;
    let square_residual = (projector.transpose() * square_defect * &projector)
        .abs()
        .max();
    let compatibility_residual = (projector.transpose() * compat_defect * &projector)
        .abs()
        .max();
    let metric_asymmetry = (&s.metric - s.metric.transpose()).abs().max();

    let (metric_eigen_min, metric_eigen_max) =
        match nalgebra::SymmetricEigen::try_new(s.metric.clone(), f64::EPSILON, 0) {
            Some(eigen) => (eigen.eigenvalues.min(), eigen.eigenvalues.max()),
            None => (f64::NAN, f64::NAN),
        };

    let normal_image_residual = match s.normal() {
        Some(p) => (&s.jop * p).norm(),
        None => 0.0,
    };

    let scale = 1.0 + s.metric.abs().max();
    let passes = square_residual <= tol.algebraic * scale
        && compatibility_residual <= tol.algebraic * scale
        && metric_asymmetry <= tol.algebraic * scale
        && normal_image_residual <= tol.algebraic * scale
        && metric_eigen_min.is_finite()
        && metric_eigen_min > tol.spectrum * metric_eigen_max;

    StructureDiagnostics {
        dim,
        square_residual,
        compatibility_residual,
        metric_asymmetry,
        metric_eigen_min,
        metric_eigen_max,
        normal_image_residual,
        passes,
    }
}

/// The flat model on `ℝ^{2n}`: identity metric and the block rotation
/// `J e_{2k} = e_{2k+1}`, `J e_{2k+1} = −e_{2k}` (coordinates paired as
/// `(x_1, y_1, …, x_n, y_n)`).
pub fn standard_structure(n: usize) -> CompatibleStructure {
    assert!(n >= 1, "complex dimension must be at least 1");
    let dim = 2 * n;
    let metric = DMatrix::identity(dim, dim);
    let mut jop = DMatrix::zeros(dim, dim);
    for k in 0..n {
        jop[(2 * k + 1, 2 * k)] = 1.0;
        jop[(2 * k, 2 * k + 1)] = -1.0;
    }
    CompatibleStructure {
        metric,
        jop,
        normal: None,
    }
}

/// Seeded random compatible pair on `ℝ^{2n}`: a Gaussian conjugating factor
/// `A` (resampled until its condition number is at most `100`, then scaled
/// to unit spectral norm) transports the flat model to `G = AᵀA`,
/// `J = A⁻¹ J₀ A`. Identical seeds give bitwise identical structures; the
/// metric's condition number is bounded by `10⁴`.
pub fn random_compatible(n: usize, seed: u64) -> CompatibleStructure {
    assert!(n >= 1, "complex dimension must be at least 1");
    let dim = 2 * n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let flat = standard_structure(n);

    loop {
        let a = DMatrix::from_fn(dim, dim, |_, _| rng.sample::<f64, _>(StandardNormal));
        let singular = a.singular_values();
        let s_max = singular[0];
        let s_min = singular[singular.len() - 1];
        if !(s_min > 0.0) || s_max / s_min > RANDOM_CONDITION_LIMIT {
            continue;
        }
        let a = a / s_max;
        let metric = a.transpose() * &a;
        let lu = a.clone().lu();
        let jop = lu
            .solve(&(flat.jop() * &a))
            .expect("conditioned factor is invertible");
        return CompatibleStructure::new(metric, jop)
            .expect("conjugated structure satisfies the identities by construction");
    }
}

/// Kähler form `ω(u, v) = ⟨Ju, v⟩` of a structure.
pub fn kahler_form(s: &CompatibleStructure, u: &DVector<f64>, v: &DVector<f64>) -> Result<f64> {
    let ju = s.apply(u)?;
    s.inner(&ju, v)
}

/// The octonionic cross product on `ℝ⁷` and the structure constants behind
/// it. The multiplication table is encoded by seven ordered triples
/// `(i, j, k)` meaning `e_i × e_j = e_k` together with the two cyclic
/// rotations of each; all other basis products vanish.
pub mod octonion {
    use super::*;

    /// Index triples of the seven-dimensional cross product, 1-based as they
    /// are usually tabulated: `e_i × e_j = e_k` cyclically in each triple.
    pub const TRIPLES: [(usize, usize, usize); 7] = [
        (1, 2, 3),
        (1, 4, 5),
        (1, 7, 6),
        (2, 4, 6),
        (2, 5, 7),
        (3, 4, 7),
        (3, 6, 5),
    ];

    /// The cross product `u × v` on `ℝ⁷`.
    ///
    /// Bilinear, antisymmetric, orthogonal to both factors, and satisfying
    /// the norm identity `|u × v|² = |u|²|v|² − ⟨u, v⟩²`.
    pub fn cross(u: &DVector<f64>, v: &DVector<f64>) -> Result<DVector<f64>> {
        if u.len() != 7 || v.len() != 7 {
            return Err(Error::DimensionMismatch {
                expected: 7,
                got: u.len().max(v.len()),
            });
        }
        let mut out = DVector::zeros(7);
        for &(i, j, k) in &TRIPLES {
            let (a, b, c) = (i - 1, j - 1, k - 1);
            out[c] += u[a] * v[b] - u[b] * v[a];
            out[a] += u[b] * v[c] - u[c] * v[b];
            out[b] += u[c] * v[a] - u[a] * v[c];
        }
        Ok(out)
    }

    /// The linear map `v ↦ p × v` as a `7 × 7` matrix.
    pub fn cross_operator(p: &DVector<f64>) -> Result<DMatrix<f64>> {
        if p.len() != 7 {
            return Err(Error::DimensionMismatch {
                expected: 7,
                got: p.len(),
            });
        }
        let mut op = DMatrix::zeros(7, 7);
        for &(i, j, k) in &TRIPLES {
            let (a, b, c) = (i - 1, j - 1, k - 1);
            op[(c, b)] += p[a];
            op[(c, a)] -= p[b];
            op[(a, c)] += p[b];
            op[(a, b)] -= p[c];
            op[(b, a)] += p[c];
            op[(b, c)] -= p[a];
        }
        Ok(op)
    }
}

/// The almost complex structure of `S⁶ ⊂ ℝ⁷` at a point `p` of the unit
/// sphere: `J v = p × v`, represented ambiently with `p` recorded as the
/// normal direction. On the tangent space `p^⊥` the operator squares to
/// `−I` and is an isometry; `J p = 0` exactly.
pub fn s6_structure(p: &DVector<f64>) -> Result<CompatibleStructure> {
    let tol = Tolerances::DEFAULT;
    if p.len() != 7 {
        return Err(Error::DimensionMismatch {
            expected: 7,
            got: p.len(),
        });
    }
    let norm = p.norm();
    if (norm - 1.0).abs() > tol.algebraic {
        return Err(Error::NotUnit { norm });
    }
    let jop = octonion::cross_operator(p)?;
    CompatibleStructure::with_normal(DMatrix::identity(7, 7), jop, p.clone())
}

/// A smoothly varying compatible structure over a chart domain.
///
/// The evaluator returns a full [`CompatibleStructure`] at each admissible
/// chart point; [`nijenhuis`] probes its first derivatives by central
/// differences with the field's `smoothness_step`. Fields are `Send + Sync`
/// so grid sweeps can evaluate them in parallel.
pub struct StructureField {
    name: String,
    chart_dim: usize,
    ambient_dim: usize,
    domain_radius: Option<f64>,
    step: f64,
    evaluator: Box<dyn Fn(&DVector<f64>) -> Result<CompatibleStructure> + Send + Sync>,
}

impl std::fmt::Debug for StructureField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StructureField")
            .field("name", &self.name)
            .field("chart_dim", &self.chart_dim)
            .field("ambient_dim", &self.ambient_dim)
            .field("domain_radius", &self.domain_radius)
            .field("step", &self.step)
            .finish()
    }
}

impl StructureField {
    /// Catalog name this field was built from.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Dimension of the chart domain the field is parameterized over; the
    /// structure matrices the evaluator returns act on this many coordinates.
    pub fn chart_dim(&self) -> usize {
        self.chart_dim
    }

    /// Dimension of the embedding space the chart describes (7 for the
    /// sphere chart, equal to `chart_dim` for flat space).
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Radius of the open-ball chart domain, `None` when unbounded.
    pub fn domain_radius(&self) -> Option<f64> {
        self.domain_radius
    }

    /// Default finite-difference step for derivative probes of this field.
    pub fn smoothness_step(&self) -> f64 {
        self.step
    }

    /// Evaluates the structure at a chart point, checking the domain first.
    pub fn structure_at(&self, x: &DVector<f64>) -> Result<CompatibleStructure> {
        if x.len() != self.chart_dim {
            return Err(Error::DimensionMismatch {
                expected: self.chart_dim,
                got: x.len(),
            });
        }
        if let Some(radius) = self.domain_radius {
            let r = x.norm();
            if r >= radius {
                return Err(Error::ChartDomain {
                    reason: format!("|x| = {r:.6} is not inside the radius-{radius} ball"),
                });
            }
        }
        (self.evaluator)(x)
    }
}

/// Builds a named structure field from the catalog.
///
/// * `"flat"` — parameters `[n]`: the constant flat structure on `ℝ^{2n}`,
///   unbounded domain.
/// * `"s6-orthographic"` — parameters either empty (base point `ε₇`) or a
///   unit vector in `ℝ⁷`; the orthographic chart
///   `x ↦ R·(x, √(1 − |x|²))` of the hemisphere around the base point, with
///   the sphere structure pulled back through the chart differential. Domain
///   is the open unit disc in `ℝ⁶` (with a numerical guard at the equator,
///   where the pulled-back metric degenerates).
pub fn chart_field(name: &str, params: &[f64]) -> Result<StructureField> {
    match name {
        "flat" => {
            if params.len() != 1 {
                return Err(Error::Config(format!(
                    "flat field takes one parameter (n), got {}",
                    params.len()
                )));
            }
            let n_param = params[0];
            if !(n_param.is_finite() && n_param >= 1.0 && n_param.fract() == 0.0) {
                return Err(Error::Config(format!(
                    "flat field parameter must be a positive integer, got {n_param}"
                )));
            }
            let n = n_param as usize;
            let model = standard_structure(n);
            Ok(StructureField {
                name: "flat".to_string(),
                chart_dim: 2 * n,
                ambient_dim: 2 * n,
                domain_radius: None,
                step: 1e-4,
                evaluator: Box::new(move |_| Ok(model.clone())),
            })
        }
        "s6-orthographic" => {
            let base = match params.len() {
                0 => {
                    let mut b = DVector::zeros(7);
                    b[6] = 1.0;
                    b
                }
                7 => DVector::from_column_slice(params),
                other => {
                    return Err(Error::Config(format!(
                    "s6-orthographic takes no parameters or a 7-component base point, got {other}"
                )))
                }
            };
            let norm = base.norm();
            if (norm - 1.0).abs() > Tolerances::DEFAULT.algebraic {
                return Err(Error::NotUnit { norm });
            }
            let rotation = rotation_to(&base);
            Ok(StructureField {
                name: "s6-orthographic".to_string(),
                chart_dim: 6,
                ambient_dim: 7,
                domain_radius: Some(1.0),
                step: 1e-4,
                evaluator: Box::new(move |x| orthographic_pullback(&rotation, x)),
            })
        }
        other => Err(Error::UnknownCatalogEntry {
            name: other.to_string(),
        }),
    }
}

/// Orthogonal matrix taking `ε₇` to `target` (a unit vector): the standard
/// two-vector rotation formula, with an axis-pair flip as the antipodal
/// fallback where that formula degenerates.
fn rotation_to(target: &DVector<f64>) -> DMatrix<f64> {
    let mut pole = DVector::zeros(7);
    pole[6] = 1.0;
    let c = pole.dot(target);
    if c <= -1.0 + 1e-12 {
        let mut flip = DMatrix::identity(7, 7);
        flip[(5, 5)] = -1.0;
        flip[(6, 6)] = -1.0;
        return flip;
    }
    let sum = &pole + target;
    DMatrix::identity(7, 7) - (&sum * sum.transpose()) / (1.0 + c) + 2.0 * target * pole.transpose()
}

/// Pulls the sphere structure back through the orthographic chart
/// `φ(x) = R·(x, s)`, `s = √(1 − |x|²)`: with `D = Dφ(x)` the chart metric
/// is `G = DᵀD` and the chart operator is `J = G⁻¹ Dᵀ (p ×) D`, which
/// squares to `−I` exactly because the cross-product operator preserves the
/// tangent plane at `p = φ(x)`.
fn orthographic_pullback(rotation: &DMatrix<f64>, x: &DVector<f64>) -> Result<CompatibleStructure> {
    let r2 = x.norm_squared();
    let s2 = 1.0 - r2;
    if s2 < ORTHOGRAPHIC_MARGIN {
        return Err(Error::ChartDomain {
            reason: format!(
                "1 − |x|² = {s2:.3e} is below the numerical margin {ORTHOGRAPHIC_MARGIN:.0e}"
            ),
        });
    }
    let s = s2.sqrt();

    let mut graph = DVector::zeros(7);
    for i in 0..6 {
        graph[i] = x[i];
    }
    graph[6] = s;
    let point = rotation * graph;

    // Differential: columns are R·(e_i, −x_i/s).
    let mut differential = DMatrix::zeros(7, 6);
    for i in 0..6 {
        let mut column = DVector::zeros(7);
        column[i] = 1.0;
        column[6] = -x[i] / s;
        differential.set_column(i, &(rotation * column));
    }

    let ambient_j = octonion::cross_operator(&point)?;
    let metric = differential.transpose() * &differential;
    let mixed = differential.transpose() * ambient_j * &differential;
    let chol = metric.clone().cholesky().ok_or_else(|| Error::BadMetric {
        reason: "pulled-back chart metric lost positive definiteness".to_string(),
    })?;
    let jop = chol.solve(&mixed);
    CompatibleStructure::new(metric, jop)
}

/// Finite-difference Nijenhuis tensor of a structure field, applied to two
/// constant coordinate fields `X`, `Y`, evaluated at `x`:
///
/// `N(X, Y) = [JX, JY] − J[JX, Y] − J[X, JY] − [X, Y]`,
///
/// which for constant-coefficient `X`, `Y` reduces to
/// `(∇_{JX} J)Y − (∇_{JY} J)X + J(∇_Y J)X − J(∇_X J)Y` with every
/// directional derivative of the `J` field taken by central differences at
/// the field's default step. Returns the resulting chart vector: identically
/// zero (to rounding) for constant fields, and persistent under step
/// refinement exactly when the structure is non-integrable.
pub fn nijenhuis(
    field: &StructureField,
    x: &DVector<f64>,
    xv: &DVector<f64>,
    yv: &DVector<f64>,
) -> Result<DVector<f64>> {
    nijenhuis_with_step(field, x, xv, yv, field.smoothness_step())
}

/// [`nijenhuis`] with an explicit central-difference step.
///
/// The step must be positive and, for a bounded domain, at most one percent
/// of the domain radius ([`Error::StepTooLarge`] otherwise); every probe
/// point `x ± h·w` must itself lie in the domain.
pub fn nijenhuis_with_step(
    field: &StructureField,
    x: &DVector<f64>,
    xv: &DVector<f64>,
    yv: &DVector<f64>,
    step: f64,
) -> Result<DVector<f64>> {
    let dim = field.chart_dim();
    for v in [x, xv, yv] {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: v.len(),
            });
        }
    }
    if !(step > 0.0) {
        return Err(Error::Config(format!(
            "finite-difference step must be positive, got {step}"
        )));
    }
    if let Some(radius) = field.domain_radius() {
        if step > 0.01 * radius {
            return Err(Error::StepTooLarge { step, radius });
        }
    }

    let center = field.structure_at(x)?;
    let j0 = center.jop().clone();
    let derivative = |w: &DVector<f64>| -> Result<DMatrix<f64>> {
        let plus = field.structure_at(&(x + w * step))?;
        let minus = field.structure_at(&(x - w * step))?;
        Ok((plus.jop() - minus.jop()) / (2.0 * step))
    };

    let jx = &j0 * xv;
    let jy = &j0 * yv;
    let d_jx = derivative(&jx)?;
    let d_jy = derivative(&jy)?;
    let d_x = derivative(xv)?;
    let d_y = derivative(yv)?;

    Ok(d_jx * yv - d_jy * xv + &j0 * (d_y * xv) - &j0 * (d_x * yv))
}
