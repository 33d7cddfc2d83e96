//! Sampled submanifolds: parametrized immersion charts, per-grid-point
//! Kähler angle fields, finite-difference gradient estimates, and field
//! summaries.
//!
//! A chart is a smooth map from a rectangular parameter box into an ambient
//! space carrying a compatible structure (constant, or varying as a
//! [`StructureField`]). At each grid point the ordered partial derivatives
//! frame the tangent space — parameter order is the single source of
//! orientation truth — and the angle machinery classifies the point. The
//! per-point results assemble into an [`AngleField`] whose `α` values can be
//! differenced again for `|∇α|`, with singular flags replacing gradient
//! values where `|cos α|` pins to one and `arccos` stops being smooth.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angle::{angle_report, AngleReport, Classification, OrientedSubspace};
use crate::error::{Error, Result};
use crate::structures::{standard_structure, CompatibleStructure, StructureField};
use crate::tolerances::Tolerances;

/// One axis of a rectangular parameter grid: `samples` evenly spaced values
/// from `min` to `max` inclusive.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisSpec {
    pub min: f64,
    pub max: f64,
    pub samples: usize,
}

impl AxisSpec {
    /// Validates an axis: finite bounds in increasing order, at least two
    /// samples.
    pub fn new(min: f64, max: f64, samples: usize) -> Result<Self> {
        if !min.is_finite() || !max.is_finite() {
            return Err(Error::Config(format!(
                "axis bounds must be finite, got [{min}, {max}]"
            )));
        }
        if !(min < max) {
            return Err(Error::Config(format!(
                "axis bounds must satisfy min < max, got [{min}, {max}]"
            )));
        }
        if samples < 2 {
            return Err(Error::GridTooSmall {
                needed: 2,
                got: samples,
            });
        }
        Ok(AxisSpec { min, max, samples })
    }

    /// The sample coordinates, endpoints included.
    pub fn coordinates(&self) -> Vec<f64> {
        let spacing = self.spacing();
        (0..self.samples)
            .map(|i| {
                if i + 1 == self.samples {
                    self.max
                } else {
                    self.min + spacing * i as f64
                }
            })
            .collect()
    }

    /// Distance between adjacent samples.
    pub fn spacing(&self) -> f64 {
        (self.max - self.min) / (self.samples - 1) as f64
    }
}

/// The ambient geometry a chart immerses into: one fixed structure, or a
/// structure field evaluated at the image point.
pub enum Ambient {
    Constant(CompatibleStructure),
    Field(StructureField),
}

impl Ambient {
    /// Dimension of the space chart images live in.
    pub fn dim(&self) -> usize {
        match self {
            Ambient::Constant(s) => s.dim(),
            Ambient::Field(f) => f.chart_dim(),
        }
    }

    /// The structure acting at an image point.
    pub fn structure_at(&self, image: &DVector<f64>) -> Result<CompatibleStructure> {
        match self {
            Ambient::Constant(s) => Ok(s.clone()),
            Ambient::Field(f) => f.structure_at(image),
        }
    }
}

/// How tangent frames are produced from the chart map.
pub enum JacobianMode {
    /// A closed-form Jacobian: parameter point ↦ `ambient_dim × param_dim`
    /// matrix of partial derivatives.
    Analytic(Box<dyn Fn(&DVector<f64>) -> Result<DMatrix<f64>> + Send + Sync>),
    /// Central differences of the map. `None` selects the default step
    /// `1e-5 ×` (domain diameter).
    CentralDifference { step: Option<f64> },
}

type MapFn = Box<dyn Fn(&DVector<f64>) -> Result<DVector<f64>> + Send + Sync>;

/// A parametrized immersion over a rectangular sampled domain.
pub struct ImmersionChart {
    param_dim: usize,
    ambient_dim: usize,
    map: MapFn,
    jacobian: Option<Box<dyn Fn(&DVector<f64>) -> Result<DMatrix<f64>> + Send + Sync>>,
    step: f64,
    domain: Vec<AxisSpec>,
    ambient: Ambient,
}

impl ImmersionChart {
    /// Assembles and validates a chart.
    ///
    /// The parameter dimension is the number of domain axes; it must be
    /// even, positive, and at most the ambient dimension. Central-difference
    /// mode derives its default step from the domain diameter.
    pub fn new(
        map: MapFn,
        jacobian_mode: JacobianMode,
        domain: Vec<AxisSpec>,
        ambient: Ambient,
    ) -> Result<Self> {
        let param_dim = domain.len();
        if param_dim == 0 || param_dim % 2 != 0 {
            return Err(Error::OddDimension { n: param_dim });
        }
        let ambient_dim = ambient.dim();
        if param_dim > ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                got: param_dim,
            });
        }
        let diameter = domain
            .iter()
            .map(|a| (a.max - a.min).powi(2))
            .sum::<f64>()
            .sqrt();
        let (jacobian, step) = match jacobian_mode {
            JacobianMode::Analytic(j) => (Some(j), 1e-5 * diameter),
            JacobianMode::CentralDifference { step } => {
                let step = step.unwrap_or(1e-5 * diameter);
                if !(step > 0.0 && step.is_finite()) {
                    return Err(Error::Config(format!(
                        "finite-difference step must be positive, got {step}"
                    )));
                }
                (None, step)
            }
        };
        Ok(ImmersionChart {
            param_dim,
            ambient_dim,
            map,
            jacobian,
            step,
            domain,
            ambient,
        })
    }

    /// Parameter dimension `2m`.
    pub fn param_dim(&self) -> usize {
        self.param_dim
    }

    /// Ambient dimension `2n`.
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// The domain axes.
    pub fn domain(&self) -> &[AxisSpec] {
        &self.domain
    }

    /// The ambient geometry.
    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    /// Finite-difference step used when no analytic Jacobian is present.
    pub fn step(&self) -> f64 {
        self.step
    }

    /// Evaluates the chart map, checking the image dimension.
    pub fn image(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        if x.len() != self.param_dim {
            return Err(Error::DimensionMismatch {
                expected: self.param_dim,
                got: x.len(),
            });
        }
        let image = (self.map)(x)?;
        if image.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: image.len(),
            });
        }
        for (i, entry) in image.iter().enumerate() {
            if !entry.is_finite() {
                return Err(Error::NonFinite { row: i, col: 0 });
            }
        }
        Ok(image)
    }

    /// The `ambient_dim × param_dim` matrix of partial derivatives at `x`,
    /// analytic when available, otherwise by central differences.
    pub fn jacobian_at(&self, x: &DVector<f64>) -> Result<DMatrix<f64>> {
        if x.len() != self.param_dim {
            return Err(Error::DimensionMismatch {
                expected: self.param_dim,
                got: x.len(),
            });
        }
        if let Some(jac) = &self.jacobian {
            let matrix = jac(x)?;
            if matrix.nrows() != self.ambient_dim || matrix.ncols() != self.param_dim {
                return Err(Error::DimensionMismatch {
                    expected: self.ambient_dim,
                    got: matrix.nrows(),
                });
            }
            return Ok(matrix);
        }
        let mut columns = DMatrix::zeros(self.ambient_dim, self.param_dim);
        for axis in 0..self.param_dim {
            let mut forward = x.clone();
            let mut backward = x.clone();
            forward[axis] += self.step;
            backward[axis] -= self.step;
            let difference = (self.image(&forward)? - self.image(&backward)?) / (2.0 * self.step);
            columns.set_column(axis, &difference);
        }
        Ok(columns)
    }
}

/// Ordered tangent frame of the immersion at a parameter point: the partial
/// derivatives `(∂f/∂u_1, …, ∂f/∂u_{2m})`, whose order fixes the induced
/// orientation.
///
/// Fails with [`Error::DegenerateImmersion`] when the partials' Gram
/// determinant falls below `1e-10` of its diagonal scale.
pub fn tangent_frame(c: &ImmersionChart, x: &DVector<f64>) -> Result<OrientedSubspace> {
    let jacobian = c.jacobian_at(x)?;
    let k = c.param_dim();
    let gram = jacobian.transpose() * &jacobian;
    let mut scale = 1.0_f64;
    for i in 0..k {
        let d = gram[(i, i)];
        if d <= 0.0 {
            return Err(Error::DegenerateImmersion { det: 0.0 });
        }
        scale *= d;
    }
    let det = gram.determinant();
    if det <= 1e-10 * scale {
        return Err(Error::DegenerateImmersion { det });
    }
    let vectors = (0..k).map(|j| jacobian.column(j).into_owned()).collect();
    OrientedSubspace::new(vectors)
}

/// Per-point annotations of an angle field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointFlag {
    /// The point lies on the face of the grid (still evaluated; it just has
    /// no full gradient stencil).
    Boundary,
    /// The immersion dropped rank here; no report.
    Degenerate,
    /// Map, structure, or report evaluation failed here; no report.
    EvalFailed,
    /// `|cos α| ≥ 1 − 1e-6`: the angle is not smooth here, so the gradient
    /// is flagged instead of estimated.
    Singular,
}

impl PointFlag {
    /// Stable kebab-case label used in CSV output.
    pub fn label(&self) -> &'static str {
        match self {
            PointFlag::Boundary => "boundary",
            PointFlag::Degenerate => "degenerate",
            PointFlag::EvalFailed => "eval-failed",
            PointFlag::Singular => "singular",
        }
    }
}

/// One grid point of an [`AngleField`].
#[derive(Debug, Clone)]
pub struct FieldPoint {
    /// Parameter coordinates of the point.
    pub params: Vec<f64>,
    /// Angle data; absent exactly when a Degenerate/EvalFailed flag is set.
    pub report: Option<AngleReport>,
    /// `|∇α|` estimate, present after [`gradient_field`] on interior
    /// non-singular points with a full stencil.
    pub grad_alpha_norm: Option<f64>,
    /// Annotations, in a fixed order.
    pub flags: Vec<PointFlag>,
}

/// Kähler angle data over a sampled chart domain, stored in row-major grid
/// order (last axis fastest).
#[derive(Debug, Clone)]
pub struct AngleField {
    axes: Vec<AxisSpec>,
    points: Vec<FieldPoint>,
}

impl AngleField {
    /// Samples per axis.
    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.samples).collect()
    }

    /// The grid axes.
    pub fn axes(&self) -> &[AxisSpec] {
        &self.axes
    }

    /// All grid points in storage order.
    pub fn points(&self) -> &[FieldPoint] {
        &self.points
    }

    /// The point at a multi-index.
    pub fn at(&self, index: &[usize]) -> &FieldPoint {
        &self.points[self.flatten(index)]
    }

    fn flatten(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.axes.len());
        let mut flat = 0;
        for (axis, &i) in self.axes.iter().zip(index) {
            debug_assert!(i < axis.samples);
            flat = flat * axis.samples + i;
        }
        flat
    }

    fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let mut index = vec![0; self.axes.len()];
        for (slot, axis) in index.iter_mut().zip(&self.axes).rev() {
            *slot = flat % axis.samples;
            flat /= axis.samples;
        }
        index
    }

    fn total(&self) -> usize {
        self.axes.iter().map(|a| a.samples).product()
    }
}

/// Evaluates the Kähler angle at every grid point of the chart, at the
/// default tolerances. See [`angle_field_with`].
pub fn angle_field(c: &ImmersionChart) -> AngleField {
    angle_field_with(c, &Tolerances::DEFAULT)
}

/// Evaluates the Kähler angle at every grid point of the chart.
///
/// Nothing here is fatal: grid-face points are flagged `boundary` but still
/// evaluated (the chart map extends past the box for the frame's central
/// differences), a rank-deficient immersion point is flagged `degenerate`,
/// and any other per-point failure — an image outside a structure field's
/// domain, say — is flagged `eval-failed`. Points are evaluated
/// independently (and in parallel); assembly order is grid order, so the
/// result is deterministic.
pub fn angle_field_with(c: &ImmersionChart, tol: &Tolerances) -> AngleField {
    let axes = c.domain().to_vec();
    let coordinates: Vec<Vec<f64>> = axes.iter().map(|a| a.coordinates()).collect();
    let shape: Vec<usize> = axes.iter().map(|a| a.samples).collect();
    let total: usize = shape.iter().product();

    let points: Vec<FieldPoint> = (0..total)
        .into_par_iter()
        .map(|flat| {
            let index = unflatten_index(flat, &shape);
            let params: Vec<f64> = index
                .iter()
                .zip(&coordinates)
                .map(|(&i, coords)| coords[i])
                .collect();
            let on_boundary = index
                .iter()
                .zip(&shape)
                .any(|(&i, &s)| i == 0 || i + 1 == s);
            let mut flags = Vec::new();
            if on_boundary {
                flags.push(PointFlag::Boundary);
            }
            let x = DVector::from_column_slice(&params);
            let report = evaluate_point(c, &x, tol);
            let report = match report {
                Ok(r) => Some(r),
                Err(Error::DegenerateImmersion { .. }) => {
                    flags.push(PointFlag::Degenerate);
                    None
                }
                Err(_) => {
                    flags.push(PointFlag::EvalFailed);
                    None
                }
            };
            FieldPoint {
                params,
                report,
                grad_alpha_norm: None,
                flags,
            }
        })
        .collect();

    AngleField { axes, points }
}

fn unflatten_index(mut flat: usize, shape: &[usize]) -> Vec<usize> {
    let mut index = vec![0; shape.len()];
    for (slot, &s) in index.iter_mut().zip(shape).rev() {
        *slot = flat % s;
        flat /= s;
    }
    index
}

fn evaluate_point(c: &ImmersionChart, x: &DVector<f64>, tol: &Tolerances) -> Result<AngleReport> {
    let frame = tangent_frame(c, x)?;
    let image = c.image(x)?;
    let structure = c.ambient().structure_at(&image)?;
    angle_report(&structure, &frame, tol)
}

/// Fills `grad_alpha_norm` by central-differencing `α` across the grid and
/// measuring the gradient in the induced metric:
/// `|∇α|² = Σ g^{ij} ∂_i α ∂_j α` with `g = (Df)ᵀ G (Df)` at each point.
///
/// Points with `|cos α| ≥ 1 − 1e-6` are flagged [`PointFlag::Singular`]
/// instead — `α` is not smooth at complex and anti-complex points — and
/// points without a complete interior stencil of reports keep an empty
/// estimate. Requires at least three samples per axis.
pub fn gradient_field(af: &AngleField, c: &ImmersionChart) -> Result<AngleField> {
    let tol = Tolerances::DEFAULT;
    for axis in af.axes() {
        if axis.samples < 3 {
            return Err(Error::GridTooSmall {
                needed: 3,
                got: axis.samples,
            });
        }
    }
    if af.axes() != c.domain() {
        return Err(Error::DimensionMismatch {
            expected: c.domain().len(),
            got: af.axes().len(),
        });
    }

    let shape = af.shape();
    let spacings: Vec<f64> = af.axes().iter().map(|a| a.spacing()).collect();
    let mut updated = af.clone();

    for flat in 0..af.total() {
        let index = af.unflatten(flat);
        let point = &af.points[flat];
        let Some(report) = &point.report else {
            continue;
        };

        if report.cos_alpha.abs() >= 1.0 - tol.singular_cos {
            let target = &mut updated.points[flat];
            if !target.flags.contains(&PointFlag::Singular) {
                target.flags.push(PointFlag::Singular);
            }
            continue;
        }

        let interior = index.iter().zip(&shape).all(|(&i, &s)| i >= 1 && i + 1 < s);
        if !interior {
            continue;
        }

        let mut derivative = DVector::zeros(shape.len());
        let mut stencil_complete = true;
        for axis in 0..shape.len() {
            let mut upper = index.clone();
            let mut lower = index.clone();
            upper[axis] += 1;
            lower[axis] -= 1;
            let (above, below) = (af.at(&upper), af.at(&lower));
            match (&above.report, &below.report) {
                (Some(a), Some(b)) => {
                    derivative[axis] = (a.alpha - b.alpha) / (2.0 * spacings[axis]);
                }
                _ => {
                    stencil_complete = false;
                    break;
                }
            }
        }
        if !stencil_complete {
            continue;
        }

        let x = DVector::from_column_slice(&point.params);
        let norm = induced_gradient_norm(c, &x, &derivative);
        if let Ok(norm) = norm {
            updated.points[flat].grad_alpha_norm = Some(norm);
        }
    }
    Ok(updated)
}

/// Contracts `∂α` with the inverse induced metric at `x` and takes the
/// square root.
fn induced_gradient_norm(
    c: &ImmersionChart,
    x: &DVector<f64>,
    derivative: &DVector<f64>,
) -> Result<f64> {
    let jacobian = c.jacobian_at(x)?;
    let image = c.image(x)?;
    let ambient = c.ambient().structure_at(&image)?;
    let induced = jacobian.transpose() * ambient.metric() * &jacobian;
    let chol = induced
        .cholesky()
        .ok_or(Error::DegenerateImmersion { det: 0.0 })?;
    let contra = chol.solve(derivative);
    Ok(derivative.dot(&contra).max(0.0).sqrt())
}

/// Classification tallies of a field.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationCounts {
    pub complex: usize,
    pub anti_complex: usize,
    pub isotropic: usize,
    pub generic: usize,
}

/// Aggregate view of an [`AngleField`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldSummary {
    /// Total grid points.
    pub points: usize,
    /// Points carrying a complete report.
    pub reported: usize,
    /// Points carrying at least one flag.
    pub flagged: usize,
    /// Points flagged singular.
    pub singular: usize,
    /// Smallest `cos α` among reported points, absent when none reported.
    pub cos_alpha_min: Option<f64>,
    /// Largest `cos α` among reported points.
    pub cos_alpha_max: Option<f64>,
    /// Mean `cos α` over reported points.
    pub cos_alpha_mean: Option<f64>,
    /// Reported points per classification label.
    pub classification: ClassificationCounts,
    /// Largest gradient estimate, absent when none were computed.
    pub max_grad_alpha_norm: Option<f64>,
}

/// Summarizes a field: extremes and mean of `cos α`, classification tallies,
/// flag counts, and the largest gradient estimate.
pub fn field_summary(af: &AngleField) -> FieldSummary {
    let mut summary = FieldSummary {
        points: af.points().len(),
        reported: 0,
        flagged: 0,
        singular: 0,
        cos_alpha_min: None,
        cos_alpha_max: None,
        cos_alpha_mean: None,
        classification: ClassificationCounts::default(),
        max_grad_alpha_norm: None,
    };
    let mut sum = 0.0;
    for point in af.points() {
        if !point.flags.is_empty() {
            summary.flagged += 1;
        }
        if point.flags.contains(&PointFlag::Singular) {
            summary.singular += 1;
        }
        if let Some(report) = &point.report {
            summary.reported += 1;
            sum += report.cos_alpha;
            summary.cos_alpha_min = Some(match summary.cos_alpha_min {
                Some(min) => min.min(report.cos_alpha),
                None => report.cos_alpha,
            });
            summary.cos_alpha_max = Some(match summary.cos_alpha_max {
                Some(max) => max.max(report.cos_alpha),
                None => report.cos_alpha,
            });
            match report.classification {
                Classification::Complex => summary.classification.complex += 1,
                Classification::AntiComplex => summary.classification.anti_complex += 1,
                Classification::Isotropic => summary.classification.isotropic += 1,
                Classification::Generic => summary.classification.generic += 1,
            }
        }
        if let Some(norm) = point.grad_alpha_norm {
            summary.max_grad_alpha_norm = Some(match summary.max_grad_alpha_norm {
                Some(max) => max.max(norm),
                None => norm,
            });
        }
    }
    if summary.reported > 0 {
        summary.cos_alpha_mean = Some(sum / summary.reported as f64);
    }
    summary
}

/// Builds a named chart from the catalog over the given domain.
///
/// * `"holomorphic-graph"` — the graph of `z ↦ z²` in `ℂ²`:
///   `(u, v) ↦ (u, v, u² − v², 2uv)`; complex at every point.
/// * `"conjugate-graph"` — `(x, y) ↦ (x, y, x, −y)` in `ℂ²`; isotropic
///   everywhere.
/// * `"slant-plane"` — parameter `θ`: the plane spanned by `e₁` and
///   `cos θ·e₃ + sin θ·e₂` in `ℂ²`; constant `cos α = sin θ`.
/// * `"slant-family"` — `(u, v) ↦ sin u·e₃ + v·e₅ + (cos u − 1)·e₆` in
///   `ℂ³`: a unit-speed family of slant planes with `cos α = sin u`, so
///   `α = π/2 − u` and `|∇α| = 1` identically.
///
/// All catalog charts carry analytic Jacobians and flat ambient structures;
/// coordinates pair as `(x_1, y_1, …)` with `J∂_{x_i} = ∂_{y_i}`.
pub fn catalog_chart(name: &str, params: &[f64], domain: Vec<AxisSpec>) -> Result<ImmersionChart> {
    match name {
        "holomorphic-graph" => {
            expect_params(name, params, 0)?;
            expect_axes(name, &domain, 2)?;
            ImmersionChart::new(
                Box::new(|x: &DVector<f64>| {
                    let (u, v) = (x[0], x[1]);
                    Ok(DVector::from_vec(vec![u, v, u * u - v * v, 2.0 * u * v]))
                }),
                JacobianMode::Analytic(Box::new(|x: &DVector<f64>| {
                    let (u, v) = (x[0], x[1]);
                    Ok(DMatrix::from_row_slice(
                        4,
                        2,
                        &[1.0, 0.0, 0.0, 1.0, 2.0 * u, -2.0 * v, 2.0 * v, 2.0 * u],
                    ))
                })),
                domain,
                Ambient::Constant(standard_structure(2)),
            )
        }
        "conjugate-graph" => {
            expect_params(name, params, 0)?;
            expect_axes(name, &domain, 2)?;
            ImmersionChart::new(
                Box::new(|x: &DVector<f64>| Ok(DVector::from_vec(vec![x[0], x[1], x[0], -x[1]]))),
                JacobianMode::Analytic(Box::new(|_: &DVector<f64>| {
                    Ok(DMatrix::from_row_slice(
                        4,
                        2,
                        &[1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0, -1.0],
                    ))
                })),
                domain,
                Ambient::Constant(standard_structure(2)),
            )
        }
        "slant-plane" => {
            expect_params(name, params, 1)?;
            expect_axes(name, &domain, 2)?;
            let theta = params[0];
            if !theta.is_finite() {
                return Err(Error::Config(format!(
                    "slant-plane angle must be finite, got {theta}"
                )));
            }
            let (sin, cos) = theta.sin_cos();
            ImmersionChart::new(
                Box::new(move |x: &DVector<f64>| {
                    Ok(DVector::from_vec(vec![x[0], x[1] * sin, x[1] * cos, 0.0]))
                }),
                JacobianMode::Analytic(Box::new(move |_: &DVector<f64>| {
                    Ok(DMatrix::from_row_slice(
                        4,
                        2,
                        &[1.0, 0.0, 0.0, sin, 0.0, cos, 0.0, 0.0],
                    ))
                })),
                domain,
                Ambient::Constant(standard_structure(2)),
            )
        }
        "slant-family" => {
            expect_params(name, params, 0)?;
            expect_axes(name, &domain, 2)?;
            ImmersionChart::new(
                Box::new(|x: &DVector<f64>| {
                    let (u, v) = (x[0], x[1]);
                    Ok(DVector::from_vec(vec![
                        0.0,
                        0.0,
                        u.sin(),
                        0.0,
                        v,
                        u.cos() - 1.0,
                    ]))
                }),
                JacobianMode::Analytic(Box::new(|x: &DVector<f64>| {
                    let u = x[0];
                    Ok(DMatrix::from_row_slice(
                        6,
                        2,
                        &[
                            0.0,
                            0.0, //
                            0.0,
                            0.0, //
                            u.cos(),
                            0.0, //
                            0.0,
                            0.0, //
                            0.0,
                            1.0, //
                            -u.sin(),
                            0.0,
                        ],
                    ))
                })),
                domain,
                Ambient::Constant(standard_structure(3)),
            )
        }
        other => Err(Error::UnknownCatalogEntry {
            name: other.to_string(),
        }),
    }
}

fn expect_params(name: &str, params: &[f64], expected: usize) -> Result<()> {
    if params.len() != expected {
        return Err(Error::Config(format!(
            "catalog chart `{name}` takes {expected} parameter(s), got {}",
            params.len()
        )));
    }
    Ok(())
}

fn expect_axes(name: &str, domain: &[AxisSpec], expected: usize) -> Result<()> {
    if domain.len() != expected {
        return Err(Error::Config(format!(
            "catalog chart `{name}` is parametrized over {expected} axes, got {}",
            domain.len()
        )));
    }
    Ok(())
}
