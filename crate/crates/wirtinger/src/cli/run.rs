//! Command execution: turns a validated [`JobConfig`] into reports and an
//! exit code.
//!
//! Exit codes: `0` success, `1` configuration or input errors, `2` a
//! mathematical check failed (structure diagnostics, or a Wirtinger
//! violation in `verify`), `3` numerical breakdown (convergence failure or
//! a degenerate immersion).

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::angle::{angle_report, verify_wirtinger, OrientedSubspace};
use crate::charts::{
    angle_field_with, catalog_chart, field_summary, gradient_field, Ambient, AxisSpec,
    ImmersionChart, JacobianMode,
};
use crate::cli::config::{
    ChartSpec, CommandKind, DimensionPair, JobConfig, OutputFormat, StructureSpec,
};
use crate::cli::expr::{parse_expression, Expression};
use crate::cli::output::{emit, field_to_csv, to_json, ScanDocument, ScanPoint};
use crate::error::{Error, Result};
use crate::structures::{
    chart_field, nijenhuis_with_step, random_compatible, s6_structure, standard_structure,
    validate, CompatibleStructure, StructureField,
};

/// Runs the job and returns the process exit code.
pub fn execute(config: &JobConfig) -> Result<i32> {
    match config.command {
        CommandKind::ValidateStructure => run_validate(config),
        CommandKind::Angle => run_angle(config),
        CommandKind::Scan => run_scan(config),
        CommandKind::Verify => run_verify(config),
        CommandKind::Nijenhuis => run_nijenhuis(config),
    }
}

fn dvector(xs: &[f64]) -> DVector<f64> {
    DVector::from_column_slice(xs)
}

/// Builds a point structure; a field spec is evaluated at its chart origin.
fn build_structure(spec: &StructureSpec) -> Result<CompatibleStructure> {
    match spec {
        StructureSpec::Standard { n } => {
            if *n == 0 {
                return Err(Error::Config("standard structure needs n ≥ 1".to_string()));
            }
            Ok(standard_structure(*n))
        }
        StructureSpec::Random { n, seed } => {
            if *n == 0 {
                return Err(Error::Config("random structure needs n ≥ 1".to_string()));
            }
            Ok(random_compatible(*n, *seed))
        }
        StructureSpec::S6 { point } => s6_structure(&dvector(point)),
        StructureSpec::Field { name, params } => {
            let field = chart_field(name, params)?;
            let origin = DVector::zeros(field.chart_dim());
            field.structure_at(&origin)
        }
    }
}

fn require_structure<'a>(config: &'a JobConfig, command: &str) -> Result<&'a StructureSpec> {
    config
        .structure
        .as_ref()
        .ok_or_else(|| Error::Config(format!("the {command} command needs a `structure` entry")))
}

// ---------------------------------------------------------------------------
// validate-structure
// ---------------------------------------------------------------------------

fn run_validate(config: &JobConfig) -> Result<i32> {
    let spec = require_structure(config, "validate-structure")?;
    let structure = build_structure(spec)?;
    let diagnostics = validate(&structure);
    let mut text = to_json(&diagnostics)?;
    text.push('\n');
    emit(&text, config.output.as_deref())?;
    Ok(if diagnostics.passes { 0 } else { 2 })
}

// ---------------------------------------------------------------------------
// angle
// ---------------------------------------------------------------------------

fn run_angle(config: &JobConfig) -> Result<i32> {
    let spec = require_structure(config, "angle")?;
    if matches!(spec, StructureSpec::Field { .. }) {
        return Err(Error::Config(
            "the angle command needs a point structure; use scan for structure fields".to_string(),
        ));
    }
    let structure = build_structure(spec)?;
    let subspace = config
        .subspace
        .as_ref()
        .ok_or_else(|| Error::Config("the angle command needs a `subspace` entry".to_string()))?;
    let vectors: Vec<DVector<f64>> = subspace.vectors.iter().map(|v| dvector(v)).collect();
    let w = OrientedSubspace::new(vectors)?;
    if w.ambient_dim() != structure.dim() {
        return Err(Error::DimensionMismatch {
            expected: structure.dim(),
            got: w.ambient_dim(),
        });
    }
    let report = angle_report(&structure, &w, &config.tolerances())?;
    let mut text = to_json(&report)?;
    text.push('\n');
    emit(&text, config.output.as_deref())?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

/// Resolves an expression variable against the chart parameters: `u_k` and
/// `uk` name the k-th parameter (1-based), with `u` and `v` as aliases for
/// the first two.
fn parameter_lookup(name: &str, x: &DVector<f64>) -> Option<f64> {
    let index = match name {
        "u" => 0,
        "v" => 1,
        _ => {
            let digits = name.strip_prefix("u_").or_else(|| name.strip_prefix('u'))?;
            digits.parse::<usize>().ok()?.checked_sub(1)?
        }
    };
    if index < x.len() {
        Some(x[index])
    } else {
        None
    }
}

fn check_component_variables(components: &[Expression], param_dim: usize) -> Result<()> {
    let probe = DVector::zeros(param_dim);
    for component in components {
        for name in component.variables() {
            if parameter_lookup(&name, &probe).is_none() {
                return Err(Error::Config(format!(
                    "chart component uses `{name}`, but the grid only binds u_1 … u_{param_dim}"
                )));
            }
        }
    }
    Ok(())
}

fn build_chart(config: &JobConfig) -> Result<ImmersionChart> {
    let grid = config
        .grid
        .as_ref()
        .ok_or_else(|| Error::Config("the scan command needs a `grid` entry".to_string()))?;
    let mut domain = Vec::with_capacity(grid.len());
    for axis in grid {
        domain.push(AxisSpec::new(axis.min, axis.max, axis.samples)?);
    }
    let chart_spec = config
        .chart
        .as_ref()
        .ok_or_else(|| Error::Config("the scan command needs a `chart` entry".to_string()))?;

    match chart_spec {
        ChartSpec::Catalog { catalog, params } => {
            if config.structure.is_some() {
                return Err(Error::Config(
                    "catalog charts carry their own ambient structure; drop the `structure` entry"
                        .to_string(),
                ));
            }
            catalog_chart(catalog, params, domain)
        }
        ChartSpec::Expressions { components } => {
            let spec = require_structure(config, "scan")?;
            let ambient = match spec {
                StructureSpec::Field { name, params } => Ambient::Field(chart_field(name, params)?),
                _ => Ambient::Constant(build_structure(spec)?),
            };
            if components.len() != ambient.dim() {
                return Err(Error::Config(format!(
                    "chart has {} components but the ambient structure has dimension {}",
                    components.len(),
                    ambient.dim()
                )));
            }
            let parsed: Vec<Expression> = components
                .iter()
                .map(|text| parse_expression(text))
                .collect::<Result<_>>()?;
            check_component_variables(&parsed, domain.len())?;
            let map = Box::new(move |x: &DVector<f64>| {
                let mut image = DVector::zeros(parsed.len());
                for (slot, component) in parsed.iter().enumerate() {
                    image[slot] = component.evaluate(&|name| parameter_lookup(name, x))?;
                }
                Ok(image)
            });
            let jacobian_mode = JacobianMode::CentralDifference {
                step: config.jacobian.and_then(|j| j.step),
            };
            ImmersionChart::new(map, jacobian_mode, domain, ambient)
        }
    }
}

fn run_scan(config: &JobConfig) -> Result<i32> {
    let chart = build_chart(config)?;
    let tolerances = config.tolerances();
    let mut field = angle_field_with(&chart, &tolerances);
    // A full central-difference stencil needs at least three samples per
    // axis; thinner grids simply skip the gradient column.
    if chart.domain().iter().all(|axis| axis.samples >= 3) {
        field = gradient_field(&field, &chart)?;
    }
    let summary = field_summary(&field);

    match config.format.unwrap_or(OutputFormat::Csv) {
        OutputFormat::Csv => {
            let csv = field_to_csv(&field);
            emit(&csv, config.output.as_deref())?;
            if let Some(path) = config.output.as_deref() {
                let mut text = to_json(&summary)?;
                text.push('\n');
                emit(&text, Some(&path.with_extension("summary.json")))?;
            }
        }
        OutputFormat::Json => {
            let document = ScanDocument {
                summary: summary.clone(),
                points: field
                    .points()
                    .iter()
                    .map(ScanPoint::from_field_point)
                    .collect(),
            };
            let mut text = to_json(&document)?;
            text.push('\n');
            emit(&text, config.output.as_deref())?;
        }
    }

    if summary.points > 0 && summary.reported == 0 {
        eprintln!("wirtinger: no grid point produced a report (degenerate immersion?)");
        return Ok(3);
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

/// Dimension pairs exercised when a verify config names none.
pub fn default_dimensions() -> Vec<DimensionPair> {
    let mut dims = Vec::new();
    for ambient in [4usize, 6, 8, 10, 12] {
        let mut subspace = 2;
        while subspace <= ambient {
            dims.push(DimensionPair { ambient, subspace });
            subspace += 2;
        }
    }
    dims
}

/// Outcome of a randomized Wirtinger battery.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    pub dimensions: Vec<DimensionPair>,
    /// Smallest `1 − |cos α|` seen; the inequality demands ≥ `−1e-9`.
    pub worst_bound_margin: f64,
    /// Trials with `bound_margin < −1e-9`.
    pub violations: usize,
    /// Trials whose equality condition contradicted the complexity
    /// residual.
    pub equality_inconsistencies: usize,
}

/// Runs `trials` random (structure, subspace) draws over the dimension
/// cycle and checks Wirtinger's inequality and its equality condition on
/// each. Deterministic in `seed`.
pub fn verify_battery(
    seed: u64,
    trials: usize,
    dimensions: &[DimensionPair],
) -> Result<VerifyReport> {
    for pair in dimensions {
        if pair.ambient == 0 || pair.ambient % 2 != 0 {
            return Err(Error::OddDimension { n: pair.ambient });
        }
        if pair.subspace == 0 || pair.subspace % 2 != 0 {
            return Err(Error::OddDimension { n: pair.subspace });
        }
        if pair.subspace > pair.ambient {
            return Err(Error::DimensionMismatch {
                expected: pair.ambient,
                got: pair.subspace,
            });
        }
    }
    if dimensions.is_empty() {
        return Err(Error::Config(
            "verify needs at least one dimension pair".to_string(),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_bound_margin = f64::INFINITY;
    let mut violations = 0;
    let mut equality_inconsistencies = 0;

    for trial in 0..trials {
        let pair = dimensions[trial % dimensions.len()];
        let structure = random_compatible(pair.ambient / 2, rng.gen());
        // A Gaussian frame is almost surely independent; rejection keeps
        // the battery total-failure-free without biasing the draw.
        let record = loop {
            let vectors: Vec<DVector<f64>> = (0..pair.subspace)
                .map(|_| DVector::from_fn(pair.ambient, |_, _| rng.sample(StandardNormal)))
                .collect();
            match OrientedSubspace::new(vectors).and_then(|w| verify_wirtinger(&structure, &w)) {
                Ok(record) => break record,
                Err(Error::RankDeficient { .. }) => continue,
                Err(e) => return Err(e),
            }
        };
        worst_bound_margin = worst_bound_margin.min(record.bound_margin);
        if record.bound_margin < -1e-9 {
            violations += 1;
        }
        if !record.equality_consistent {
            equality_inconsistencies += 1;
        }
    }

    Ok(VerifyReport {
        seed,
        trials,
        dimensions: dimensions.to_vec(),
        worst_bound_margin,
        violations,
        equality_inconsistencies,
    })
}

fn run_verify(config: &JobConfig) -> Result<i32> {
    let seed = config.seed.unwrap_or(0);
    let trials = config.trials.unwrap_or(1000);
    if trials == 0 {
        return Err(Error::Config("verify needs at least one trial".to_string()));
    }
    let dimensions = match &config.dimensions {
        Some(dims) => dims.clone(),
        None => default_dimensions(),
    };
    let report = verify_battery(seed, trials, &dimensions)?;
    let mut text = to_json(&report)?;
    text.push('\n');
    emit(&text, config.output.as_deref())?;
    Ok(
        if report.violations > 0 || report.equality_inconsistencies > 0 {
            2
        } else {
            0
        },
    )
}

// ---------------------------------------------------------------------------
// nijenhuis
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct NijenhuisEvaluation {
    pub point: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// `|N(X, Y)|` at the requested step.
    pub norm: f64,
    /// `|N(X, Y)|` at half the step.
    pub halved_step_norm: f64,
    /// `norm / halved_step_norm`; near 1 when the tensor value has
    /// converged, absent when the halved-step norm vanishes.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NijenhuisReport {
    pub field: String,
    pub step: f64,
    pub evaluations: Vec<NijenhuisEvaluation>,
}

fn coordinate_pairs(dim: usize) -> Vec<(DVector<f64>, DVector<f64>)> {
    let mut pairs = Vec::new();
    for i in 0..dim {
        for j in (i + 1)..dim {
            let mut x = DVector::zeros(dim);
            let mut y = DVector::zeros(dim);
            x[i] = 1.0;
            y[j] = 1.0;
            pairs.push((x, y));
        }
    }
    pairs
}

fn run_nijenhuis(config: &JobConfig) -> Result<i32> {
    let spec = require_structure(config, "nijenhuis")?;
    let field: StructureField = match spec {
        StructureSpec::Field { name, params } => chart_field(name, params)?,
        _ => {
            return Err(Error::Config(
                "the nijenhuis command needs a structure field (`type`: \"field\")".to_string(),
            ))
        }
    };
    let points = config
        .points
        .as_ref()
        .ok_or_else(|| Error::Config("the nijenhuis command needs a `points` entry".to_string()))?;
    if points.is_empty() {
        return Err(Error::Config(
            "the nijenhuis command needs at least one point".to_string(),
        ));
    }
    let directions: Vec<(DVector<f64>, DVector<f64>)> = match &config.directions {
        Some(pairs) => pairs
            .iter()
            .map(|pair| (dvector(&pair.x), dvector(&pair.y)))
            .collect(),
        None => coordinate_pairs(field.chart_dim()),
    };
    let step = config.step.unwrap_or_else(|| field.smoothness_step());

    let mut evaluations = Vec::new();
    for point in points {
        let p = dvector(point);
        for (x, y) in &directions {
            let full = nijenhuis_with_step(&field, &p, x, y, step)?;
            let halved = nijenhuis_with_step(&field, &p, x, y, step / 2.0)?;
            let norm = full.norm();
            let halved_step_norm = halved.norm();
            let ratio = if halved_step_norm > 1e-14 {
                Some(norm / halved_step_norm)
            } else {
                None
            };
            evaluations.push(NijenhuisEvaluation {
                point: point.clone(),
                x: x.iter().copied().collect(),
                y: y.iter().copied().collect(),
                norm,
                halved_step_norm,
                ratio,
            });
        }
    }

    let report = NijenhuisReport {
        field: field.name().to_string(),
        step,
        evaluations,
    };
    let mut text = to_json(&report)?;
    text.push('\n');
    emit(&text, config.output.as_deref())?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_dimensions_are_even_and_nested() {
        for pair in default_dimensions() {
            assert_eq!(pair.ambient % 2, 0);
            assert_eq!(pair.subspace % 2, 0);
            assert!(pair.subspace <= pair.ambient);
        }
        assert_eq!(default_dimensions().len(), 2 + 3 + 4 + 5 + 6);
    }

    #[test]
    fn verify_battery_is_deterministic_and_clean() {
        let dims = vec![DimensionPair {
            ambient: 6,
            subspace: 4,
        }];
        let a = verify_battery(11, 40, &dims).unwrap();
        let b = verify_battery(11, 40, &dims).unwrap();
        assert_eq!(
            a.worst_bound_margin.to_bits(),
            b.worst_bound_margin.to_bits()
        );
        assert_eq!(a.violations, 0);
        assert_eq!(a.equality_inconsistencies, 0);
        assert!(a.worst_bound_margin >= -1e-9);
    }

    #[test]
    fn verify_battery_rejects_odd_dimensions() {
        let dims = vec![DimensionPair {
            ambient: 5,
            subspace: 2,
        }];
        assert!(verify_battery(0, 1, &dims).is_err());
    }

    #[test]
    fn parameter_lookup_aliases() {
        let x = dvector(&[3.0, 4.0]);
        assert_eq!(parameter_lookup("u", &x), Some(3.0));
        assert_eq!(parameter_lookup("v", &x), Some(4.0));
        assert_eq!(parameter_lookup("u1", &x), Some(3.0));
        assert_eq!(parameter_lookup("u_2", &x), Some(4.0));
        assert_eq!(parameter_lookup("u3", &x), None);
        assert_eq!(parameter_lookup("w", &x), None);
        assert_eq!(parameter_lookup("u0", &x), None);
    }
}
