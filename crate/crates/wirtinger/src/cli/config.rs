//! JSON job configuration for the `wirtinger` binary.
//!
//! Every invocation reads one JSON document describing the whole job; the
//! command-line flags `--output`, `--format`, `--seed`, and `--tol` override
//! the corresponding fields after loading. See `docs/cli.md` for the schema
//! and a worked example per command.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};

/// Which subcommand the config is written for. The config names the command
/// so a job file is self-describing; the subcommand given on the command
/// line must agree with it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    ValidateStructure,
    Angle,
    Scan,
    Verify,
    Nijenhuis,
}

impl CommandKind {
    pub fn name(&self) -> &'static str {
        match self {
            CommandKind::ValidateStructure => "validate-structure",
            CommandKind::Angle => "angle",
            CommandKind::Scan => "scan",
            CommandKind::Verify => "verify",
            CommandKind::Nijenhuis => "nijenhuis",
        }
    }
}

/// How to build the ambient structure.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum StructureSpec {
    /// The flat structure (G = I, J = J₀) on ℝ^{2n}.
    Standard { n: usize },
    /// A seeded random compatible pair on ℝ^{2n}.
    Random { n: usize, seed: u64 },
    /// The octonionic almost-complex structure of S⁶ at one surface point.
    S6 { point: Vec<f64> },
    /// A named structure field (point-dependent structure over a chart).
    Field {
        name: String,
        #[serde(default)]
        params: Vec<f64>,
    },
}

/// An explicit oriented subspace, given as ordered spanning vectors.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceSpec {
    pub vectors: Vec<Vec<f64>>,
}

/// An immersion chart: either a catalog entry or component expressions in
/// the grid variables `u1 … u{2m}` (aliases `u` = `u1`, `v` = `u2`).
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ChartSpec {
    Catalog {
        catalog: String,
        #[serde(default)]
        params: Vec<f64>,
    },
    Expressions {
        components: Vec<String>,
    },
}

/// One grid axis of a scan.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisConfig {
    pub min: f64,
    pub max: f64,
    pub samples: usize,
}

/// How to differentiate the chart map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JacobianModeConfig {
    CentralDifference,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JacobianConfig {
    pub mode: JacobianModeConfig,
    #[serde(default)]
    pub step: Option<f64>,
}

/// Tolerance overrides; anything omitted keeps its default.
#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceConfig {
    #[serde(default)]
    pub classification: Option<f64>,
}

/// One (ambient, subspace) dimension pair for the verify battery.
#[derive(Debug, Clone, Copy, Deserialize, serde::Serialize)]
#[serde(deny_unknown_fields)]
pub struct DimensionPair {
    /// Ambient dimension 2n (even, ≥ 2).
    pub ambient: usize,
    /// Subspace dimension 2m (even, 2 ≤ 2m ≤ 2n).
    pub subspace: usize,
}

/// One pair of chart directions for a Nijenhuis evaluation.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirectionPair {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

/// Output format for tabulated results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// The top-level job description.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub command: CommandKind,
    #[serde(default)]
    pub structure: Option<StructureSpec>,
    #[serde(default)]
    pub subspace: Option<SubspaceSpec>,
    #[serde(default)]
    pub chart: Option<ChartSpec>,
    #[serde(default)]
    pub grid: Option<Vec<AxisConfig>>,
    #[serde(default)]
    pub jacobian: Option<JacobianConfig>,
    #[serde(default)]
    pub tolerances: Option<ToleranceConfig>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub trials: Option<usize>,
    #[serde(default)]
    pub dimensions: Option<Vec<DimensionPair>>,
    #[serde(default)]
    pub points: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub directions: Option<Vec<DirectionPair>>,
    #[serde(default)]
    pub step: Option<f64>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<OutputFormat>,
}

impl JobConfig {
    /// Loads and parses a job file.
    pub fn load(path: &Path) -> Result<JobConfig> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// The effective tolerance bundle after any overrides.
    pub fn tolerances(&self) -> crate::tolerances::Tolerances {
        match self.tolerances.and_then(|t| t.classification) {
            Some(tol) => crate::tolerances::Tolerances::with_classification(tol),
            None => crate::tolerances::Tolerances::DEFAULT,
        }
    }
}
