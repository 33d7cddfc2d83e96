//! End-to-end tests of the `wirtinger` binary: exit codes, output formats,
//! flag overrides, and byte-level determinism.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn wirtinger() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wirtinger"))
}

fn write_file(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn validate_structure_passes_and_prints_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_file(
        dir.path(),
        "job.json",
        r#"{"command": "validate-structure", "structure": {"type": "random", "n": 4, "seed": 9}}"#,
    );
    let output = wirtinger()
        .arg("validate-structure")
        .arg("--config")
        .arg(&config)
        .output()
        .unwrap();
    let report = stdout_json(&output);
    assert_eq!(report["dim"], 8);
    assert_eq!(report["passes"], true);
    assert!(report["square_residual"].as_f64().unwrap() < 1e-10);
}

#[test]
fn validate_structure_accepts_the_sphere_field() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_file(
        dir.path(),
        "job.json",
        r#"{"command": "validate-structure", "structure": {"type": "field", "name": "s6-orthographic"}}"#,
    );
    let output = wirtinger()
        .arg("validate-structure")
        .arg("--config")
        .arg(&config)
        .output()
        .unwrap();
    let report = stdout_json(&output);
    // The field's structure lives in the 6-dimensional chart coordinates.
    assert_eq!(report["dim"], 6);
    assert_eq!(report["passes"], true);
}

#[test]
fn angle_of_a_slant_plane() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_file(
        dir.path(),
        "job.json",
        r#"{
            "command": "angle",
            "structure": {"type": "standard", "n": 2},
            "subspace": {"vectors": [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, 0.8660254037844386, 0.5, 0.0]
            ]}
        }"#,
    );
    let output = wirtinger()
        .arg("angle")
        .arg("--config")
        .arg(&config)
        .output()
        .unwrap();
    let report = stdout_json(&output);
    let cos_alpha = report["cos_alpha"].as_f64().unwrap();
    assert!((cos_alpha - 3f64.sqrt() / 2.0).abs() < 1e-12);
    assert_eq!(report["classification"], "generic");
    assert!((report["complexity_residual"].as_f64().unwrap() - 0.5).abs() < 1e-10);
}

#[test]
fn tol_flag_loosens_the_classification() {
    let dir = tempfile::tempdir().unwrap();
    // A plane 10⁻³ radians off complex: generic at the default tolerance.
    let config = write_file(
        dir.path(),
        "job.json",
        r#"{
            "command": "angle",
            "structure": {"type": "standard", "n": 2},
            "subspace": {"vectors": [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, 0.9999995000000417, 0.0009999998333333417, 0.0]
            ]}
        }"#,
    );
    let strict = wirtinger()
        .arg("angle")
        .arg("--config")
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(stdout_json(&strict)["classification"], "generic");

    let loose = wirtinger()
        .arg("angle")
        .arg("--config")
        .arg(&config)
        .arg("--tol")
        .arg("1e-5")
        .output()
        .unwrap();
    assert_eq!(stdout_json(&loose)["classification"], "complex");
}

const HOLOMORPHIC_SCAN: &str = r#"{
    "command": "scan",
    "structure": {"type": "standard", "n": 2},
    "chart": {"components": ["u", "v", "u^2 - v^2", "2*u*v"]},
    "grid": [
        {"min": -1.0, "max": 1.0, "samples": 5},
        {"min": -1.0, "max": 1.0, "samples": 5}
    ]
}"#;

#[test]
fn scan_writes_csv_with_the_documented_columns() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_file(dir.path(), "job.json", HOLOMORPHIC_SCAN);
    let csv_path = dir.path().join("field.csv");
    let output = wirtinger()
        .arg("scan")
        .arg("--config")
        .arg(&config)
        .arg("--output")
        .arg(&csv_path)
        .output()
        .unwrap();
    assert!(output.status.success());

    let csv = fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "u_1,u_2,cos_alpha,alpha,lambda_1,classification,grad_alpha_norm,flags"
    );
    assert_eq!(lines.count(), 25);
    assert!(!csv.contains('\r'), "line endings must be bare LF");
    assert!(csv.contains("complex"));
    // 17 significant digits: full-precision mantissas appear.
    assert!(csv.contains("e0,") || csv.contains("e-1,"));

    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("field.summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["points"], 25);
    assert_eq!(summary["classification"]["complex"], 25);
}

#[test]
fn scan_json_format_carries_summary_and_points() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_file(dir.path(), "job.json", HOLOMORPHIC_SCAN);
    let output = wirtinger()
        .arg("scan")
        .arg("--config")
        .arg(&config)
        .arg("--format")
        .arg("json")
        .output()
        .unwrap();
    let document = stdout_json(&output);
    assert_eq!(document["summary"]["points"], 25);
    assert_eq!(document["points"].as_array().unwrap().len(), 25);
    let first = &document["points"][0];
    assert_eq!(first["classification"], "complex");
    assert_eq!(first["flags"][0], "boundary");
}

#[test]
fn scan_reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_file(dir.path(), "job.json", HOLOMORPHIC_SCAN);
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let status = wirtinger()
            .arg("scan")
            .arg("--config")
            .arg(&config)
            .arg("--output")
            .arg(path)
            .status()
            .unwrap();
        assert!(status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(
        fs::read(dir.path().join("a.summary.json")).unwrap(),
        fs::read(dir.path().join("b.summary.json")).unwrap()
    );
}

#[test]
fn scan_of_a_degenerate_immersion_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_file(
        dir.path(),
        "job.json",
        r#"{
            "command": "scan",
            "structure": {"type": "standard", "n": 2},
            "chart": {"components": ["0", "0", "0", "0"]},
            "grid": [
                {"min": -1.0, "max": 1.0, "samples": 3},
                {"min": -1.0, "max": 1.0, "samples": 3}
            ]
        }"#,
    );
    let output = wirtinger()
        .arg("scan")
        .arg("--config")
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3));
}

#[test]
fn verify_is_deterministic_and_clean() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_file(
        dir.path(),
        "job.json",
        r#"{
            "command": "verify",
            "trials": 50,
            "dimensions": [{"ambient": 6, "subspace": 4}]
        }"#,
    );
    let run = |seed: &str| {
        wirtinger()
            .arg("verify")
            .arg("--config")
            .arg(&config)
            .arg("--seed")
            .arg(seed)
            .output()
            .unwrap()
    };
    let first = run("123");
    let second = run("123");
    let other = run("124");
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "same seed, same bytes");
    assert_ne!(first.stdout, other.stdout, "the seed must matter");

    let report = stdout_json(&first);
    assert_eq!(report["violations"], 0);
    assert_eq!(report["equality_inconsistencies"], 0);
    assert_eq!(report["seed"], 123);
    assert!(report["worst_bound_margin"].as_f64().unwrap() >= -1e-9);
}

#[test]
fn nijenhuis_distinguishes_transverse_and_complex_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_file(
        dir.path(),
        "job.json",
        r#"{
            "command": "nijenhuis",
            "structure": {"type": "field", "name": "s6-orthographic"},
            "points": [[0.0, 0.0, 0.0, 0.0, 0.0, 0.0]],
            "directions": [
                {"x": [1, 0, 0, 0, 0, 0], "y": [0, 0, 0, 1, 0, 0]},
                {"x": [1, 0, 0, 0, 0, 0], "y": [0, 0, 0, 0, 0, 1]}
            ]
        }"#,
    );
    let output = wirtinger()
        .arg("nijenhuis")
        .arg("--config")
        .arg(&config)
        .output()
        .unwrap();
    let report = stdout_json(&output);
    let evaluations = report["evaluations"].as_array().unwrap();
    assert_eq!(evaluations.len(), 2);
    assert!((evaluations[0]["norm"].as_f64().unwrap() - 4.0).abs() < 1e-6);
    assert!((evaluations[0]["ratio"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    assert!(evaluations[1]["norm"].as_f64().unwrap() < 1e-6);
}

#[test]
fn nijenhuis_defaults_to_all_coordinate_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_file(
        dir.path(),
        "job.json",
        r#"{
            "command": "nijenhuis",
            "structure": {"type": "field", "name": "flat", "params": [3]},
            "points": [[0.1, 0.2, 0.3, 0.0, 0.0, 0.0]]
        }"#,
    );
    let output = wirtinger()
        .arg("nijenhuis")
        .arg("--config")
        .arg(&config)
        .output()
        .unwrap();
    let report = stdout_json(&output);
    assert_eq!(report["evaluations"].as_array().unwrap().len(), 15);
    for evaluation in report["evaluations"].as_array().unwrap() {
        assert!(evaluation["norm"].as_f64().unwrap() < 1e-9);
    }
}

#[test]
fn mismatched_subcommand_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_file(
        dir.path(),
        "job.json",
        r#"{"command": "verify", "trials": 1, "dimensions": [{"ambient": 4, "subspace": 2}]}"#,
    );
    let output = wirtinger()
        .arg("angle")
        .arg("--config")
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(
        stderr.contains("verify") && stderr.contains("angle"),
        "{stderr}"
    );
}

#[test]
fn malformed_config_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_file(
        dir.path(),
        "job.json",
        r#"{"command": "angle", "structre": {"type": "standard", "n": 1}}"#,
    );
    let output = wirtinger()
        .arg("angle")
        .arg("--config")
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn missing_config_file_exits_one() {
    let output = wirtinger()
        .arg("angle")
        .arg("--config")
        .arg("/nonexistent/job.json")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn expression_errors_carry_byte_offsets() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_file(
        dir.path(),
        "job.json",
        r#"{
            "command": "scan",
            "structure": {"type": "standard", "n": 1},
            "chart": {"components": ["sin(u", "v"]},
            "grid": [
                {"min": 0.0, "max": 1.0, "samples": 3},
                {"min": 0.0, "max": 1.0, "samples": 3}
            ]
        }"#,
    );
    let output = wirtinger()
        .arg("scan")
        .arg("--config")
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("offset 6"), "{stderr}");
}

#[test]
fn help_exits_zero() {
    let output = wirtinger().arg("--help").output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    for command in ["validate-structure", "angle", "scan", "verify", "nijenhuis"] {
        assert!(stdout.contains(command), "help must list `{command}`");
    }
}
