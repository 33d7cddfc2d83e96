//! Deterministic output encoding: every floating-point value is printed
//! with 17 significant digits (`{:.16e}`), which round-trips `f64` exactly,
//! so identical jobs produce byte-identical output.

use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter, Serializer};

use crate::charts::{AngleField, FieldPoint};
use crate::error::{Error, Result};

/// Formats one value with 17 significant digits.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// Pretty JSON with full-precision floats: structural layout delegates to
/// the stock pretty-printer, `f64` encoding is overridden.
struct ReportFormatter<'a> {
    pretty: PrettyFormatter<'a>,
}

impl<'a> Formatter for ReportFormatter<'a> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.pretty.begin_array(writer)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.pretty.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.pretty.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.pretty.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.pretty.begin_object(writer)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.pretty.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.pretty.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.pretty.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.pretty.end_object_value(writer)
    }
}

/// Serializes a report to pretty JSON with 17-digit floats (no trailing
/// newline).
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut buffer = Vec::new();
    let formatter = ReportFormatter {
        pretty: PrettyFormatter::new(),
    };
    let mut serializer = Serializer::with_formatter(&mut buffer, formatter);
    value
        .serialize(&mut serializer)
        .map_err(|e| Error::Config(format!("could not serialize report: {e}")))?;
    Ok(String::from_utf8(buffer).expect("JSON output is UTF-8"))
}

/// One scan point as serialized in JSON output.
#[derive(Debug, Serialize)]
pub struct ScanPoint {
    pub params: Vec<f64>,
    pub cos_alpha: Option<f64>,
    pub alpha: Option<f64>,
    pub lambdas: Option<Vec<f64>>,
    pub classification: Option<crate::angle::Classification>,
    pub complexity_residual: Option<f64>,
    pub grad_alpha_norm: Option<f64>,
    pub flags: Vec<&'static str>,
}

impl ScanPoint {
    pub fn from_field_point(point: &FieldPoint) -> ScanPoint {
        ScanPoint {
            params: point.params.clone(),
            cos_alpha: point.report.as_ref().map(|r| r.cos_alpha),
            alpha: point.report.as_ref().map(|r| r.alpha),
            lambdas: point.report.as_ref().map(|r| r.lambdas.clone()),
            classification: point.report.as_ref().map(|r| r.classification),
            complexity_residual: point.report.as_ref().map(|r| r.complexity_residual),
            grad_alpha_norm: point.grad_alpha_norm,
            flags: point.flags.iter().map(|f| f.label()).collect(),
        }
    }
}

/// The full JSON scan document: summary first, then every grid point.
#[derive(Debug, Serialize)]
pub struct ScanDocument {
    pub summary: crate::charts::FieldSummary,
    pub points: Vec<ScanPoint>,
}

/// Renders a scan as CSV: UTF-8, comma-separated, LF line endings, one
/// header row, grid points in row-major order (last axis fastest). Columns
/// are `u_1 … u_{2m}`, `cos_alpha`, `alpha`, `lambda_1 … lambda_m`,
/// `classification`, `grad_alpha_norm`, `flags`; cells of a point whose
/// evaluation produced no report are left empty, and flags are joined
/// with `;`.
pub fn field_to_csv(field: &AngleField) -> String {
    let param_dim = field.axes().len();
    let half = param_dim / 2;
    let mut out = String::new();
    for k in 1..=param_dim {
        out.push_str(&format!("u_{k},"));
    }
    out.push_str("cos_alpha,alpha,");
    for k in 1..=half {
        out.push_str(&format!("lambda_{k},"));
    }
    out.push_str("classification,grad_alpha_norm,flags\n");

    for point in field.points() {
        for value in point.params.iter() {
            out.push_str(&format_float(*value));
            out.push(',');
        }
        match &point.report {
            Some(report) => {
                out.push_str(&format_float(report.cos_alpha));
                out.push(',');
                out.push_str(&format_float(report.alpha));
                out.push(',');
                for lambda in &report.lambdas {
                    out.push_str(&format_float(*lambda));
                    out.push(',');
                }
                out.push_str(&report.classification.to_string());
                out.push(',');
            }
            None => {
                // cos_alpha, alpha, lambda_1..lambda_m, classification
                for _ in 0..(2 + half + 1) {
                    out.push(',');
                }
            }
        }
        if let Some(grad) = point.grad_alpha_norm {
            out.push_str(&format_float(grad));
        }
        out.push(',');
        let labels: Vec<&str> = point.flags.iter().map(|f| f.label()).collect();
        out.push_str(&labels.join(";"));
        out.push('\n');
    }
    out
}

/// Writes `text` to the given path, or to stdout when no path is given.
pub fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => {
            std::fs::write(path, text)?;
            Ok(())
        }
        None => {
            let stdout = io::stdout();
            let mut handle = stdout.lock();
            handle.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}
