use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::catalogue::{ParamValue, Params};
use crate::runner::{IdentityReport, Status};
use crate::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Serialize)]
struct JsonEntry<'a> {
    identity: &'a str,
    params: &'a Params,
    residual: Option<f64>,
    threshold: f64,
    pass: Option<bool>,
    ms: Option<f64>,
}

/// JSON array of report objects. With `stable`, `ms` is written as `null`
/// so repeated runs are byte-identical.
pub fn to_json(reports: &[IdentityReport], stable: bool) -> String {
    let entries: Vec<JsonEntry> = reports
        .iter()
        .map(|r| JsonEntry {
            identity: r.identity,
            params: &r.params,
            residual: r.residual,
            threshold: r.threshold,
            pass: r.pass(),
            ms: if stable { None } else { Some(r.ms) },
        })
        .collect();
    if entries.is_empty() {
        return "[]".to_string();
    }
    serde_json::to_string_pretty(&entries).expect("report entries serialize")
}

fn format_params(p: &Params) -> String {
    p.iter()
        .map(|(k, v)| match v {
            ParamValue::Complex([re, im]) if *im == 0.0 => format!("{k}={re:.6}"),
            ParamValue::Complex([re, im]) => format!("{k}={re:.6}{im:+.6}i"),
            ParamValue::Integer(n) => format!("{k}={n}"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Aligned table: identity, point, parameters, residual, threshold, status
/// (and time unless `stable`). Residuals carry 15 significant digits.
pub fn to_text(reports: &[IdentityReport], stable: bool) -> String {
    let mut rows: Vec<Vec<String>> = vec![["identity", "point", "params", "residual", "threshold", "status", "ms"]
        .iter()
        .map(|s| s.to_string())
        .collect()];
    for r in reports {
        let point = if r.attempt == 0 { r.point.to_string() } else { format!("{}.{}", r.point, r.attempt) };
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Excluded => "excluded",
        };
        rows.push(vec![
            r.identity.to_string(),
            point,
            format_params(&r.params),
            r.residual.map_or_else(|| "-".to_string(), |x| format!("{x:.14e}")),
            format!("{:.3e}", r.threshold),
            status.to_string(),
            if stable { "-".to_string() } else { format!("{:.3}", r.ms) },
        ]);
    }
    let columns = if stable { 6 } else { 7 };
    let widths: Vec<usize> =
        (0..columns).map(|j| rows.iter().map(|row| row[j].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in &rows {
        let cells: Vec<String> = (0..columns).map(|j| format!("{:<w$}", row[j], w = widths[j])).collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    let count = |s| reports.iter().filter(|r| r.status == s).count();
    let _ = writeln!(
        out,
        "\n{} passed, {} failed, {} excluded",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Excluded)
    );
    out
}

/// Write the report to `path`, or to standard output when `path` is `None` or `-`.
pub fn emit_report(
    reports: &[IdentityReport],
    format: Format,
    path: Option<&Path>,
    stable: bool,
) -> Result<(), HarnessError> {
    let mut body = match format {
        Format::Text => to_text(reports, stable),
        Format::Json => to_json(reports, stable),
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::write(p, body).map_err(|e| HarnessError::Io { path: p.display().to_string(), source: e })
        }
        _ => std::io::stdout()
            .lock()
            .write_all(body.as_bytes())
            .map_err(|e| HarnessError::Io { path: "<stdout>".into(), source: e }),
    }
}
