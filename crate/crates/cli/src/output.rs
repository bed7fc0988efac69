use serde::Serialize;

use clifford_codes::report::{render_csv, render_table, Check};
use clifford_codes::CycMatrix;

use crate::{Failure, OutputFormat};

/// Pretty JSON with sorted keys.
pub fn json(value: &impl Serialize) -> Result<String, Failure> {
    let v = serde_json::to_value(value).map_err(|e| Failure::Computation(e.to_string()))?;
    let text = serde_json::to_string_pretty(&v).map_err(|e| Failure::Computation(e.to_string()))?;
    Ok(text + "\n")
}

/// Two-column `field, value` listing.
pub fn fields(format: OutputFormat, pairs: &[(&str, String)]) -> String {
    let rows: Vec<Vec<&str>> = pairs.iter().map(|(k, v)| vec![*k, v.as_str()]).collect();
    match format {
        OutputFormat::Csv => render_csv(&["field", "value"], &rows),
        _ => pairs.iter().map(|(k, v)| format!("{k}: {v}\n")).collect(),
    }
}

pub fn checks_table(checks: &[Check]) -> String {
    checks.iter().map(|c| format!("{c}\n")).collect()
}

pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    render_table(headers, rows)
}

pub fn csv(headers: &[&str], rows: &[Vec<String>]) -> String {
    render_csv(headers, rows)
}

/// Dense matrix of exact entries as strings.
pub fn dense(m: &CycMatrix) -> Vec<Vec<String>> {
    (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

pub fn matrix_lines(m: &CycMatrix) -> String {
    let rows = dense(m);
    let width = rows.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
            format!("  [{}]\n", cells.join(" "))
        })
        .collect()
}
