//! Rendering of command results.
//!
//! JSON objects use sorted keys and shortest round-trip number formatting,
//! so re-serializing parsed output reproduces it byte for byte. CSV has a
//! header row and numeric fields only; columns are sorted by name, except in
//! sweeps where the swept parameter comes first. Tables print six
//! significant digits.

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

pub(super) fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => json_line(v),
        Format::Csv => csv(v),
        Format::Table => table(v),
    }
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Full-precision text for a JSON number.
fn number_text(n: &serde_json::Number) -> String {
    n.to_string()
}

/// `%g`-style formatting with six significant digits.
pub(super) fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&exp) {
        let s = format!("{x:.5e}");
        let (mantissa, exponent) = s.split_once('e').expect("exponent form");
        format!("{}e{exponent}", trim_zeros(mantissa))
    } else {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_owned()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => sig6(n.as_f64().unwrap_or(f64::NAN)),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// First field holding an array of objects, if any.
fn row_array(obj: &Map<String, Value>) -> Option<(&String, &Vec<Value>)> {
    obj.iter().find_map(|(k, v)| match v {
        Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => Some((k, items)),
        _ => None,
    })
}

fn numeric_fields(obj: &Map<String, Value>) -> Vec<(&String, &serde_json::Number)> {
    obj.iter()
        .filter_map(|(k, v)| match v {
            Value::Number(n) => Some((k, n)),
            _ => None,
        })
        .collect()
}

fn csv(v: &Value) -> String {
    let Value::Object(obj) = v else {
        return format!("value\n{v}\n");
    };
    let rows: Vec<&Map<String, Value>> = match row_array(obj) {
        Some((_, items)) => items.iter().filter_map(Value::as_object).collect(),
        None => vec![obj],
    };
    let columns: Vec<String> = numeric_fields(rows[0]).into_iter().map(|(k, _)| k.clone()).collect();
    csv_table(&columns, &rows)
}

fn csv_table(columns: &[String], rows: &[&Map<String, Value>]) -> String {
    let mut out = columns.join(",");
    out.push('\n');
    for row in rows {
        let line: Vec<String> = columns
            .iter()
            .map(|c| match row.get(c) {
                Some(Value::Number(n)) => number_text(n),
                _ => String::new(),
            })
            .collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

fn table(v: &Value) -> String {
    let Value::Object(obj) = v else {
        return format!("{}\n", cell(v));
    };
    let width = obj.keys().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for (k, val) in obj {
        match val {
            Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
                out.push_str(&format!("{k}:\n"));
                let rows: Vec<&Map<String, Value>> = items.iter().filter_map(Value::as_object).collect();
                let columns: Vec<String> = rows[0].keys().cloned().collect();
                out.push_str(&aligned(&columns, &rows, "  "));
            }
            Value::Object(_) | Value::Array(_) => {
                out.push_str(&format!("{k:<width$}  {}\n", val));
            }
            _ => out.push_str(&format!("{k:<width$}  {}\n", cell(val))),
        }
    }
    out
}

fn aligned(columns: &[String], rows: &[&Map<String, Value>], indent: &str) -> String {
    let cells: Vec<Vec<String>> =
        rows.iter().map(|r| columns.iter().map(|c| r.get(c).map(cell).unwrap_or_default()).collect()).collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
        .collect();
    let line = |items: Vec<&str>| {
        let parts: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        format!("{indent}{}\n", parts.join("  "))
    };
    let mut out = line(columns.iter().map(String::as_str).collect());
    for r in &cells {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

pub(super) fn render_sweep(name: &str, rows: &[Map<String, Value>], format: Format) -> String {
    let mut columns = vec![name.to_owned()];
    if let Some(first) = rows.first() {
        columns.extend(first.keys().filter(|k| k.as_str() != name).cloned());
    }
    let refs: Vec<&Map<String, Value>> = rows.iter().collect();
    match format {
        Format::Json => json_line(&Value::Array(rows.iter().cloned().map(Value::Object).collect())),
        Format::Csv => csv_table(&columns, &refs),
        Format::Table => aligned(&columns, &refs, ""),
    }
}

/// Pass/fail listing of reproduction checks.
pub(super) fn render_checks(v: &Value) -> String {
    let mut out = String::new();
    let Some(checks) = v.get("checks").and_then(Value::as_array) else {
        return out;
    };
    for c in checks {
        let name = c.get("name").and_then(Value::as_str).unwrap_or("?");
        match c.get("passed").and_then(Value::as_bool) {
            None => out.push_str(&format!("{name}\n")),
            Some(passed) => {
                let status = if passed { "PASS" } else { "FAIL" };
                let detail = c.get("detail").and_then(Value::as_str).unwrap_or("");
                out.push_str(&format!("{status}  {name:<28} {detail}\n"));
            }
        }
    }
    if let Some(all) = v.get("passed").and_then(Value::as_bool) {
        out.push_str(if all { "all checks passed\n" } else { "some checks FAILED\n" });
    }
    out
}
