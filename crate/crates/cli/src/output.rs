//! Table rendering. CSV uses LF line endings and shortest round-trip number
//! formatting, so identical invocations produce byte-identical files; JSON
//! mirrors the same columns as a `rows` array plus a `meta` object.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::config::{Format, RunConfig};
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(&'static str),
    /// Rendered as an empty CSV field / JSON null.
    Missing,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

/// Shortest round-trip decimal; exponent form outside [1e-4, 1e16) so
/// SI-scale values stay readable.
fn render_num(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-4 || v.abs() >= 1e16) {
        format!("{v:e}")
    } else {
        v.to_string()
    }
}

pub fn render_csv(table: &Table) -> String {
    let mut out = table.columns.join(",");
    out.push('\n');
    for row in &table.rows {
        let mut first = true;
        for cell in row {
            if !first {
                out.push(',');
            }
            first = false;
            match cell {
                Cell::Num(v) => out.push_str(&render_num(*v)),
                Cell::Text(s) => out.push_str(s),
                Cell::Missing => {}
            }
        }
        out.push('\n');
    }
    out
}

pub fn render_json(table: &Table, config: &RunConfig) -> String {
    let rows: Vec<serde_json::Value> = table
        .rows
        .iter()
        .map(|row| {
            let mut obj = serde_json::Map::new();
            for (col, cell) in table.columns.iter().zip(row) {
                let value = match cell {
                    Cell::Num(v) => serde_json::Value::from(*v),
                    Cell::Text(s) => serde_json::Value::from(*s),
                    Cell::Missing => serde_json::Value::Null,
                };
                obj.insert((*col).to_string(), value);
            }
            serde_json::Value::Object(obj)
        })
        .collect();
    let doc = serde_json::json!({
        "meta": {
            "seed": config.seed,
            "units": config.constants.mode().name(),
            "version": env!("CARGO_PKG_VERSION"),
        },
        "rows": rows,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("tables are always serializable");
    text.push('\n');
    text
}

fn write_out(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Validation(format!("cannot write to stdout: {e}")))
        }
    }
}

pub fn emit(table: &Table, config: &RunConfig) -> Result<(), CliError> {
    let text = match config.format {
        Format::Csv => render_csv(table),
        Format::Json => render_json(table, config),
    };
    write_out(&text, config.output.as_deref())
}
