//! Text, CSV and JSON renderers. Integers are written in full decimal; JSON
//! carries them as strings so no consumer rounds them through a double.

use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

fn strings<T: ToString>(values: &[T]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

pub fn json_line(value: &Value) -> String {
    let mut s = serde_json::to_string(value).expect("json values always serialize");
    s.push('\n');
    s
}

/// Right-aligned columns separated by two spaces, trailing blanks trimmed.
pub fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:>w$}", w = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// Triangle with `n` down and `k` across.
pub fn triangle<T: ToString>(kind: &str, rows: &[Vec<T>], format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let width = rows.len();
            let mut table = Vec::with_capacity(width + 1);
            let mut header = vec!["n/k".to_string()];
            header.extend((0..width).map(|k| k.to_string()));
            table.push(header);
            for (n, row) in rows.iter().enumerate() {
                let mut line = vec![n.to_string()];
                line.extend(strings(row));
                table.push(line);
            }
            aligned(&table)
        }
        OutputFormat::Csv => {
            let mut out = String::from("n,k,value\n");
            for (n, row) in rows.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    out.push_str(&format!("{n},{k},{}\n", v.to_string()));
                }
            }
            out
        }
        OutputFormat::Json => {
            let rows: Vec<Vec<String>> = rows.iter().map(|r| strings(r)).collect();
            json_line(&json!({ "kind": kind, "rows": rows }))
        }
    }
}

/// Indexed list `(i, value)` with the given index column name.
pub fn indexed<T: ToString>(
    kind: &str,
    index: &str,
    field: &str,
    values: &[T],
    format: OutputFormat,
) -> String {
    match format {
        OutputFormat::Text => {
            let mut table = vec![vec![index.to_string(), "value".to_string()]];
            table.extend(
                values
                    .iter()
                    .enumerate()
                    .map(|(i, v)| vec![i.to_string(), v.to_string()]),
            );
            aligned(&table)
        }
        OutputFormat::Csv => {
            let mut out = format!("{index},value\n");
            for (i, v) in values.iter().enumerate() {
                out.push_str(&format!("{i},{}\n", v.to_string()));
            }
            out
        }
        OutputFormat::Json => json_line(&json!({ "kind": kind, field: strings(values) })),
    }
}
