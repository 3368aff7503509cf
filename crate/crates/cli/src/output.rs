//! Rendering of command results as JSON, CSV or an aligned text table.

use serde::Serialize;
use serde_json::Value;

use crate::config::Format;
use orbwidth::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// A finished command: the JSON document, its tabular view, and whether it
/// counts as success for the exit code.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub table: Table,
    pub ok: bool,
}

impl Report {
    /// Serializes `body` and records `complete` beside its fields.
    pub fn new(body: &impl Serialize, complete: bool, table: Table) -> Result<Self> {
        let mut json = serde_json::to_value(body).map_err(|e| Error::Io(e.to_string()))?;
        if let Value::Object(map) = &mut json {
            map.insert("complete".into(), Value::Bool(complete));
        }
        Ok(Report { json, table, ok: true })
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).map_err(|e| Error::Io(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| Error::Io(e.to_string());
                w.write_record(&self.table.header).map_err(io)?;
                for row in &self.table.rows {
                    w.write_record(row).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
            }
            Format::Table => Ok(aligned(&self.table)),
        }
    }
}

fn aligned(table: &Table) -> String {
    let mut widths: Vec<usize> = table.header.iter().map(|h| h.chars().count()).collect();
    for row in &table.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&table.header);
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    out.push_str(&line(&rule));
    for row in &table.rows {
        out.push_str(&line(row));
    }
    out
}
