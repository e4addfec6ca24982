//! Rendering of command results as CSV or JSON.

use serde::Serialize;
use serde_json::Value;

use crate::config::Format;
use crate::CliError;

#[derive(Clone, Debug)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Bool(bool),
    Text(String),
    /// Exact value, written as compact JSON.
    Exact(Value),
}

impl Cell {
    pub fn exact<T: Serialize>(value: &T) -> Result<Self, CliError> {
        Ok(Cell::Exact(to_value(value)?))
    }

    fn csv_field(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            // 17 significant digits
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(v) => v.clone(),
            Cell::Exact(v) => v.to_string(),
        }
    }
}

pub fn to_value<T: Serialize>(value: &T) -> Result<Value, CliError> {
    serde_json::to_value(value).map_err(|e| CliError::Output(e.to_string()))
}

#[derive(Clone, Debug)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Output(e.to_string());
        writer.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            writer
                .write_record(row.iter().map(Cell::csv_field))
                .map_err(io)?;
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| CliError::Output(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
    }
}

/// A command's result: a flat table for CSV and a full document for JSON.
pub struct Rendered {
    pub table: Table,
    pub document: Value,
}

impl Rendered {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Csv => self.table.to_csv(),
            Format::Json => serde_json::to_string_pretty(&self.document)
                .map(|s| s + "\n")
                .map_err(|e| CliError::Output(e.to_string())),
        }
    }
}
