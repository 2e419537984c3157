//! Typed result tables and their CSV and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{Map, Number, Value as Json};

use crate::config::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnType {
    Int,
    Real,
    Bool,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn column_type(&self) -> ColumnType {
        match self {
            Self::Int(_) => ColumnType::Int,
            Self::Real(_) => ColumnType::Real,
            Self::Bool(_) => ColumnType::Bool,
            Self::Text(_) => ColumnType::Text,
        }
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Self::Int(v)
    }
}

impl From<i32> for Cell {
    fn from(v: i32) -> Self {
        Self::Int(v.into())
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Self::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Self::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Self::Real(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Self::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Self::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Self::Text(v.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("row {row} does not match the column schema: {detail}")]
pub struct SchemaError {
    pub row: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    columns: Vec<(String, ColumnType)>,
    rows: Vec<Vec<Cell>>,
    /// Config echo, version and summary values; sorted by key.
    pub metadata: BTreeMap<String, String>,
}

/// Round to 12 significant digits and print the shortest form of the
/// rounded value; no locale dependence.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let rounded = round12(x);
    if rounded == 0.0 {
        return "0".into();
    }
    let a = rounded.abs();
    if (1e-4..1e15).contains(&a) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl ResultTable {
    pub fn new(columns: &[(&str, ColumnType)]) -> Self {
        Self { columns: columns.iter().map(|(n, t)| (n.to_string(), *t)).collect(), rows: Vec::new(), metadata: BTreeMap::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) -> Result<(), SchemaError> {
        let idx = self.rows.len();
        if row.len() != self.columns.len() {
            return Err(SchemaError { row: idx, detail: format!("{} cells for {} columns", row.len(), self.columns.len()) });
        }
        for (cell, (name, ty)) in row.iter().zip(&self.columns) {
            if cell.column_type() != *ty {
                return Err(SchemaError { row: idx, detail: format!("column {name} expects {ty:?}") });
            }
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.insert(key.to_string(), value.to_string());
    }

    pub fn columns(&self) -> impl Iterator<Item = &str> {
        self.columns.iter().map(|(n, _)| n.as_str())
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|(n, _)| n == name)
    }

    /// Values of a numeric column as reals.
    pub fn reals(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        self.rows
            .iter()
            .map(|r| match r[i] {
                Cell::Real(v) => Some(v),
                Cell::Int(v) => Some(v as f64),
                _ => None,
            })
            .collect()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    fn cell_text(cell: &Cell) -> String {
        match cell {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => fmt_real(*v),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(v) => v.clone(),
        }
    }

    /// `# key = value` metadata lines, a header row, then the data; LF
    /// line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k} = {v}");
        }
        let header: Vec<String> = self.columns.iter().map(|(n, _)| csv_field(n)).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| csv_field(&Self::cell_text(c))).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn cell_json(cell: &Cell) -> Json {
        match cell {
            Cell::Int(v) => Json::from(*v),
            Cell::Real(v) => Number::from_f64(round12(*v)).map_or_else(|| Json::String(fmt_real(*v)), Json::Number),
            Cell::Bool(v) => Json::Bool(*v),
            Cell::Text(v) => Json::String(v.clone()),
        }
    }

    /// Object with `columns`, `metadata` and `rows` (one object per row);
    /// keys sorted, reals rounded to 12 significant digits.
    pub fn to_json(&self) -> String {
        let mut top = Map::new();
        top.insert("columns".into(), Json::Array(self.columns.iter().map(|(n, _)| Json::String(n.clone())).collect()));
        top.insert(
            "metadata".into(),
            Json::Object(self.metadata.iter().map(|(k, v)| (k.clone(), Json::String(v.clone()))).collect()),
        );
        let rows = self
            .rows
            .iter()
            .map(|r| Json::Object(r.iter().zip(&self.columns).map(|(c, (n, _))| (n.clone(), Self::cell_json(c))).collect()))
            .collect();
        top.insert("rows".into(), Json::Array(rows));
        let mut s = serde_json::to_string_pretty(&Json::Object(top)).expect("json values serialise");
        s.push('\n');
        s
    }
}
