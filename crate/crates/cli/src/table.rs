use std::io::Write;

use serde_json::{json, Map, Value};

use crate::config::{sibling_json, CliResult, Failure, Format, RunConfig};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(usize),
    Num(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) => sci6(*v),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            // Non-finite values have no JSON form and become null.
            Cell::Num(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

/// `d.ddddde±XX`: six significant digits, at least two exponent digits.
pub fn sci6(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let s = format!("{v:.5e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

/// One command result: named columns, rows and free-form metadata.
#[derive(Debug, Clone)]
pub struct Table {
    pub command: &'static str,
    pub metadata: Map<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &'static str, columns: &[&str]) -> Self {
        Table { command, metadata: Map::new(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<Value>) {
        self.metadata.insert(key.to_string(), value.into());
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> CliResult<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Failure::Io(e.to_string());
        w.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).map_err(io)?;
        }
        w.into_inner().map_err(|e| Failure::Io(e.to_string()))
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| Value::Object(self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect()))
            .collect();
        json!({
            "command": self.command,
            "metadata": self.metadata,
            "columns": self.columns,
            "rows": rows,
        })
    }

    /// Writes to the configured output, or stdout. CSV files get a JSON
    /// sibling with full-precision values.
    pub fn emit(&self, cfg: &RunConfig) -> CliResult<()> {
        let json = || serde_json::to_vec_pretty(&self.to_json()).map_err(|e| Failure::Io(e.to_string()));
        let body = match cfg.format {
            Format::Csv => self.to_csv()?,
            Format::Json => json()?,
        };
        match &cfg.output {
            None => std::io::stdout().write_all(&body).map_err(|e| Failure::Io(e.to_string())),
            Some(path) => {
                let write = |p: &std::path::Path, b: &[u8]| std::fs::write(p, b).map_err(|e| Failure::Io(format!("{}: {e}", p.display())));
                write(path, &body)?;
                if cfg.format == Format::Csv {
                    let sibling = sibling_json(path);
                    if sibling != *path {
                        write(&sibling, &json()?)?;
                    }
                }
                Ok(())
            }
        }
    }
}
