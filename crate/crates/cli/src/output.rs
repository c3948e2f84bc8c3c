//! Output records: one JSON object per run, or a CSV table.

use serde::Serialize;
use serde_json::{Map, Value};
use std::io::{self, Write};

use crate::args::Format;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A table of rows for CSV output. JSON output embeds it as an array of
/// objects keyed by the header.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl Table {
    pub fn new<S: AsRef<str>>(header: &[S]) -> Self {
        Self {
            header: header.iter().map(|s| s.as_ref().to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let mut obj = Map::new();
                    for (h, c) in self.header.iter().zip(r) {
                        obj.insert(h.clone(), cell_json(c));
                    }
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

fn cell_json(c: &Cell) -> Value {
    match c {
        Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
        Cell::Int(v) => Value::from(*v),
        Cell::Text(s) => Value::from(s.as_str()),
        Cell::Bool(b) => Value::from(*b),
    }
}

/// Shortest string that parses back to the same `f64`.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let a = v.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn csv_field(c: &Cell) -> String {
    match c {
        Cell::Num(v) => format_float(*v),
        Cell::Int(v) => v.to_string(),
        Cell::Bool(b) => b.to_string(),
        Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Cell::Text(s) => s.clone(),
    }
}

/// Scalar results as `key,value` rows; nested objects get dotted keys.
fn push_flat(t: &mut Table, key: &str, v: &Value) {
    let cell = match v {
        Value::Object(m) => {
            for (k, inner) in m {
                push_flat(t, &format!("{key}.{k}"), inner);
            }
            return;
        }
        Value::Number(n) => match n.as_i64() {
            Some(i) if !n.is_f64() => Cell::Int(i),
            _ => Cell::Num(n.as_f64().unwrap_or(f64::NAN)),
        },
        Value::Bool(b) => Cell::Bool(*b),
        Value::String(s) => Cell::Text(s.clone()),
        other => Cell::Text(other.to_string()),
    };
    t.push(vec![Cell::Text(key.into()), cell]);
}

/// What a command produced.
#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub params: Value,
    pub results: Map<String, Value>,
    pub tolerances: Map<String, Value>,
    /// Main table, used as the CSV body and embedded in JSON results.
    pub table: Option<(String, Table)>,
}

impl Report {
    pub fn new<P: Serialize>(command: &str, params: &P) -> Self {
        Self {
            command: command.into(),
            params: serde_json::to_value(params).expect("params serialize"),
            results: Map::new(),
            tolerances: Map::new(),
            table: None,
        }
    }

    pub fn result<V: Serialize>(&mut self, key: &str, v: V) {
        self.results
            .insert(key.into(), serde_json::to_value(v).expect("result serializes"));
    }

    pub fn tolerance(&mut self, key: &str, v: f64) {
        self.tolerances.insert(key.into(), Value::from(v));
    }

    pub fn table(&mut self, key: &str, t: Table) {
        self.table = Some((key.into(), t));
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Json => {
                let mut results = self.results.clone();
                if let Some((k, t)) = &self.table {
                    results.insert(k.clone(), t.to_json());
                }
                let mut rec = Map::new();
                rec.insert("command".into(), Value::from(self.command.as_str()));
                rec.insert("params".into(), self.params.clone());
                rec.insert("results".into(), Value::Object(results));
                rec.insert("tolerances".into(), Value::Object(self.tolerances.clone()));
                rec.insert("version".into(), Value::from(VERSION));
                serde_json::to_writer_pretty(&mut *out, &Value::Object(rec))?;
                writeln!(out)
            }
            Format::Csv => {
                let table = match &self.table {
                    Some((_, t)) => t.clone(),
                    None => {
                        // scalar results as key,value rows
                        let mut t = Table::new(&["key", "value"]);
                        for (k, v) in &self.results {
                            push_flat(&mut t, k, v);
                        }
                        t
                    }
                };
                writeln!(out, "{}", table.header.join(","))?;
                for r in &table.rows {
                    let line: Vec<String> = r.iter().map(csv_field).collect();
                    writeln!(out, "{}", line.join(","))?;
                }
                Ok(())
            }
        }
    }
}
