//! Tables written as CSV or JSON with a metadata header.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde_json::{Map, Value};

use crate::config::Format;
use crate::error::{CliError, CliResult};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub enum Column {
    Int(Vec<i64>),
    Real(Vec<f64>),
    Text(Vec<String>),
}

impl Column {
    pub fn len(&self) -> usize {
        match self {
            Column::Int(v) => v.len(),
            Column::Real(v) => v.len(),
            Column::Text(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn cell(&self, row: usize) -> String {
        match self {
            Column::Int(v) => v[row].to_string(),
            Column::Real(v) => format_real(v[row]),
            Column::Text(v) => v[row].clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Column::Int(v) => Value::from(v.clone()),
            // NaN and infinities become null
            Column::Real(v) => Value::Array(v.iter().map(|&x| Value::from(x)).collect()),
            Column::Text(v) => Value::from(v.clone()),
        }
    }
}

/// 17 significant digits, enough to round-trip any f64.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Named columns of equal length plus ordered key/value metadata.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    metadata: Vec<(String, String)>,
    names: Vec<String>,
    columns: Vec<Column>,
}

impl Table {
    pub fn new(title: &str) -> Table {
        let mut t = Table::default();
        t.meta("table", title);
        t.meta("version", format!("rmscat {VERSION}"));
        t
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) -> &mut Table {
        self.metadata.push((key.to_string(), value.to_string()));
        self
    }

    pub fn metadata(&self) -> &[(String, String)] {
        &self.metadata
    }

    /// Panics if the column length differs from earlier columns.
    pub fn column(&mut self, name: &str, column: Column) -> &mut Table {
        if let Some(first) = self.columns.first() {
            assert_eq!(first.len(), column.len(), "column {name} has the wrong length");
        }
        self.names.push(name.to_string());
        self.columns.push(column);
        self
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn get(&self, name: &str) -> Option<&Column> {
        self.names.iter().position(|n| n == name).map(|i| &self.columns[i])
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, Column::len)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (k, v) in &self.metadata {
            writeln!(out, "# {k}: {v}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.names)?;
        for row in 0..self.rows() {
            w.write_record(self.columns.iter().map(|c| c.cell(row)))?;
        }
        w.flush()
    }

    pub fn to_json(&self) -> Value {
        let metadata: Map<String, Value> =
            self.metadata.iter().map(|(k, v)| (k.clone(), Value::from(v.as_str()))).collect();
        let columns: Map<String, Value> =
            self.names.iter().zip(&self.columns).map(|(n, c)| (n.clone(), c.to_json())).collect();
        let mut root = Map::new();
        root.insert("metadata".into(), Value::Object(metadata));
        root.insert("column_order".into(), Value::from(self.names.clone()));
        root.insert("columns".into(), Value::Object(columns));
        Value::Object(root)
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut out, &self.to_json())?;
        writeln!(out)
    }

    pub fn write_to<W: Write>(&self, format: Format, out: W) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    /// Writes to `path`, or stdout when `None`.
    pub fn emit(&self, format: Format, path: Option<&Path>) -> CliResult<()> {
        match path {
            Some(path) => {
                let io = |source| CliError::Io { path: path.to_path_buf(), source };
                let file = File::create(path).map_err(io)?;
                let mut w = BufWriter::new(file);
                self.write_to(format, &mut w).map_err(io)?;
                w.flush().map_err(io)
            }
            None => {
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                match self.write_to(format, &mut lock) {
                    // a closed reader (e.g. `| head`) is not an error
                    Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                    r => r.map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
                }
            }
        }
    }
}
