//! JSON-lines and TSV record writers.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

pub type Record = Map<String, Value>;

/// Builds a record from `(key, value)` pairs, keeping their order.
#[macro_export]
macro_rules! record {
    ($($key:expr => $value:expr),* $(,)?) => {{
        let mut r = $crate::output::Record::new();
        $(r.insert($key.to_string(), serde_json::json!($value));)*
        r
    }};
}

pub struct Emitter<W: Write> {
    out: W,
    format: Format,
    header: Option<Vec<String>>,
}

impl<W: Write> Emitter<W> {
    pub fn new(out: W, format: Format) -> Self {
        Emitter { out, format, header: None }
    }

    pub fn emit(&mut self, record: &Record) -> io::Result<()> {
        match self.format {
            Format::Json => {
                serde_json::to_writer(&mut self.out, record)?;
                writeln!(self.out)
            }
            Format::Tsv => {
                let keys: Vec<String> = record.keys().cloned().collect();
                if self.header.as_ref() != Some(&keys) {
                    writeln!(self.out, "{}", keys.join("\t"))?;
                    self.header = Some(keys);
                }
                let cells: Vec<String> = record.values().map(cell).collect();
                writeln!(self.out, "{}", cells.join("\t"))
            }
        }
    }

    pub fn raw_line(&mut self, line: &str) -> io::Result<()> {
        writeln!(self.out, "{line}")
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.out.flush()
    }
}

/// Strings are written bare, null as an empty cell, everything else as
/// compact JSON.
fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.replace('\\', "\\\\").replace('\t', "\\t").replace('\n', "\\n"),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}
