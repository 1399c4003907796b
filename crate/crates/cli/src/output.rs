use std::time::Duration;

use clap::ValueEnum;
use happy_core::Wide;
use serde::Serialize;
use serde_json::{Number, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// One command's result in every rendering.
pub struct Output {
    pub command: &'static str,
    pub params: Value,
    pub result: Value,
    pub text: String,
    /// Header and rows, for commands with a tabular form.
    pub table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    pub exit_code: i32,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: &'static str,
    command: &'static str,
    params: &'a Value,
    result: &'a Value,
    elapsed_ms: u64,
}

impl Output {
    pub fn render(&self, format: Format, elapsed: Duration) -> Result<String, String> {
        match format {
            Format::Text => Ok(self.text.clone()),
            Format::Json => {
                let envelope = Envelope {
                    schema_version: SCHEMA_VERSION,
                    command: self.command,
                    params: &self.params,
                    result: &self.result,
                    elapsed_ms: u64::try_from(elapsed.as_millis()).unwrap_or(u64::MAX),
                };
                serde_json::to_string_pretty(&envelope)
                    .map(|s| s + "\n")
                    .map_err(|e| e.to_string())
            }
            Format::Csv => {
                let (header, rows) = self
                    .table
                    .as_ref()
                    .ok_or_else(|| format!("csv output is not available for `{}`", self.command))?;
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(header).map_err(|e| e.to_string())?;
                for row in rows {
                    w.write_record(row).map_err(|e| e.to_string())?;
                }
                let bytes = w.into_inner().map_err(|e| e.to_string())?;
                String::from_utf8(bytes).map_err(|e| e.to_string())
            }
        }
    }
}

/// A 256-bit value as an exact JSON integer.
pub fn wide_json(v: Wide) -> Value {
    Value::Number(v.to_string().parse::<Number>().expect("decimal integer"))
}

pub fn join<T: ToString>(values: &[T], sep: &str) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}
