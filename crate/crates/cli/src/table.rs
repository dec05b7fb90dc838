//! Streaming CSV / JSON table output with fixed column names.

use std::io::Write;

use crate::args::Format;
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Num(f64),
    Int(usize),
    Bool(bool),
    Text(String),
    Missing,
}

impl Field {
    fn csv(&self) -> String {
        match self {
            // 17 significant digits, enough to round-trip any f64
            Field::Num(v) => format!("{v:.16e}"),
            Field::Int(v) => v.to_string(),
            Field::Bool(v) => v.to_string(),
            Field::Text(s) => s.clone(),
            Field::Missing => String::new(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Field::Num(v) => serde_json::Number::from_f64(*v)
                .map(serde_json::Value::Number)
                .unwrap_or_else(|| serde_json::Value::String(v.to_string())),
            Field::Int(v) => (*v).into(),
            Field::Bool(v) => (*v).into(),
            Field::Text(s) => s.clone().into(),
            Field::Missing => serde_json::Value::Null,
        }
    }
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Num(v)
    }
}

impl From<usize> for Field {
    fn from(v: usize) -> Self {
        Field::Int(v)
    }
}

impl From<bool> for Field {
    fn from(v: bool) -> Self {
        Field::Bool(v)
    }
}

impl From<Option<f64>> for Field {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Field::Missing, Field::Num)
    }
}

enum Sink<W: Write> {
    Csv(Box<csv::Writer<W>>),
    /// JSON array, written one object at a time.
    Json {
        out: W,
        rows: usize,
    },
}

pub struct Table<W: Write> {
    columns: &'static [&'static str],
    sink: Sink<W>,
}

impl<W: Write> Table<W> {
    pub fn new(format: Format, columns: &'static [&'static str], out: W) -> Result<Self, CliError> {
        let sink = match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(columns).map_err(io)?;
                Sink::Csv(Box::new(w))
            }
            Format::Json => Sink::Json { out, rows: 0 },
        };
        Ok(Self { columns, sink })
    }

    pub fn row(&mut self, fields: &[Field]) -> Result<(), CliError> {
        assert_eq!(fields.len(), self.columns.len());
        match &mut self.sink {
            Sink::Csv(w) => w.write_record(fields.iter().map(Field::csv)).map_err(io)?,
            Sink::Json { out, rows } => {
                let obj: serde_json::Map<String, serde_json::Value> = self
                    .columns
                    .iter()
                    .zip(fields)
                    .map(|(c, f)| (c.to_string(), f.json()))
                    .collect();
                out.write_all(if *rows == 0 { b"[\n  " } else { b",\n  " })?;
                serde_json::to_writer(&mut *out, &obj).map_err(io)?;
                *rows += 1;
            }
        }
        Ok(())
    }

    pub fn finish(self) -> Result<(), CliError> {
        match self.sink {
            Sink::Csv(mut w) => w.flush()?,
            Sink::Json { mut out, rows } => {
                out.write_all(if rows == 0 { b"[]\n" } else { b"\n]\n" })?;
                out.flush()?;
            }
        }
        Ok(())
    }
}

fn io(e: impl std::fmt::Display) -> CliError {
    CliError::Io(e.to_string())
}
