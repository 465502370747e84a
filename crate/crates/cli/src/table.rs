use std::fmt::Write as _;

use clap::ValueEnum;
use thiserror::Error;

pub const SWEEP_COLUMNS: [&str; 10] = ["beta", "l", "s", "mu", "nu", "tau", "xi", "E_over_m", "lambda_over_m", "residual"];
pub const DENSITY_COLUMNS: [&str; 2] = ["E_over_m", "density"];
pub const WAVEFUNCTION_COLUMNS: [&str; 3] = ["r_times_m", "f1", "f2"];
pub const AC_COLUMNS: [&str; 8] = ["gamma", "l", "zeta", "coupling", "xi", "E_over_m", "kappa_over_m", "residual"];
pub const ORACLE_COLUMNS: [&str; 7] = ["sector", "index", "xi", "E_analytic_over_m", "E_oracle_over_m", "abs_diff", "match_residual"];

#[derive(Debug, Error)]
pub enum TableError {
    #[error("row {row} has {got} fields, schema has {want}")]
    Width { row: usize, got: usize, want: usize },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
    Text(String),
    Null,
}

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Int(i) => Some(*i as f64),
            Value::Float(v) => Some(*v),
            _ => None,
        }
    }

    fn csv_field(&self) -> String {
        match self {
            Value::Int(i) => i.to_string(),
            Value::Float(v) => {
                let mut s = String::new();
                write!(s, "{v:.16e}").expect("writing to a String");
                s
            }
            Value::Text(t) => t.clone(),
            Value::Null => String::new(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Value::Int(i) => (*i).into(),
            Value::Float(v) => serde_json::Number::from_f64(*v).map_or(serde_json::Value::Null, serde_json::Value::Number),
            Value::Text(t) => t.clone().into(),
            Value::Null => serde_json::Value::Null,
        }
    }

    /// Reads a CSV field back: integers, floats, empty as null, else text.
    fn from_field(s: &str) -> Value {
        if s.is_empty() {
            Value::Null
        } else if let Ok(i) = s.parse::<i64>() {
            Value::Int(i)
        } else if let Ok(v) = s.parse::<f64>() {
            Value::Float(v)
        } else {
            Value::Text(s.to_string())
        }
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

impl From<i32> for Value {
    fn from(v: i32) -> Self {
        Value::Int(v as i64)
    }
}

impl From<Option<f64>> for Value {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Value::Null, Value::Float)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Value>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }
}

/// Serializes a table. CSV: header row, `\n` line endings, floats with 17
/// significant digits. JSON: array of objects keyed by column name.
pub fn emit_table(table: &Table, format: Format) -> Result<Vec<u8>, TableError> {
    let want = table.columns.len();
    if let Some((row, r)) = table.rows.iter().enumerate().find(|(_, r)| r.len() != want) {
        return Err(TableError::Width { row, got: r.len(), want });
    }
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            w.write_record(&table.columns)?;
            for row in &table.rows {
                w.write_record(row.iter().map(Value::csv_field))?;
            }
            w.into_inner().map_err(|e| TableError::Io(e.into_error()))
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = table
                .rows
                .iter()
                .map(|row| {
                    let obj: serde_json::Map<String, serde_json::Value> = table.columns.iter().cloned().zip(row.iter().map(Value::json)).collect();
                    serde_json::Value::Object(obj)
                })
                .collect();
            let mut out = serde_json::to_vec_pretty(&rows)?;
            out.push(b'\n');
            Ok(out)
        }
    }
}

/// Parses CSV produced by [`emit_table`] (or any headed CSV).
pub fn parse_csv_table(bytes: &[u8]) -> Result<Table, TableError> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(bytes);
    let columns: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        rows.push(rec?.iter().map(Value::from_field).collect());
    }
    Ok(Table { columns, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["sector", "index", "x", "n"]);
        t.rows.push(vec![Value::Text("ab".into()), 0.1.into(), (-0.566_001_999_705_411_5).into(), 3i64.into()]);
        t.rows.push(vec![Value::Text("a,c".into()), f64::MIN_POSITIVE.into(), Value::Null, (-1i64).into()]);
        t
    }

    #[test]
    fn csv_layout_and_round_trip() {
        let bytes = emit_table(&sample(), Format::Csv).unwrap();
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert!(text.starts_with("sector,index,x,n\nab,1.0000000000000001e-1,-5.6600199970541154e-1,3\n"));
        assert!(!text.contains('\r'));
        assert_eq!(parse_csv_table(&bytes).unwrap(), sample());
    }

    #[test]
    fn json_keeps_column_order() {
        let text = String::from_utf8(emit_table(&sample(), Format::Json).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let first = v[0].as_object().unwrap();
        assert_eq!(first.keys().collect::<Vec<_>>(), ["sector", "index", "x", "n"]);
        assert_eq!(v[1]["x"], serde_json::Value::Null);
        assert_eq!(v[0]["x"].as_f64().unwrap(), -0.566_001_999_705_411_5);
    }

    #[test]
    fn width_mismatch_is_an_error() {
        let mut t = sample();
        t.rows[1].pop();
        assert!(matches!(emit_table(&t, Format::Csv), Err(TableError::Width { row: 1, got: 3, want: 4 })));
    }
}
