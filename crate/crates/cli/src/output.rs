use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

/// A rendered artifact plus the property violations found while computing it.
#[derive(Debug, Default)]
pub struct Report {
    pub body: String,
    pub violations: Vec<String>,
}

impl Report {
    pub fn new(body: String) -> Self {
        Self { body, violations: Vec::new() }
    }

    pub fn flag(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.violations.push(what.into());
        }
    }
}

/// Keys are sorted at every level regardless of serde_json's map feature.
fn sorted(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut entries: Vec<(String, Value)> = m.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, sorted(v))).collect())
        }
        Value::Array(a) => Value::Array(a.into_iter().map(sorted).collect()),
        other => other,
    }
}

pub fn json<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(&sorted(serde_json::to_value(v)?))?;
    s.push('\n');
    Ok(s)
}

/// RFC 4180 CSV with CRLF line ends and a header taken from the row type.
pub fn csv<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = ::csv::WriterBuilder::new().terminator(::csv::Terminator::CRLF).from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::io(e.to_string()))
}

pub fn emit(body: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, body).map_err(|e| CliError::io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes()).and_then(|_| stdout.flush()).map_err(|e| CliError::io(e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_keys_come_out_sorted() {
        let v = serde_json::json!({"b": 1, "a": {"z": [{"y": 0, "x": 1}], "c": null}});
        let s = json(&v).unwrap();
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
        assert!(s.find("\"c\"").unwrap() < s.find("\"z\"").unwrap());
        assert!(s.find("\"x\"").unwrap() < s.find("\"y\"").unwrap());
    }

    #[derive(Serialize)]
    struct Row {
        a: f64,
        #[serde(rename = "H")]
        h: f64,
    }

    #[test]
    fn csv_uses_crlf_and_header() {
        let s = csv(&[Row { a: 0.5, h: 0.25 }]).unwrap();
        assert_eq!(s, "a,H\r\n0.5,0.25\r\n");
    }
}
