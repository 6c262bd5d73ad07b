//! Report envelope and CSV projection helpers.
//!
//! JSON is the single source of truth for every command; CSV files are
//! flat projections for plotting. The envelope is versioned through the
//! `schema` field.

use crate::error::Result;
use serde::Serialize;
use std::io::Write;
use std::path::Path;

pub const SCHEMA: &str = "pmod/1";

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub unix_time: u64,
    pub version: &'static str,
}

impl Meta {
    pub fn now() -> Self {
        Meta {
            unix_time: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

/// Versioned report envelope. Field order is fixed, so serialization is
/// byte-deterministic for deterministic payloads.
#[derive(Debug, Clone, Serialize)]
pub struct Report<T: Serialize> {
    pub schema: &'static str,
    pub command: String,
    pub params: serde_json::Value,
    pub result: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: &str, params: serde_json::Value, result: T, with_meta: bool) -> Self {
        Report {
            schema: SCHEMA,
            command: command.to_string(),
            params,
            result,
            meta: with_meta.then(Meta::now),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Write to the path, or to stdout when no path is given.
    pub fn emit(&self, out: Option<&Path>) -> Result<()> {
        let text = self.to_json()?;
        match out {
            Some(path) => {
                std::fs::write(path, text.as_bytes())?;
            }
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(text.as_bytes())?;
                stdout.write_all(b"\n")?;
            }
        }
        Ok(())
    }
}

/// Minimal CSV writer for numeric tables (no quoting needed).
pub fn write_csv<I>(path: &Path, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut text = String::new();
    text.push_str(&header.join(","));
    text.push('\n');
    for row in rows {
        text.push_str(&row.join(","));
        text.push('\n');
    }
    std::fs::write(path, text.as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_shape_and_meta_toggle() {
        let with = Report::new("x", serde_json::json!({"a": 1}), 42, true);
        let text = with.to_json().unwrap();
        assert!(text.contains("\"schema\": \"pmod/1\""));
        assert!(text.contains("unix_time"));
        let without = Report::new("x", serde_json::json!({}), 42, false);
        assert!(!without.to_json().unwrap().contains("meta"));
    }

    #[test]
    fn csv_rows() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        write_csv(
            &path,
            &["a", "b"],
            vec![vec!["1".to_string(), "2".to_string()]],
        )
        .unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "a,b\n1,2\n");
    }
}
