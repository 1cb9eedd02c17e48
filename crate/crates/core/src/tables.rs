//! Knot tables as JSON lines, and verdict reports.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagrams::{parse_pd, DiagramError, LinkDiagram};
use crate::maximality::MaximalityVerdict;

/// The bundled table: unknot, prime knots through eight crossings and the
/// Perko knot 10_161.
pub const FIXTURE_TABLE: &str = include_str!("../data/knots.jsonl");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotRecord {
    pub name: String,
    pub pd: String,
    pub crossing_number: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unknotting_number: Option<u32>,
    /// For the diagram as given; mirroring flips the sign.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qmax_expected: Option<i64>,
}

impl KnotRecord {
    pub fn diagram(&self) -> Result<LinkDiagram, DiagramError> {
        parse_pd(&self.pd)
    }
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: duplicate knot name {name}")]
    Duplicate { line: usize, name: String },
    #[error("line {line}: {name} declares {declared} crossings but its PD code has {actual}")]
    CrossingMismatch {
        line: usize,
        name: String,
        declared: usize,
        actual: usize,
    },
    #[error("line {line}: {name}: {source}")]
    BadPd {
        line: usize,
        name: String,
        #[source]
        source: DiagramError,
    },
}

/// Parses and validates a table; blank lines are skipped and line numbers
/// in errors count from 1.
pub fn parse_table(text: &str) -> Result<Vec<KnotRecord>, TableError> {
    let mut out = Vec::new();
    let mut names = HashSet::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let r: KnotRecord = serde_json::from_str(raw).map_err(|e| TableError::Parse {
            line,
            msg: e.to_string(),
        })?;
        let d = r.diagram().map_err(|source| TableError::BadPd {
            line,
            name: r.name.clone(),
            source,
        })?;
        if d.crossing_count() != r.crossing_number {
            return Err(TableError::CrossingMismatch {
                line,
                name: r.name,
                declared: r.crossing_number,
                actual: d.crossing_count(),
            });
        }
        if !names.insert(r.name.clone()) {
            return Err(TableError::Duplicate { line, name: r.name });
        }
        out.push(r);
    }
    Ok(out)
}

pub fn load_table(path: impl AsRef<Path>) -> Result<Vec<KnotRecord>, TableError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| TableError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_table(&text)
}

pub fn render_table(records: &[KnotRecord]) -> String {
    records
        .iter()
        .map(|r| serde_json::to_string(r).expect("serializable") + "\n")
        .collect()
}

pub const REPORT_HEADER: &str = "name\tqmax\tc\tsigma\tu\tverdict\tfired";

/// Header line plus one line per verdict, in the given order.
pub fn render_report(verdicts: &[MaximalityVerdict]) -> String {
    let mut out = String::from(REPORT_HEADER);
    out.push('\n');
    for v in verdicts {
        out.push_str(&v.report_line());
        out.push('\n');
    }
    out
}

pub fn render_report_jsonl(verdicts: &[MaximalityVerdict]) -> String {
    verdicts
        .iter()
        .map(|v| serde_json::to_string(v).expect("serializable") + "\n")
        .collect()
}

pub fn save_report(verdicts: &[MaximalityVerdict], path: impl AsRef<Path>) -> std::io::Result<()> {
    fs::write(path, render_report(verdicts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_table_loads() {
        let t = parse_table(FIXTURE_TABLE).unwrap();
        assert!(t.len() >= 20);
        assert!(t.iter().any(|r| r.name == "10_161"));
        assert_eq!(parse_table(&render_table(&t)).unwrap(), t);
    }

    #[test]
    fn table_errors_carry_line_numbers() {
        assert!(parse_table("").unwrap().is_empty());
        let ok = r#"{"name":"3_1","pd":"X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)","crossing_number":3}"#;
        let bad_c = r#"{"name":"x","pd":"X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)","crossing_number":4}"#;
        assert!(matches!(
            parse_table(&format!("{ok}\n\n{bad_c}")),
            Err(TableError::CrossingMismatch { line: 3, .. })
        ));
        assert!(matches!(
            parse_table(&format!("{ok}\n{ok}")),
            Err(TableError::Duplicate { line: 2, .. })
        ));
        assert!(matches!(
            parse_table("{nope"),
            Err(TableError::Parse { line: 1, .. })
        ));
        let bad_pd = r#"{"name":"y","pd":"X(1,2,3)","crossing_number":1}"#;
        assert!(matches!(
            parse_table(bad_pd),
            Err(TableError::BadPd { line: 1, .. })
        ));
    }

    #[test]
    fn empty_report_is_header_only() {
        assert_eq!(render_report(&[]), format!("{REPORT_HEADER}\n"));
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("r.tsv");
        save_report(&[], &p).unwrap();
        assert_eq!(fs::read_to_string(p).unwrap(), format!("{REPORT_HEADER}\n"));
    }
}
