//! Report containers shared by all studies: per-cell rows with estimate,
//! Monte-Carlo standard error, oracle value where a closed form exists, and
//! a pass flag where the study defines a tolerance.
//!
//! Serialization is deterministic: column order follows the cell-coordinate
//! order of the rows, floats print in shortest-roundtrip form, and JSON maps
//! are sorted by key, so identical (config, seed) pairs produce byte-identical
//! files.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Current on-disk schema.
pub const SCHEMA_VERSION: u32 = 1;

/// One cell of a study: ordered coordinates plus the measured numbers.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    /// Ordered cell coordinates, e.g. `[("n","100"),("alpha","0.1")]`.
    #[serde(serialize_with = "as_map")]
    pub cell: Vec<(String, String)>,
    pub estimate: f64,
    pub std_error: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

fn as_map<S: serde::Serializer>(
    cell: &[(String, String)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let map: BTreeMap<&str, &str> =
        cell.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
    map.serialize(s)
}

/// A complete study result.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub experiment: String,
    pub seed: u64,
    #[serde(serialize_with = "as_map")]
    pub config: Vec<(String, String)>,
    pub rows: Vec<ReportRow>,
}

/// Output encodings accepted by `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReportFormat::Csv => write!(f, "csv"),
            ReportFormat::Json => write!(f, "json"),
        }
    }
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::InvalidInput(format!(
                "unknown format {other:?}; expected csv or json"
            ))),
        }
    }
}

impl ExperimentReport {
    pub fn new(
        experiment: impl Into<String>,
        seed: u64,
        config: Vec<(String, String)>,
        rows: Vec<ReportRow>,
    ) -> Self {
        ExperimentReport {
            schema_version: SCHEMA_VERSION,
            experiment: experiment.into(),
            seed,
            config,
            rows,
        }
    }

    /// True when no row failed its tolerance (rows without a defined
    /// tolerance do not count against this).
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass != Some(false))
    }

    /// CSV rendering: `#`-prefixed header comments carrying the experiment
    /// id, seed, and config echo, then one line per row. Cell coordinates
    /// become leading columns; rows may use different coordinate sets, in
    /// which case the header is the union in first-seen order and absent
    /// coordinates render empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# experiment={} seed={} schema_version={}\n",
            self.experiment, self.seed, self.schema_version
        ));
        for (k, v) in &self.config {
            out.push_str(&format!("# {k}={v}\n"));
        }
        let mut keys: Vec<&str> = Vec::new();
        for row in &self.rows {
            for (k, _) in &row.cell {
                if !keys.contains(&k.as_str()) {
                    keys.push(k);
                }
            }
        }
        out.push_str("seed");
        for k in &keys {
            out.push(',');
            out.push_str(k);
        }
        out.push_str(",estimate,std_error,oracle,pass\n");
        for row in &self.rows {
            out.push_str(&self.seed.to_string());
            for k in &keys {
                out.push(',');
                if let Some((_, v)) = row.cell.iter().find(|(rk, _)| rk == k) {
                    out.push_str(v);
                }
            }
            out.push_str(&format!(",{},{}", row.estimate, row.std_error));
            out.push(',');
            if let Some(o) = row.oracle {
                out.push_str(&o.to_string());
            }
            out.push(',');
            if let Some(p) = row.pass {
                out.push_str(if p { "true" } else { "false" });
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn render(&self, format: ReportFormat) -> Result<String> {
        match format {
            ReportFormat::Csv => Ok(self.to_csv()),
            ReportFormat::Json => self.to_json(),
        }
    }

    /// Writes to `path`, or to stdout when `path` is `None`.
    pub fn write(&self, path: Option<&Path>, format: ReportFormat) -> Result<()> {
        let body = self.render(format)?;
        match path {
            Some(p) => fs::write(p, body)?,
            None => print!("{body}"),
        }
        Ok(())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(std::io::Error::other(e))
    }
}
