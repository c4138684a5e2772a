use std::fmt::Write as _;

use serde::Serialize;

use super::config::ExperimentConfig;

/// One table cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Float(v) => write!(f, "{v:e}"),
            Cell::Bool(v) => write!(f, "{v}"),
            Cell::Text(v) => write!(f, "{v}"),
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
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

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width differs from header in {}", self.name);
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Header line plus one line per row; text cells containing commas or
    /// quotes are quoted.
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row
                .iter()
                .map(|c| {
                    let s = c.to_string();
                    if s.contains([',', '"', '\n']) {
                        format!("\"{}\"", s.replace('"', "\"\""))
                    } else {
                        s
                    }
                })
                .collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// Whitespace-separated `x y` lines for two numeric columns; rows where
    /// either cell is not numeric are skipped.
    pub fn plot_data(&self, x: &str, y: &str) -> Option<String> {
        let (ix, iy) = (self.column_index(x)?, self.column_index(y)?);
        let num = |c: &Cell| match c {
            Cell::Int(v) => Some(*v as f64),
            Cell::Float(v) if v.is_finite() => Some(*v),
            _ => None,
        };
        let mut out = format!("# {x} {y}\n");
        for row in &self.rows {
            if let (Some(a), Some(b)) = (num(&row[ix]), num(&row[iy])) {
                let _ = writeln!(out, "{a:e} {b:e}");
            }
        }
        Some(out)
    }
}

/// A named assertion with the measured margin (positive means satisfied
/// with room to spare, in the units given by `detail`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub margin: f64,
    pub detail: String,
}

impl Verdict {
    pub fn new(name: impl Into<String>, pass: bool, margin: f64, detail: impl Into<String>) -> Self {
        Verdict { name: name.into(), pass, margin, detail: detail.into() }
    }
}

/// Everything an experiment produces. Serialization is deterministic;
/// wall-clock time is deliberately not part of it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub experiment: &'static str,
    pub version: &'static str,
    pub config_hash: String,
    pub config: ExperimentConfig,
    pub passed: bool,
    pub verdicts: Vec<Verdict>,
    pub notes: Vec<String>,
    pub tables: Vec<Table>,
    /// Column pairs suitable for two-column plot files: (table, x, y).
    pub plots: Vec<(String, String, String)>,
}

impl ExperimentReport {
    pub fn new(config: &ExperimentConfig) -> Self {
        ExperimentReport {
            experiment: config.kind.name(),
            version: env!("CARGO_PKG_VERSION"),
            config_hash: config.hash(),
            config: config.clone(),
            passed: true,
            verdicts: Vec::new(),
            notes: Vec::new(),
            tables: Vec::new(),
            plots: Vec::new(),
        }
    }

    pub fn verdict(&mut self, v: Verdict) {
        self.passed &= v.pass;
        self.verdicts.push(v);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn plot(&mut self, table: &str, x: &str, y: &str) {
        self.plots.push((table.into(), x.into(), y.into()));
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// `(name, pass)` pairs.
    pub fn summary(&self) -> Vec<(&str, bool)> {
        self.verdicts.iter().map(|v| (v.name.as_str(), v.pass)).collect()
    }
}
