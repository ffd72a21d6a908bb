//! Structured experiment reports and their two text serializations.
//!
//! The structured form is TOML with a fixed section and field order; the rows
//! form is comma-separated with one header line. Reals are always written
//! with 15 significant digits.

use std::fmt::Write as _;

use crate::spacetime::Foliation;
use crate::VERSION;

/// Formats a real with 15 significant digits.
pub fn fmt_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.14e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bound {
    AtMost(f64),
    AtLeast(f64),
    GreaterThan(f64),
}

impl Bound {
    pub fn holds(&self, value: f64) -> bool {
        match *self {
            Bound::AtMost(b) => value <= b,
            Bound::AtLeast(b) => value >= b,
            Bound::GreaterThan(b) => value > b,
        }
    }

    fn describe(&self) -> String {
        match *self {
            Bound::AtMost(b) => format!("<= {}", fmt_real(b)),
            Bound::AtLeast(b) => format!(">= {}", fmt_real(b)),
            Bound::GreaterThan(b) => format!("> {}", fmt_real(b)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Threshold {
    pub metric: String,
    pub bound: Bound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Real(x) => fmt_real(*x),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
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

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub name: String,
    /// Resolved parameters, in insertion order.
    pub config: Vec<(String, String)>,
    pub metrics: Vec<(String, f64)>,
    pub thresholds: Vec<Threshold>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Present when the experiment runs along a single foliation.
    pub foliation: Option<Foliation>,
}

impl ExperimentReport {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            config: Vec::new(),
            metrics: Vec::new(),
            thresholds: Vec::new(),
            verdict: Verdict::Fail,
            notes: Vec::new(),
            columns: Vec::new(),
            rows: Vec::new(),
            foliation: None,
        }
    }

    pub fn echo(&mut self, key: &str, value: impl ToString) {
        self.config.push((key.to_string(), value.to_string()));
    }

    pub fn metric(&mut self, name: &str, value: f64) {
        self.metrics.push((name.to_string(), value));
    }

    pub fn expect(&mut self, metric: &str, bound: Bound) {
        self.thresholds.push(Threshold {
            metric: metric.to_string(),
            bound,
        });
    }

    pub fn get(&self, metric: &str) -> Option<f64> {
        self.metrics
            .iter()
            .find(|(name, _)| name == metric)
            .map(|&(_, v)| v)
    }

    /// Checks one threshold; a missing or non-finite metric fails.
    pub fn threshold_holds(&self, t: &Threshold) -> bool {
        self.get(&t.metric)
            .is_some_and(|v| v.is_finite() && t.bound.holds(v))
    }

    /// Recomputes the verdict from metrics and thresholds.
    pub fn finalize(mut self) -> Self {
        let all = !self.thresholds.is_empty()
            && self.thresholds.iter().all(|t| self.threshold_holds(t));
        self.verdict = if all { Verdict::Pass } else { Verdict::Fail };
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_structured(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "experiment = {}", quote(&self.name));
        let _ = writeln!(out, "version = {}", quote(VERSION));
        let _ = writeln!(out, "verdict = {}", quote(self.verdict.as_str()));

        out.push_str("\n[config]\n");
        for (k, v) in &self.config {
            let _ = writeln!(out, "{k} = {}", quote(v));
        }

        out.push_str("\n[metrics]\n");
        for (k, v) in &self.metrics {
            let _ = writeln!(out, "{k} = {}", toml_real(*v));
        }

        out.push_str("\n[thresholds]\n");
        for t in &self.thresholds {
            let status = if self.threshold_holds(t) { "ok" } else { "violated" };
            let _ = writeln!(
                out,
                "{} = {}",
                t.metric,
                quote(&format!("{} ({status})", t.bound.describe()))
            );
        }

        if !self.notes.is_empty() {
            out.push_str("\n[notes]\n");
            let items: Vec<String> = self.notes.iter().map(|n| quote(n)).collect();
            let _ = writeln!(out, "lines = [{}]", items.join(", "));
        }

        if let Some(f) = &self.foliation {
            out.push_str("\n[foliation]\n");
            let _ = writeln!(out, "n_sites = {}", f.n_sites);
            let _ = writeln!(out, "horizon = {}", f.horizon);
            if let Some(seed) = f.seed {
                let _ = writeln!(out, "seed = {seed}");
            }
            let _ = writeln!(out, "steps = \"\"\"\n{}\"\"\"", f.serialize());
        }

        out.push_str("\n[rows]\n");
        let cols: Vec<String> = self.columns.iter().map(|c| quote(c)).collect();
        let _ = writeln!(out, "columns = [{}]", cols.join(", "));
        let _ = writeln!(out, "data = \"\"\"\n{}\"\"\"", self.rows_body());
        out
    }

    fn rows_body(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_rows(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        out.push_str(&self.rows_body());
        out
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let metrics: Vec<String> = self
            .metrics
            .iter()
            .map(|(k, v)| format!("{k}={v:.3e}"))
            .collect();
        format!(
            "{}: {} [{}]",
            self.name,
            self.verdict.as_str(),
            metrics.join(", ")
        )
    }
}

fn toml_real(x: f64) -> String {
    match fmt_real(x).as_str() {
        "nan" => "nan".into(),
        "inf" => "inf".into(),
        "-inf" => "-inf".into(),
        s => s.to_string(),
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_have_fifteen_significant_digits() {
        assert_eq!(fmt_real(1.0), "1.00000000000000e0");
        assert_eq!(fmt_real(-0.000_123_456_789_012_345_6), "-1.23456789012346e-4");
    }

    #[test]
    fn verdict_follows_thresholds() {
        let mut r = ExperimentReport::new("demo");
        r.metric("a", 1e-14);
        r.expect("a", Bound::AtMost(1e-12));
        assert!(r.clone().finalize().passed());
        r.expect("missing", Bound::AtLeast(0.0));
        assert!(!r.finalize().passed());
        let empty = ExperimentReport::new("empty").finalize();
        assert!(!empty.passed());
    }

    #[test]
    fn structured_output_is_valid_toml() {
        let mut r = ExperimentReport::new("demo");
        r.echo("kind", "local");
        r.metric("x", 0.25);
        r.expect("x", Bound::GreaterThan(0.1));
        r.columns = vec!["i".into(), "v".into()];
        r.rows.push(vec![Cell::from(0usize), Cell::from(0.5)]);
        r.notes.push("a \"quoted\" note".into());
        let r = r.finalize();
        let parsed: toml::Table = r.to_structured().parse().unwrap();
        assert_eq!(parsed["verdict"].as_str(), Some("pass"));
        assert_eq!(parsed["metrics"]["x"].as_float(), Some(0.25));
        assert_eq!(r.to_rows(), "i,v\n0,5.00000000000000e-1\n");
    }
}
