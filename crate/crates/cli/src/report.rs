//! Output documents and their JSON, CSV and text renderings.

use std::collections::BTreeMap;
use std::io::{self, Write};

use num_rational::BigRational;
use serde::Serialize;

use mtorus_core::{ComplexVal, PartitionResult};

use crate::args::Format;

/// Exact rationals are always rendered as `num/den`, integers included.
pub fn rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[derive(Debug, Serialize)]
pub struct ValueRecord {
    pub formula: String,
    pub group: String,
    pub monodromy: String,
    pub k: i64,
    pub r: i64,
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
    pub term_count: u64,
}

impl From<&PartitionResult> for ValueRecord {
    fn from(p: &PartitionResult) -> Self {
        ValueRecord {
            formula: p.formula.to_string(),
            group: p.group.clone(),
            monodromy: p.monodromy.clone(),
            k: p.level.k,
            r: p.level.r,
            re: p.value.re,
            im: p.value.im,
            modulus: p.value.norm(),
            term_count: p.term_count,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FixedPointRecord {
    pub w_index: usize,
    pub det_w: i8,
    pub lam: Vec<String>,
    pub a_point: Vec<String>,
    pub cs: String,
    pub eps: i8,
    pub absdet: String,
}

#[derive(Debug, Serialize)]
pub struct SuiteRecord {
    pub suite: String,
    pub passed: bool,
    pub cases: usize,
    pub failed: usize,
    pub max_residual: f64,
    pub failures: Vec<String>,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Record {
    Value(ValueRecord),
    FixedPoint(FixedPointRecord),
    Suite(SuiteRecord),
}

/// A comparison between two computed values. `predicted` is the phase the
/// ratio `lhs/rhs` should have; `sign` is the global sign that fits.
#[derive(Debug, Serialize)]
pub struct ComparisonRecord {
    pub kind: String,
    pub lhs: String,
    pub rhs: String,
    pub k: i64,
    pub predicted_re: f64,
    pub predicted_im: f64,
    pub ratio_re: Option<f64>,
    pub ratio_im: Option<f64>,
    pub sign: Option<i8>,
    pub residual: f64,
    #[serde(rename = "match")]
    pub matches: bool,
}

impl ComparisonRecord {
    pub fn new(kind: &str, lhs: &str, rhs: &str, k: i64, predicted: ComplexVal) -> Self {
        ComparisonRecord {
            kind: kind.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            k,
            predicted_re: predicted.re,
            predicted_im: predicted.im,
            ratio_re: None,
            ratio_im: None,
            sign: None,
            residual: 0.0,
            matches: false,
        }
    }
}

#[derive(Debug, Default, Serialize)]
pub struct Report {
    pub input: BTreeMap<String, serde_json::Value>,
    pub results: Vec<Record>,
    pub comparisons: Vec<ComparisonRecord>,
    pub residuals: BTreeMap<String, f64>,
}

impl Report {
    pub fn input(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.input.insert(key.into(), value.into());
    }

    /// Keep the running maximum of a named residual.
    pub fn residual(&mut self, key: &str, value: f64) {
        let slot = self.residuals.entry(key.into()).or_insert(0.0);
        if value > *slot || value.is_nan() {
            *slot = value;
        }
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)
            }
            Format::Csv => self.write_csv(out),
            Format::Text => self.write_text(out),
        }
    }

    fn tables(&self) -> Vec<(Vec<&'static str>, Vec<Vec<String>>)> {
        let mut values = Vec::new();
        let mut points = Vec::new();
        let mut suites = Vec::new();
        for r in &self.results {
            match r {
                Record::Value(v) => values.push(vec![
                    v.formula.clone(),
                    v.group.clone(),
                    v.monodromy.clone(),
                    v.k.to_string(),
                    v.r.to_string(),
                    fmt_f(v.re),
                    fmt_f(v.im),
                    fmt_f(v.modulus),
                    v.term_count.to_string(),
                ]),
                Record::FixedPoint(f) => points.push(vec![
                    f.w_index.to_string(),
                    f.det_w.to_string(),
                    f.lam.join(" "),
                    f.a_point.join(" "),
                    f.cs.clone(),
                    f.eps.to_string(),
                    f.absdet.clone(),
                ]),
                Record::Suite(s) => suites.push(vec![
                    s.suite.clone(),
                    if s.passed { "pass" } else { "fail" }.to_string(),
                    s.cases.to_string(),
                    s.failed.to_string(),
                    format!("{:.3e}", s.max_residual),
                ]),
            }
        }
        let mut out = Vec::new();
        if !values.is_empty() {
            out.push((
                vec!["formula", "group", "monodromy", "k", "r", "re", "im", "modulus", "term_count"],
                values,
            ));
        }
        if !points.is_empty() {
            out.push((vec!["w_index", "det_w", "lam", "a_point", "cs", "eps", "absdet"], points));
        }
        if !suites.is_empty() {
            out.push((vec!["suite", "status", "cases", "failed", "max_residual"], suites));
        }
        out
    }

    fn write_csv(&self, out: &mut impl Write) -> io::Result<()> {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
        for (headers, rows) in self.tables() {
            w.write_record(&headers)?;
            for row in rows {
                w.write_record(&row)?;
            }
        }
        w.flush()
    }

    fn write_text(&self, out: &mut impl Write) -> io::Result<()> {
        for (key, value) in &self.input {
            writeln!(out, "{key}: {value}")?;
        }
        for (headers, rows) in self.tables() {
            writeln!(out)?;
            let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
            for row in &rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let line = |cells: Vec<&str>| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            writeln!(out, "{}", line(headers.clone()).trim_end())?;
            for row in &rows {
                writeln!(out, "{}", line(row.iter().map(String::as_str).collect()).trim_end())?;
            }
        }
        if !self.comparisons.is_empty() {
            writeln!(out)?;
            for c in &self.comparisons {
                writeln!(
                    out,
                    "{} k={} {} vs {}: {} (sign {}, residual {:.3e})",
                    c.kind,
                    c.k,
                    c.lhs,
                    c.rhs,
                    if c.matches { "match" } else { "MISMATCH" },
                    c.sign.map_or("-".to_string(), |s| s.to_string()),
                    c.residual
                )?;
            }
        }
        for (key, value) in &self.residuals {
            writeln!(out, "max {key}: {value:.3e}")?;
        }
        Ok(())
    }
}

fn fmt_f(x: f64) -> String {
    let s = format!("{x:.12}");
    // Rounding can leave "-0.000000000000".
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}
