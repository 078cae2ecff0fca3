//! CSV layouts: curvature profiles, sampled curves, point tables.
//!
//! Numbers are written in plain decimal notation with 12 significant digits and
//! records end in a single `\n`.

use std::fs;
use std::io;
use std::path::Path;

use gauge_curves::{CurvatureProfile, SampledCurve};
use thiserror::Error;

pub const PROFILE_COLUMNS: [&str; 14] = [
    "s", "tau", "x1", "x2", "t1", "t2", "n1", "n2", "l1", "l2", "k_m", "k_n", "k_c", "k_l",
];
pub const CURVE_COLUMNS: [&str; 3] = ["s", "x1", "x2"];

#[derive(Debug, Error)]
pub enum CsvError {
    #[error("nothing to write: {0} is empty")]
    Empty(&'static str),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("csv: {0}")]
    Parse(String),
}

impl From<csv::Error> for CsvError {
    fn from(e: csv::Error) -> Self {
        CsvError::Parse(e.to_string())
    }
}

/// `x` with 12 significant digits in positional notation.
pub fn format_number(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() { "NaN".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    // Round once through the exponent form, then move the decimal point.
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let body = if exp < 0 {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    } else if (exp as usize) + 1 >= digits.len() {
        format!("{}{}", digits, "0".repeat(exp as usize + 1 - digits.len()))
    } else {
        let (int, frac) = digits.split_at(exp as usize + 1);
        format!("{int}.{frac}")
    };
    format!("{sign}{body}")
}

/// A header and numeric rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn to_csv_string(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(|&v| format_number(v))).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    /// Writes to `path`; empty tables are refused before anything touches disk.
    pub fn write(&self, path: &Path, what: &'static str) -> Result<(), CsvError> {
        if self.is_empty() {
            return Err(CsvError::Empty(what));
        }
        fs::write(path, self.to_csv_string()).map_err(|source| CsvError::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

pub fn profile_table(profile: &CurvatureProfile) -> Table {
    let mut t = Table::new(&PROFILE_COLUMNS);
    for s in &profile.samples {
        t.push(vec![
            s.s,
            s.tau,
            s.point.x1,
            s.point.x2,
            s.tangent.x1,
            s.tangent.x2,
            s.right_normal.x1,
            s.right_normal.x2,
            s.left_normal.x1,
            s.left_normal.x2,
            s.k_m,
            s.k_n,
            s.k_c,
            s.k_l,
        ]);
    }
    t
}

pub fn curve_table(curve: &SampledCurve) -> Table {
    let mut t = Table::new(&CURVE_COLUMNS);
    for p in curve.points() {
        t.push(vec![p.s, p.point.x1, p.point.x2]);
    }
    t
}

/// Reads a table written by [`Table::to_csv_string`]: a header row, then rows of
/// the same width holding decimal numbers (`NaN`, `inf`, `-inf` allowed).
pub fn parse_table(text: &str) -> Result<Table, CsvError> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header.is_empty() || header.iter().any(|h| h.is_empty()) {
        return Err(CsvError::Parse("empty column name".into()));
    }
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        if rec.len() != header.len() {
            return Err(CsvError::Parse(format!("row {}: {} fields, expected {}", i + 1, rec.len(), header.len())));
        }
        let row = rec
            .iter()
            .map(|f| {
                f.trim()
                    .parse::<f64>()
                    .map_err(|_| CsvError::Parse(format!("row {}: `{f}` is not a number", i + 1)))
            })
            .collect::<Result<Vec<f64>, _>>()?;
        rows.push(row);
    }
    Ok(Table { header, rows })
}
