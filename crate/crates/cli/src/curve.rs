//! Curve and table files: CSV (header row, 12 significant digits) and JSON
//! (`{meta, support, values}`).

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveMeta {
    pub name: String,
    /// What the support measures: `rank`, `node`, `distance`, `acceptable_rank`.
    pub support: String,
    /// `ccdf` or `pmf`.
    pub quantity: String,
    /// `empirical`, `meanfield`, `exact`, `fluid`, `approx`, or `file`.
    pub source: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    pub meta: CurveMeta,
    pub support: Vec<f64>,
    pub values: Vec<f64>,
}

impl Curve {
    pub fn new(
        name: impl Into<String>,
        support_kind: &str,
        quantity: &str,
        source: &str,
        support: Vec<f64>,
        values: Vec<f64>,
    ) -> Self {
        debug_assert_eq!(support.len(), values.len());
        Curve {
            meta: CurveMeta {
                name: name.into(),
                support: support_kind.into(),
                quantity: quantity.into(),
                source: source.into(),
                params: BTreeMap::new(),
            },
            support,
            values,
        }
    }

    pub fn with_param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.meta.params.insert(key.into(), value.into());
        self
    }

    pub fn with_params(mut self, params: &BTreeMap<String, Value>) -> Self {
        for (k, v) in params {
            self.meta
                .params
                .entry(k.clone())
                .or_insert_with(|| v.clone());
        }
        self
    }

    /// Right-continuous step evaluation: the value at the largest support
    /// point `<= x`, or the first value left of the support.
    pub fn step_at(&self, x: f64) -> f64 {
        let k = self.support.partition_point(|&s| s <= x);
        self.values[k.saturating_sub(1)]
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("{},{}\n", self.meta.support, self.meta.quantity);
        for (s, v) in self.support.iter().zip(&self.values) {
            out.push_str(&format!("{},{}\n", sig12(*s), sig12(*v)));
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        let rounded = Curve {
            meta: self.meta.clone(),
            support: self.support.iter().map(|&x| round12(x)).collect(),
            values: self.values.iter().map(|&x| round12(x)).collect(),
        };
        Ok(serde_json::to_string_pretty(&rounded)? + "\n")
    }

    /// Writes `<dir>/<name>.<ext>` and returns the file name.
    pub fn write(&self, dir: &Path, format: Format) -> Result<String> {
        let file = format!("{}.{}", self.meta.name, format.extension());
        let body = match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json()?,
        };
        let path = dir.join(&file);
        fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
        Ok(file)
    }

    pub fn parse_csv(name: &str, text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().context("empty curve file")?;
        let cols: Vec<&str> = header.split(',').map(str::trim).collect();
        if cols.len() != 2 {
            bail!("curve header must have two columns, found {:?}", cols);
        }
        let mut support = Vec::new();
        let mut values = Vec::new();
        for (row, line) in lines.enumerate() {
            let cells: Vec<&str> = line.split(',').map(str::trim).collect();
            if cells.len() != 2 {
                bail!("row {}: expected 2 cells, found {}", row + 2, cells.len());
            }
            let parse = |c: &str, col: usize| -> Result<f64> {
                c.parse::<f64>().with_context(|| {
                    format!("row {}, column {}: not a number: {c:?}", row + 2, col)
                })
            };
            support.push(parse(cells[0], 1)?);
            values.push(parse(cells[1], 2)?);
        }
        Ok(Curve::new(name, cols[0], cols[1], "file", support, values))
    }

    /// Reads a curve written by [`Curve::write`]; the format follows the
    /// extension.
    pub fn read(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let curve = if path.extension().is_some_and(|e| e == "json") {
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
        } else {
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("curve");
            Curve::parse_csv(stem, &text).with_context(|| format!("parsing {}", path.display()))?
        };
        if curve.support.is_empty() || curve.support.len() != curve.values.len() {
            bail!(
                "{}: support and values must be non-empty and of equal length",
                path.display()
            );
        }
        if curve.support.windows(2).any(|w| w[1] < w[0]) {
            bail!("{}: support is not sorted", path.display());
        }
        Ok(curve)
    }
}

/// A plain table, used for per-instance statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub meta: BTreeMap<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn write(&self, dir: &Path, name: &str, format: Format) -> Result<String> {
        let file = format!("{name}.{}", format.extension());
        let body = match format {
            Format::Csv => {
                let mut out = self.columns.join(",") + "\n";
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(|&v| sig12(v)).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let mut t = self.clone();
                t.rows.iter_mut().flatten().for_each(|v| *v = round12(*v));
                serde_json::to_string_pretty(&t)? + "\n"
            }
        };
        let path: PathBuf = dir.join(&file);
        fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
        Ok(file)
    }
}

/// `x` rounded to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Shortest decimal text of `x` rounded to 12 significant digits.
pub fn sig12(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    format!("{}", round12(x))
}
