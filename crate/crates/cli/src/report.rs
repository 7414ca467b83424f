//! Curve reports (JSON) and the canonical `lambda,precision,recall` CSV.

use std::path::{Path, PathBuf};

use prd_core::{max_f_beta, LambdaGrid, PrdCurve, PrdPoint, DEFAULT_BETA_WEIGHT};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

pub const CSV_HEADER: &str = "lambda,precision,recall";

/// Slack for the line relation and monotonicity when re-validating a report.
pub const REPORT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of_bytes(path: &Path, bytes: &[u8]) -> Self {
        Self {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

/// Everything needed to re-run the computation that produced a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub command: String,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub runs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub run_seeds: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub batch_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub normalize: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub experiment: Option<ExperimentStep>,
    pub inputs: Vec<InputDigest>,
}

/// Position of a report inside a mode-dropping/inventing sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentStep {
    pub step: usize,
    pub reference_classes: Vec<i32>,
    pub model_classes: Vec<i32>,
    pub reference_rows: usize,
    pub model_rows: usize,
    pub split_seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FBetaEntry {
    pub beta: f64,
    pub max_f_beta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveReport {
    pub metadata: Metadata,
    pub max_precision: f64,
    pub max_recall: f64,
    pub tv_at_lambda1: f64,
    pub f_beta: Vec<FBetaEntry>,
    pub lambdas: Vec<f64>,
    pub precision: Vec<f64>,
    pub recall: Vec<f64>,
}

/// `{8, 1/8}` followed by any extra weights not already present.
pub fn beta_weights(extra: &[f64]) -> Vec<f64> {
    let mut out = vec![DEFAULT_BETA_WEIGHT, 1.0 / DEFAULT_BETA_WEIGHT];
    for &b in extra {
        if !out.contains(&b) {
            out.push(b);
        }
    }
    out
}

impl CurveReport {
    pub fn new(
        metadata: Metadata,
        curve: &PrdCurve,
        max_precision: f64,
        max_recall: f64,
        tv_at_lambda1: f64,
        extra_betas: &[f64],
    ) -> CliResult<Self> {
        let f_beta = beta_weights(extra_betas)
            .into_iter()
            .map(|beta| {
                Ok(FBetaEntry {
                    beta,
                    max_f_beta: max_f_beta(curve, beta)?,
                })
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(Self {
            metadata,
            max_precision,
            max_recall,
            tv_at_lambda1,
            f_beta,
            lambdas: curve.lambdas().to_vec(),
            precision: curve.points().iter().map(|p| p.precision).collect(),
            recall: curve.points().iter().map(|p| p.recall).collect(),
        })
    }

    pub fn curve(&self) -> CliResult<PrdCurve> {
        if self.lambdas.len() != self.precision.len() || self.lambdas.len() != self.recall.len() {
            return Err(CliError::Parse(
                "report columns have different lengths".to_string(),
            ));
        }
        let grid = LambdaGrid::from_lambdas(self.lambdas.clone())
            .map_err(|e| CliError::Parse(e.to_string()))?;
        let points = self
            .precision
            .iter()
            .zip(&self.recall)
            .map(|(&p, &r)| PrdPoint::new(p, r))
            .collect();
        PrdCurve::from_parts(grid, points).map_err(|e| CliError::Parse(e.to_string()))
    }

    /// Parses the curve and re-checks its invariants.
    pub fn validated_curve(&self) -> CliResult<PrdCurve> {
        let curve = self.curve()?;
        curve
            .validate(REPORT_TOLERANCE)
            .map_err(|e| CliError::Parse(format!("report fails validation: {e}")))?;
        let in_unit = |v: f64| (0.0..=1.0).contains(&v);
        if !in_unit(self.max_precision) || !in_unit(self.max_recall) || !in_unit(self.tv_at_lambda1)
        {
            return Err(CliError::Parse(
                "report summary values leave [0, 1]".to_string(),
            ));
        }
        Ok(curve)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("malformed report: {e}")))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read report {}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(32 * (self.lambdas.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for ((l, p), r) in self.lambdas.iter().zip(&self.precision).zip(&self.recall) {
            out.push_str(&format!(
                "{},{},{}\n",
                format_sig(*l),
                format_sig(*p),
                format_sig(*r)
            ));
        }
        out
    }
}

/// Where `compute`/`hist` put their outputs: `--out` with any `.json` or
/// `.csv` extension stripped, plus each extension.
pub fn output_paths(out: &Path) -> (PathBuf, PathBuf) {
    let stem = match out.extension().and_then(|e| e.to_str()) {
        Some("json") | Some("csv") => out.with_extension(""),
        _ => out.to_path_buf(),
    };
    let with = |ext: &str| {
        let mut s = stem.clone().into_os_string();
        s.push(".");
        s.push(ext);
        PathBuf::from(s)
    };
    (with("json"), with("csv"))
}

pub const SIGNIFICANT_DIGITS: i32 = 9;

/// Plain decimal notation with nine significant digits.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 {
            "0".to_string()
        } else {
            x.to_string()
        };
    }
    let decimals = |x: f64| (SIGNIFICANT_DIGITS - 1 - x.abs().log10().floor() as i32).max(0);
    let d = decimals(x);
    let s = format!("{:.*}", d as usize, x);
    // Rounding can carry into a new leading digit (9.9999999996 -> 10.00000000).
    let rounded: f64 = s.parse().unwrap();
    if decimals(rounded) < d {
        format!("{:.*}", decimals(rounded) as usize, x)
    } else {
        s
    }
}

/// Inverse of [`CurveReport::to_csv`], for tools that only have the CSV.
pub fn parse_csv(text: &str) -> CliResult<Vec<[f64; 3]>> {
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(CliError::Parse(format!(
            "CSV header must be `{CSV_HEADER}`"
        )));
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 3 {
                return Err(CliError::Parse(format!(
                    "CSV row {} has {} columns",
                    i + 1,
                    cols.len()
                )));
            }
            let mut row = [0.0; 3];
            for (slot, col) in row.iter_mut().zip(cols) {
                *slot = col.parse().map_err(|_| {
                    CliError::Parse(format!("CSV row {}: bad number `{col}`", i + 1))
                })?;
            }
            Ok(row)
        })
        .collect()
}
