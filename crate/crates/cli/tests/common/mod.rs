#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use prd_cli::featfile;
use prd_cli::report::CurveReport;
use prd_core::cluster::FeatureSet;
use prd_core::DiscreteDistribution;
use rand::Rng;
use rand_distr::{Distribution, Exp1};

pub fn prd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prd"))
        .args(args)
        .env_remove("PRD_SEED")
        .output()
        .expect("prd binary runs")
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Asserts the documented failure contract and returns the message line.
pub fn expect_failure(out: &Output, code: i32) -> String {
    let err = stderr(out);
    assert_eq!(out.status.code(), Some(code), "stderr: {err}");
    let lines: Vec<&str> = err.lines().collect();
    assert_eq!(lines.len(), 1, "expected one line, got {err:?}");
    assert!(
        lines[0].starts_with(&format!("error_code={code} ")),
        "bad prefix: {}",
        lines[0]
    );
    lines[0].to_string()
}

pub fn write_hist(dir: &Path, name: &str, weights: &[f64]) -> PathBuf {
    let path = dir.join(name);
    let text = serde_json::json!({ "size": weights.len(), "weights": weights }).to_string();
    std::fs::write(&path, text).unwrap();
    path
}

pub fn write_features(dir: &Path, name: &str, set: &FeatureSet) -> PathBuf {
    let path = dir.join(name);
    featfile::write(&path, set).unwrap();
    path
}

pub fn load_report(path: &Path) -> CurveReport {
    CurveReport::load(path).unwrap()
}

pub fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Exponential weights with roughly a third of the states zeroed (one
/// state always survives).
pub fn random_weights<R: Rng>(rng: &mut R, size: usize) -> Vec<f64> {
    let keep = rng.random_range(0..size);
    let raw: Vec<f64> = (0..size)
        .map(|i| {
            if i != keep && rng.random_bool(0.3) {
                0.0
            } else {
                Exp1.sample(rng)
            }
        })
        .collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}

pub fn random_dist<R: Rng>(rng: &mut R, size: usize) -> DiscreteDistribution {
    DiscreteDistribution::from_unnormalized(random_weights(rng, size)).unwrap()
}
