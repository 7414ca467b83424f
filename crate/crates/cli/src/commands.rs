//! Subcommand implementations. Every command computes first and writes all
//! of its files at the end.

use std::path::{Path, PathBuf};

use prd_core::cluster::{averaged_prd_runs, ClusteringConfig, FeatureSet};
use prd_core::{
    interpolate_set, max_f_beta, max_precision, max_recall, prd_curve, tv_distance,
    DiscreteDistribution,
};
use serde::Deserialize;

use crate::error::{CliError, CliResult};
use crate::experiment::{run_mode_experiment, ModeExperimentConfig};
use crate::featfile;
use crate::report::{format_sig, output_paths, CurveReport, ExperimentStep, InputDigest, Metadata};
use crate::svg;

/// Largest `|Σ − 1|` accepted from a histogram file without `--normalize`.
pub const HIST_SUM_TOLERANCE: f64 = 1e-6;

fn read_bytes(path: &Path) -> CliResult<Vec<u8>> {
    std::fs::read(path).map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// Reads a feature file, returning the set and its digest.
pub fn load_features(path: &Path) -> CliResult<(FeatureSet, InputDigest)> {
    let bytes = read_bytes(path)?;
    let set = featfile::decode(&bytes)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Ok((set, InputDigest::of_bytes(path, &bytes)))
}

fn clustering_metadata(
    command: &str,
    config: &ClusteringConfig,
    inputs: Vec<InputDigest>,
) -> Metadata {
    Metadata {
        command: command.to_string(),
        m: config.resolution,
        k: Some(config.k),
        runs: Some(config.runs),
        seed: Some(config.seed),
        run_seeds: (1..=config.runs).map(|r| config.run_seed(r)).collect(),
        batch_size: Some(config.batch_size),
        iterations: Some(config.iterations),
        normalize: None,
        experiment: None,
        inputs,
    }
}

/// Report paths written by `compute` and `hist`.
#[derive(Debug, Clone, PartialEq)]
pub struct Written {
    pub json: PathBuf,
    pub csv: PathBuf,
}

fn write_report(report: &CurveReport, out: &Path) -> CliResult<Written> {
    let (json, csv) = output_paths(out);
    let text_json = report.to_json();
    let text_csv = report.to_csv();
    write_file(&json, &text_json)?;
    write_file(&csv, &text_csv)?;
    Ok(Written { json, csv })
}

pub fn compute_report(
    real: &Path,
    generated: &Path,
    config: &ClusteringConfig,
    extra_betas: &[f64],
) -> CliResult<CurveReport> {
    let (real_set, real_digest) = load_features(real)?;
    let (gen_set, gen_digest) = load_features(generated)?;
    if real_set.dim() != gen_set.dim() {
        return Err(CliError::Dimension(format!(
            "feature dimension differs: {} has d={}, {} has d={}",
            real.display(),
            real_set.dim(),
            generated.display(),
            gen_set.dim()
        )));
    }
    let averaged = averaged_prd_runs(&real_set, &gen_set, config)?;
    let meta = clustering_metadata("compute", config, vec![real_digest, gen_digest]);
    CurveReport::new(
        meta,
        &averaged.curve,
        averaged.max_precision()?,
        averaged.max_recall()?,
        averaged.tv_distance()?,
        extra_betas,
    )
}

pub fn cmd_compute(
    real: &Path,
    generated: &Path,
    config: &ClusteringConfig,
    extra_betas: &[f64],
    out: &Path,
) -> CliResult<Written> {
    let report = compute_report(real, generated, config, extra_betas)?;
    write_report(&report, out)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HistogramFile {
    size: usize,
    weights: Vec<f64>,
}

/// Parses a `{"size": k, "weights": [...]}` histogram.
pub fn parse_histogram(
    text: &str,
    origin: &str,
    normalize: bool,
) -> CliResult<DiscreteDistribution> {
    let hist: HistogramFile = serde_json::from_str(text)
        .map_err(|e| CliError::Parse(format!("{origin}: malformed histogram: {e}")))?;
    if hist.size != hist.weights.len() {
        return Err(CliError::Parse(format!(
            "{origin}: size is {} but {} weights are listed",
            hist.size,
            hist.weights.len()
        )));
    }
    if let Some(w) = hist.weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
        return Err(CliError::Parse(format!(
            "{origin}: weight {w} is not a finite non-negative number"
        )));
    }
    let sum: f64 = hist.weights.iter().sum();
    if (sum - 1.0).abs() > HIST_SUM_TOLERANCE && !normalize {
        return Err(CliError::Normalization(format!(
            "{origin}: weights sum to {sum}, pass --normalize to rescale"
        )));
    }
    DiscreteDistribution::from_unnormalized(hist.weights)
        .map_err(|e| CliError::Normalization(format!("{origin}: {e}")))
}

fn load_histogram(path: &Path, normalize: bool) -> CliResult<(DiscreteDistribution, InputDigest)> {
    let bytes = read_bytes(path)?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CliError::Parse(format!("{}: not UTF-8", path.display())))?;
    let dist = parse_histogram(&text, &path.display().to_string(), normalize)?;
    Ok((dist, InputDigest::of_bytes(path, &bytes)))
}

pub fn hist_report(
    p_path: &Path,
    q_path: &Path,
    m: usize,
    normalize: bool,
    extra_betas: &[f64],
) -> CliResult<CurveReport> {
    let (p, p_digest) = load_histogram(p_path, normalize)?;
    let (q, q_digest) = load_histogram(q_path, normalize)?;
    if p.size() != q.size() {
        return Err(CliError::Dimension(format!(
            "histogram sizes differ: {} vs {}",
            p.size(),
            q.size()
        )));
    }
    let curve = prd_curve(&p, &q, m)?;
    let meta = Metadata {
        command: "hist".to_string(),
        m,
        k: None,
        runs: None,
        seed: None,
        run_seeds: Vec::new(),
        batch_size: None,
        iterations: None,
        normalize: Some(normalize),
        experiment: None,
        inputs: vec![p_digest, q_digest],
    };
    CurveReport::new(
        meta,
        &curve,
        max_precision(&p, &q)?,
        max_recall(&p, &q)?,
        tv_distance(&p, &q)?,
        extra_betas,
    )
}

pub fn cmd_hist(
    p_path: &Path,
    q_path: &Path,
    m: usize,
    normalize: bool,
    extra_betas: &[f64],
    out: &Path,
) -> CliResult<Written> {
    let report = hist_report(p_path, q_path, m, normalize, extra_betas)?;
    write_report(&report, out)
}

pub const OVERLAY_HEADER: &str = "step,lambda,precision,recall";
pub const SUMMARY_HEADER: &str =
    "step,model_classes,max_precision,max_recall,tv_at_lambda1,max_f_8,max_f_1/8";

pub fn step_stem(step: usize) -> String {
    format!("step_{step:02}")
}

pub fn mode_experiment_reports(
    labeled: &Path,
    config: &ModeExperimentConfig,
    extra_betas: &[f64],
) -> CliResult<Vec<CurveReport>> {
    let (data, digest) = load_features(labeled)?;
    let outcomes = run_mode_experiment(&data, config)?;
    outcomes
        .iter()
        .map(|o| {
            let mut meta =
                clustering_metadata("mode-experiment", &config.clustering, vec![digest.clone()]);
            meta.experiment = Some(ExperimentStep {
                step: o.step,
                reference_classes: o.reference_classes.clone(),
                model_classes: o.model_classes.clone(),
                reference_rows: o.reference_rows.len(),
                model_rows: o.model_rows.len(),
                split_seed: config.clustering.seed,
            });
            CurveReport::new(
                meta,
                &o.averaged.curve,
                o.averaged.max_precision()?,
                o.averaged.max_recall()?,
                o.averaged.tv_distance()?,
                extra_betas,
            )
        })
        .collect()
}

fn f_entry(report: &CurveReport, beta: f64) -> f64 {
    report
        .f_beta
        .iter()
        .find(|e| e.beta == beta)
        .map(|e| e.max_f_beta)
        .unwrap_or(f64::NAN)
}

pub fn overlay_csv(reports: &[CurveReport]) -> String {
    let mut out = format!("{OVERLAY_HEADER}\n");
    for (i, r) in reports.iter().enumerate() {
        let step = r.metadata.experiment.as_ref().map_or(i + 1, |e| e.step);
        for ((l, p), rc) in r.lambdas.iter().zip(&r.precision).zip(&r.recall) {
            out.push_str(&format!(
                "{step},{},{},{}\n",
                format_sig(*l),
                format_sig(*p),
                format_sig(*rc)
            ));
        }
    }
    out
}

pub fn summary_csv(reports: &[CurveReport]) -> String {
    let mut out = format!("{SUMMARY_HEADER}\n");
    for (i, r) in reports.iter().enumerate() {
        let (step, classes) = match &r.metadata.experiment {
            Some(e) => (e.step, e.model_classes.len()),
            None => (i + 1, 0),
        };
        out.push_str(&format!(
            "{step},{classes},{},{},{},{},{}\n",
            format_sig(r.max_precision),
            format_sig(r.max_recall),
            format_sig(r.tv_at_lambda1),
            format_sig(f_entry(r, 8.0)),
            format_sig(f_entry(r, 0.125)),
        ));
    }
    out
}

pub fn cmd_mode_experiment(
    labeled: &Path,
    config: &ModeExperimentConfig,
    extra_betas: &[f64],
    out_dir: &Path,
) -> CliResult<Vec<CurveReport>> {
    let reports = mode_experiment_reports(labeled, config, extra_betas)?;
    for r in &reports {
        let step = r.metadata.experiment.as_ref().map_or(0, |e| e.step);
        write_report(r, &out_dir.join(step_stem(step)))?;
    }
    write_file(&out_dir.join("overlay.csv"), &overlay_csv(&reports))?;
    write_file(&out_dir.join("summary.csv"), &summary_csv(&reports))?;
    Ok(reports)
}

pub const FBETA_HEADER: &str = "id,f_beta,f_inv_beta";

#[derive(Debug, Clone, PartialEq)]
pub struct FBetaRow {
    pub id: String,
    pub f_beta: f64,
    pub f_inv_beta: f64,
}

fn report_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

pub fn fbeta_rows(reports: &[PathBuf], beta: f64) -> CliResult<Vec<FBetaRow>> {
    if reports.is_empty() {
        return Err(CliError::Parse(
            "fbeta needs at least one report".to_string(),
        ));
    }
    if !(beta.is_finite() && beta > 0.0) {
        return Err(CliError::Parse(format!(
            "--beta must be positive, got {beta}"
        )));
    }
    reports
        .iter()
        .map(|path| {
            let curve = CurveReport::load(path)?
                .validated_curve()
                .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
            Ok(FBetaRow {
                id: report_id(path),
                f_beta: max_f_beta(&curve, beta)?,
                f_inv_beta: max_f_beta(&curve, 1.0 / beta)?,
            })
        })
        .collect()
}

pub fn fbeta_csv(rows: &[FBetaRow]) -> String {
    let mut out = format!("{FBETA_HEADER}\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{}\n",
            r.id,
            format_sig(r.f_beta),
            format_sig(r.f_inv_beta)
        ));
    }
    out
}

/// Scatter with the recall-weighted score on x and the precision-weighted
/// score on y, so recall-biased models fall below the diagonal.
pub fn fbeta_svg(rows: &[FBetaRow], beta: f64) -> String {
    let points: Vec<(f64, f64, String)> = rows
        .iter()
        .map(|r| {
            if beta >= 1.0 {
                (r.f_beta, r.f_inv_beta, r.id.clone())
            } else {
                (r.f_inv_beta, r.f_beta, r.id.clone())
            }
        })
        .collect();
    let hi = beta.max(1.0 / beta);
    svg::render_scatter(
        &points,
        &format!("max F_{}", format_weight(hi)),
        &format!("max F_1/{}", format_weight(hi)),
    )
}

fn format_weight(w: f64) -> String {
    if w.fract() == 0.0 {
        format!("{w:.0}")
    } else {
        w.to_string()
    }
}

pub fn cmd_fbeta(
    reports: &[PathBuf],
    beta: f64,
    out: &Path,
    plot: Option<&Path>,
) -> CliResult<Vec<FBetaRow>> {
    let rows = fbeta_rows(reports, beta)?;
    let csv = fbeta_csv(&rows);
    let plot_text = plot.map(|_| fbeta_svg(&rows, beta));
    write_file(out, &csv)?;
    if let (Some(path), Some(text)) = (plot, plot_text) {
        write_file(path, &text)?;
    }
    Ok(rows)
}

pub fn plot_svg(report_path: &Path) -> CliResult<String> {
    let curve = CurveReport::load(report_path)?.validated_curve()?;
    let polygon = interpolate_set(&curve)?;
    Ok(svg::render_region(&polygon, &report_id(report_path)))
}

pub fn cmd_plot(report_path: &Path, out: &Path) -> CliResult<()> {
    let text = plot_svg(report_path)?;
    write_file(out, &text)
}
