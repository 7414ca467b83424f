//! Mode dropping / mode inventing sweep.
//!
//! The reference set holds the held-out half of classes `1..=ref_classes`;
//! model set `i` holds the other half of classes `1..=i`. Recall should fall
//! as `i` drops below `ref_classes` and precision as `i` rises above it.

use std::collections::BTreeSet;

use prd_core::cluster::{averaged_prd_runs, AveragedPrd, ClusteringConfig, FeatureSet};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, CliResult};

/// RNG stream used for the per-class split (clustering uses stream 0).
const SPLIT_STREAM: u64 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct ModeExperimentConfig {
    pub ref_classes: usize,
    pub steps: usize,
    /// Class ids in sweep order; `None` means `0, 1, 2, …`.
    pub class_order: Option<Vec<i32>>,
    pub clustering: ClusteringConfig,
}

/// Held-out ("test") and model ("train") rows of one class.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassSplit {
    pub class: i32,
    pub test: Vec<usize>,
    pub train: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct StepOutcome {
    pub step: usize,
    pub reference_classes: Vec<i32>,
    pub model_classes: Vec<i32>,
    pub reference_rows: Vec<usize>,
    pub model_rows: Vec<usize>,
    pub averaged: AveragedPrd,
}

/// The first `needed` class ids of the sweep, checked against `labels`.
pub fn resolve_classes(
    labels: &[i32],
    needed: usize,
    explicit: Option<&[i32]>,
) -> CliResult<Vec<i32>> {
    let order: Vec<i32> = match explicit {
        Some(ids) => {
            if ids.len() < needed {
                return Err(CliError::Parse(format!(
                    "--classes lists {} ids but the sweep needs {needed}",
                    ids.len()
                )));
            }
            ids[..needed].to_vec()
        }
        None => (0..needed as i32).collect(),
    };
    let present: BTreeSet<i32> = labels.iter().copied().collect();
    let missing: Vec<i32> = order
        .iter()
        .copied()
        .filter(|c| !present.contains(c))
        .collect();
    if !missing.is_empty() {
        return Err(CliError::MissingClasses(missing));
    }
    Ok(order)
}

/// Seeded 50/50 split of each class's rows; the first half (rounded up)
/// is held out as reference data.
pub fn split_classes(labels: &[i32], classes: &[i32], seed: u64) -> Vec<ClassSplit> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(SPLIT_STREAM);
    classes
        .iter()
        .map(|&class| {
            let mut rows: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
            rows.shuffle(&mut rng);
            let train = rows.split_off(rows.len().div_ceil(2));
            let mut test = rows;
            test.sort_unstable();
            let mut train = train;
            train.sort_unstable();
            ClassSplit { class, test, train }
        })
        .collect()
}

pub fn run_mode_experiment(
    data: &FeatureSet,
    config: &ModeExperimentConfig,
) -> CliResult<Vec<StepOutcome>> {
    if config.ref_classes == 0 || config.steps == 0 {
        return Err(CliError::Parse(
            "--ref-classes and --steps must be at least 1".to_string(),
        ));
    }
    let labels = data
        .labels()
        .ok_or_else(|| CliError::Parse("feature file has no label block".to_string()))?;
    let needed = config.ref_classes.max(config.steps);
    let classes = resolve_classes(labels, needed, config.class_order.as_deref())?;
    let splits = split_classes(labels, &classes, config.clustering.seed);

    let gather = |upto: usize, pick: fn(&ClassSplit) -> &Vec<usize>| -> Vec<usize> {
        let mut rows: Vec<usize> = splits[..upto]
            .iter()
            .flat_map(|s| pick(s).iter().copied())
            .collect();
        rows.sort_unstable();
        rows
    };
    let reference_rows = gather(config.ref_classes, |s| &s.test);
    let reference = data.select(&reference_rows)?;

    (1..=config.steps)
        .map(|step| {
            let model_rows = gather(step, |s| &s.train);
            debug_assert!(model_rows
                .iter()
                .all(|r| reference_rows.binary_search(r).is_err()));
            let model = data.select(&model_rows)?;
            let averaged = averaged_prd_runs(&reference, &model, &config.clustering)?;
            Ok(StepOutcome {
                step,
                reference_classes: classes[..config.ref_classes].to_vec(),
                model_classes: classes[..step].to_vec(),
                reference_rows: reference_rows.clone(),
                model_rows,
                averaged,
            })
        })
        .collect()
}
