//! Quantizing two sample sets into a shared finite state space and
//! comparing the resulting cluster histograms.
//!
//! Nothing in this module looks at [`FeatureSet::labels`].

mod features;
mod kmeans;

pub use features::FeatureSet;
pub use kmeans::{
    assign, minibatch_kmeans, ClusterModel, DEFAULT_BATCH_SIZE, DEFAULT_CLUSTERS,
    DEFAULT_ITERATIONS,
};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::{prd_curve, PrdCurve};
use crate::distribution::{max_precision, max_recall, tv_distance, DiscreteDistribution};
use crate::error::{check_same_size, domain, Result};
use crate::grid::DEFAULT_RESOLUTION;

pub const DEFAULT_RUNS: usize = 10;

/// Cluster histograms of the reference (`p`) and model (`q`) samples.
#[derive(Debug, Clone, PartialEq)]
pub struct HistogramPair {
    pub p_hist: DiscreteDistribution,
    pub q_hist: DiscreteDistribution,
}

/// Histograms of cluster occupancy for both sample sets under `model`.
/// Clusters that receive no points keep a zero entry.
pub fn build_histograms(
    real: &FeatureSet,
    generated: &FeatureSet,
    model: &ClusterModel,
) -> Result<HistogramPair> {
    if real.is_empty() || generated.is_empty() {
        return Err(domain("both sample sets must be non-empty"));
    }
    check_same_size(real.dim(), model.dim())?;
    check_same_size(generated.dim(), model.dim())?;
    let counts = |set: &FeatureSet| -> Result<Vec<usize>> {
        let mut counts = vec![0; model.k()];
        for j in assign(model, set)? {
            counts[j] += 1;
        }
        Ok(counts)
    };
    Ok(HistogramPair {
        p_hist: DiscreteDistribution::from_counts(&counts(real)?)?,
        q_hist: DiscreteDistribution::from_counts(&counts(generated)?)?,
    })
}

/// Knobs of the sample-based pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusteringConfig {
    pub k: usize,
    pub runs: usize,
    pub resolution: usize,
    pub batch_size: usize,
    pub iterations: usize,
    pub seed: u64,
}

impl Default for ClusteringConfig {
    fn default() -> Self {
        Self {
            k: DEFAULT_CLUSTERS,
            runs: DEFAULT_RUNS,
            resolution: DEFAULT_RESOLUTION,
            batch_size: DEFAULT_BATCH_SIZE,
            iterations: DEFAULT_ITERATIONS,
            seed: 0,
        }
    }
}

impl ClusteringConfig {
    /// Seed of clustering run `run` (1-based).
    pub fn run_seed(&self, run: usize) -> u64 {
        self.seed.wrapping_add(run as u64)
    }
}

/// One clustering run of [`averaged_prd_runs`].
#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringRun {
    pub seed: u64,
    pub histograms: HistogramPair,
    pub curve: PrdCurve,
}

impl ClusteringRun {
    pub fn max_precision(&self) -> Result<f64> {
        max_precision(&self.histograms.p_hist, &self.histograms.q_hist)
    }

    pub fn max_recall(&self) -> Result<f64> {
        max_recall(&self.histograms.p_hist, &self.histograms.q_hist)
    }

    pub fn tv_distance(&self) -> Result<f64> {
        tv_distance(&self.histograms.p_hist, &self.histograms.q_hist)
    }
}

/// Pointwise-averaged curve together with the runs it was averaged from.
#[derive(Debug, Clone, PartialEq)]
pub struct AveragedPrd {
    pub curve: PrdCurve,
    pub runs: Vec<ClusteringRun>,
}

impl AveragedPrd {
    fn mean_of(&self, f: impl Fn(&ClusteringRun) -> Result<f64>) -> Result<f64> {
        let total = self.runs.iter().map(f).sum::<Result<f64>>()?;
        Ok(total / self.runs.len() as f64)
    }

    /// Run-averaged `Q(supp P)`.
    pub fn max_precision(&self) -> Result<f64> {
        self.mean_of(ClusteringRun::max_precision)
    }

    /// Run-averaged `P(supp Q)`.
    pub fn max_recall(&self) -> Result<f64> {
        self.mean_of(ClusteringRun::max_recall)
    }

    pub fn tv_distance(&self) -> Result<f64> {
        self.mean_of(ClusteringRun::tv_distance)
    }
}

/// Clusters the union of both sets `runs` times (seeds `seed+1..=seed+runs`)
/// and averages the resulting curves per grid slope.
///
/// The union is put into canonical row order first, so for a fixed seed the
/// result depends only on the two multisets of rows.
pub fn averaged_prd_runs(
    real: &FeatureSet,
    generated: &FeatureSet,
    config: &ClusteringConfig,
) -> Result<AveragedPrd> {
    if config.runs == 0 {
        return Err(domain("runs must be at least 1"));
    }
    if config.resolution == 0 {
        return Err(domain("grid resolution must be at least 1"));
    }
    let union = real.concat(generated)?.canonical();
    let batch_size = config.batch_size.min(union.len());
    let runs = (1..=config.runs)
        .into_par_iter()
        .map(|run| {
            let seed = config.run_seed(run);
            let model = minibatch_kmeans(&union, config.k, batch_size, config.iterations, seed)?;
            let histograms = build_histograms(real, generated, &model)?;
            let curve = prd_curve(&histograms.p_hist, &histograms.q_hist, config.resolution)?;
            Ok(ClusteringRun {
                seed,
                histograms,
                curve,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let curves: Vec<PrdCurve> = runs.iter().map(|r| r.curve.clone()).collect();
    Ok(AveragedPrd {
        curve: PrdCurve::mean(&curves)?,
        runs,
    })
}

/// [`averaged_prd_runs`] without the per-run detail.
pub fn averaged_prd(
    real: &FeatureSet,
    generated: &FeatureSet,
    config: &ClusteringConfig,
) -> Result<PrdCurve> {
    averaged_prd_runs(real, generated, config).map(|a| a.curve)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(xs: &[f32]) -> FeatureSet {
        let rows: Vec<Vec<f32>> = xs.iter().map(|&x| vec![x]).collect();
        FeatureSet::from_rows(&rows).unwrap()
    }

    #[test]
    fn histograms_count_assignments() {
        let model = ClusterModel::from_centroids(&[vec![0.0], vec![10.0], vec![20.0]]).unwrap();
        let real = line(&[0.1, 0.2, 9.0, 11.0]);
        let gen = line(&[19.0, 0.0]);
        let h = build_histograms(&real, &gen, &model).unwrap();
        assert_eq!(h.p_hist.weights(), &[0.5, 0.5, 0.0]);
        assert_eq!(h.q_hist.weights(), &[0.5, 0.0, 0.5]);
    }

    #[test]
    fn identical_sets_give_identical_histograms() {
        let model = ClusterModel::from_centroids(&[vec![0.0], vec![1.0]]).unwrap();
        let real = line(&[0.1, 0.9, 0.7, 0.2, 0.4]);
        let h = build_histograms(&real, &real, &model).unwrap();
        assert_eq!(h.p_hist, h.q_hist);
    }

    #[test]
    fn histogram_dimension_mismatch() {
        let model = ClusterModel::from_centroids(&[vec![0.0, 0.0]]).unwrap();
        let real = line(&[0.1]);
        assert!(build_histograms(&real, &real, &model).is_err());
    }

    #[test]
    fn averaged_curve_has_grid_length() {
        let real = line(&[0.0, 0.1, 5.0, 5.1, 9.0]);
        let gen = line(&[0.05, 5.05, 9.1]);
        for runs in [1, 3] {
            let config = ClusteringConfig {
                k: 3,
                runs,
                resolution: 11,
                batch_size: 4,
                iterations: 10,
                seed: 7,
            };
            let avg = averaged_prd_runs(&real, &gen, &config).unwrap();
            assert_eq!(avg.curve.len(), 11);
            assert_eq!(avg.runs.len(), runs);
            assert_eq!(avg.runs[0].seed, 8);
        }
    }

    #[test]
    fn averaged_rejects_bad_config() {
        let real = line(&[0.0, 1.0]);
        let config = ClusteringConfig {
            runs: 0,
            k: 1,
            ..ClusteringConfig::default()
        };
        assert!(averaged_prd(&real, &real, &config).is_err());
        let config = ClusteringConfig {
            k: 5,
            ..ClusteringConfig::default()
        };
        assert!(averaged_prd(&real, &line(&[3.0]), &config).is_err());
    }
}
