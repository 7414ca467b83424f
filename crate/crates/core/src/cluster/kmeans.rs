//! Mini-batch k-means (Sculley-style per-centre learning rates) with
//! k-means++ seeding.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::features::FeatureSet;
use crate::error::{check_same_size, domain, PrdError, Result};

pub const DEFAULT_CLUSTERS: usize = 20;
pub const DEFAULT_BATCH_SIZE: usize = 1024;
pub const DEFAULT_ITERATIONS: usize = 500;

/// Fitted centroids; points map to the nearest one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterModel {
    centroids: Vec<f64>,
    k: usize,
    dim: usize,
}

impl ClusterModel {
    pub fn from_centroids(centroids: &[Vec<f64>]) -> Result<Self> {
        let k = centroids.len();
        let dim = centroids.first().map_or(0, Vec::len);
        if k == 0 || dim == 0 {
            return Err(domain("model needs at least one non-empty centroid"));
        }
        if let Some(bad) = centroids.iter().find(|c| c.len() != dim) {
            return Err(PrdError::Dimension {
                left: bad.len(),
                right: dim,
            });
        }
        if centroids.iter().flatten().any(|v| !v.is_finite()) {
            return Err(domain("centroids must be finite"));
        }
        Ok(Self {
            centroids: centroids.concat(),
            k,
            dim,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn centroid(&self, j: usize) -> &[f64] {
        &self.centroids[j * self.dim..(j + 1) * self.dim]
    }

    pub fn centroids(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.centroids.chunks_exact(self.dim)
    }

    /// Index of the closest centroid; ties go to the lowest index.
    pub fn nearest(&self, point: &[f32]) -> usize {
        let mut best = 0;
        let mut best_dist = f64::INFINITY;
        for (j, c) in self.centroids().enumerate() {
            let d = squared_distance(point, c);
            if d < best_dist {
                best = j;
                best_dist = d;
            }
        }
        best
    }

    fn centroid_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.centroids[j * self.dim..(j + 1) * self.dim]
    }
}

fn squared_distance(point: &[f32], centroid: &[f64]) -> f64 {
    point
        .iter()
        .zip(centroid)
        .map(|(&x, &c)| {
            let d = f64::from(x) - c;
            d * d
        })
        .sum()
}

/// Nearest-centroid index for every row of `data`.
pub fn assign(model: &ClusterModel, data: &FeatureSet) -> Result<Vec<usize>> {
    check_same_size(data.dim(), model.dim())?;
    Ok((0..data.len())
        .into_par_iter()
        .map(|i| model.nearest(data.row(i)))
        .collect())
}

/// Fits `k` centroids to `data`.
///
/// Seeding is k-means++; each of the `iterations` rounds then draws
/// `batch_size` rows with replacement, assigns them all against the current
/// centroids, and moves each centroid towards its rows with step
/// `1/count`, where `count` is the number of rows it has absorbed so far.
/// A `batch_size` of at least `n` uses every row once per round instead of
/// sampling. The result is a pure function of the arguments.
pub fn minibatch_kmeans(
    data: &FeatureSet,
    k: usize,
    batch_size: usize,
    iterations: usize,
    seed: u64,
) -> Result<ClusterModel> {
    if k == 0 {
        return Err(domain("k must be at least 1"));
    }
    if batch_size == 0 || iterations == 0 {
        return Err(domain("batch size and iteration count must be positive"));
    }
    let n = data.len();
    if n < k {
        return Err(PrdError::InsufficientData { n, k });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut model = kmeans_plus_plus(data, k, &mut rng);
    let mut counts = vec![0u64; k];
    let full_batch = batch_size >= n;
    let mut batch: Vec<usize> = Vec::with_capacity(batch_size.min(n));

    for _ in 0..iterations {
        batch.clear();
        if full_batch {
            batch.extend(0..n);
        } else {
            batch.extend((0..batch_size).map(|_| rng.random_range(0..n)));
        }
        let nearest: Vec<usize> = batch
            .par_iter()
            .map(|&i| model.nearest(data.row(i)))
            .collect();
        for (&i, &j) in batch.iter().zip(&nearest) {
            counts[j] += 1;
            let eta = 1.0 / counts[j] as f64;
            let row = data.row(i);
            for (c, &x) in model.centroid_mut(j).iter_mut().zip(row) {
                *c += eta * (f64::from(x) - *c);
            }
        }
    }
    Ok(model)
}

fn kmeans_plus_plus(data: &FeatureSet, k: usize, rng: &mut ChaCha8Rng) -> ClusterModel {
    let n = data.len();
    let dim = data.dim();
    let mut centroids = Vec::with_capacity(k * dim);
    let first = rng.random_range(0..n);
    centroids.extend(data.row(first).iter().map(|&x| f64::from(x)));

    let mut dist2: Vec<f64> = data
        .rows()
        .map(|r| squared_distance(r, &centroids[..dim]))
        .collect();
    for _ in 1..k {
        let total: f64 = dist2.iter().sum();
        let pick = if total > 0.0 {
            let target = rng.random::<f64>() * total;
            let mut acc = 0.0;
            dist2
                .iter()
                .position(|&d| {
                    acc += d;
                    acc > target
                })
                // rounding can leave `acc` just short of `total`
                .unwrap_or_else(|| dist2.iter().rposition(|&d| d > 0.0).unwrap_or(n - 1))
        } else {
            rng.random_range(0..n)
        };
        let start = centroids.len();
        centroids.extend(data.row(pick).iter().map(|&x| f64::from(x)));
        let newest = &centroids[start..];
        for (d, r) in dist2.iter_mut().zip(data.rows()) {
            *d = d.min(squared_distance(r, newest));
        }
    }
    ClusterModel { centroids, k, dim }
}
