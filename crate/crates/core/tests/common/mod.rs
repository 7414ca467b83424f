#![allow(dead_code)]

use prd_core::DiscreteDistribution;
use rand::Rng;
use rand_distr::{Distribution, Exp1};

/// Dirichlet(1) weights with each state dropped from the support with
/// probability `sparsity` (at least one state always survives).
pub fn sparse_dirichlet<R: Rng>(rng: &mut R, size: usize, sparsity: f64) -> DiscreteDistribution {
    let keep = rng.random_range(0..size);
    let masses: Vec<f64> = (0..size)
        .map(|i| {
            if i != keep && rng.random_bool(sparsity) {
                0.0
            } else {
                Exp1.sample(rng)
            }
        })
        .collect();
    DiscreteDistribution::from_unnormalized(masses).unwrap()
}

/// Supported states carry at least 0.05/size of the mass, so the extreme
/// grid slopes at m = 1001 saturate every min() term.
pub fn bounded_below<R: Rng>(rng: &mut R, size: usize) -> DiscreteDistribution {
    let keep = rng.random_range(0..size);
    let masses: Vec<f64> = (0..size)
        .map(|i| {
            if i != keep && rng.random_bool(0.3) {
                0.0
            } else {
                rng.random_range(0.05..1.0)
            }
        })
        .collect();
    DiscreteDistribution::from_unnormalized(masses).unwrap()
}

pub fn disjoint_pair<R: Rng>(
    rng: &mut R,
    size: usize,
) -> (DiscreteDistribution, DiscreteDistribution) {
    assert!(size >= 2);
    let split = rng.random_range(1..size);
    let p: Vec<f64> = (0..size)
        .map(|i| {
            if i < split {
                rng.random_range(0.01..1.0)
            } else {
                0.0
            }
        })
        .collect();
    let q: Vec<f64> = (0..size)
        .map(|i| {
            if i >= split {
                rng.random_range(0.01..1.0)
            } else {
                0.0
            }
        })
        .collect();
    (
        DiscreteDistribution::from_unnormalized(p).unwrap(),
        DiscreteDistribution::from_unnormalized(q).unwrap(),
    )
}

use prd_core::cluster::FeatureSet;
use rand_distr::StandardNormal;

/// Isotropic Gaussian blobs: `per_class` points around each center with
/// standard deviation `sigma`, labeled by center index.
pub fn blobs<R: Rng>(
    rng: &mut R,
    centers: &[Vec<f32>],
    per_class: usize,
    sigma: f32,
) -> FeatureSet {
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for (c, center) in centers.iter().enumerate() {
        for _ in 0..per_class {
            rows.push(
                center
                    .iter()
                    .map(|&x| x + sigma * rng.sample::<f32, _>(StandardNormal))
                    .collect::<Vec<f32>>(),
            );
            labels.push(c as i32);
        }
    }
    FeatureSet::from_rows(&rows)
        .unwrap()
        .with_labels(labels)
        .unwrap()
}

/// `count` centers `spacing` apart along distinct axes of `dim`-space.
pub fn axis_centers(count: usize, dim: usize, spacing: f32) -> Vec<Vec<f32>> {
    assert!(count <= dim);
    (0..count)
        .map(|c| {
            let mut v = vec![0.0; dim];
            v[c] = spacing / std::f32::consts::SQRT_2;
            v
        })
        .collect()
}

pub fn rows_with_labels(set: &FeatureSet, wanted: &[i32]) -> FeatureSet {
    let labels = set.labels().unwrap();
    let idx: Vec<usize> = (0..set.len())
        .filter(|&i| wanted.contains(&labels[i]))
        .collect();
    set.select(&idx).unwrap()
}
