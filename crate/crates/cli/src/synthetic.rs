//! Labeled Gaussian blob fixtures with a known class structure.

use prd_core::cluster::FeatureSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlobSpec {
    pub classes: usize,
    pub per_class: usize,
    pub dim: usize,
    /// Distance between any two class centers.
    pub separation: f32,
    pub sigma: f32,
    pub seed: u64,
}

impl Default for BlobSpec {
    fn default() -> Self {
        Self {
            classes: 10,
            per_class: 1000,
            dim: 16,
            separation: 40.0,
            sigma: 1.0,
            seed: 0,
        }
    }
}

/// Centers on distinct coordinate axes, pairwise `separation` apart.
pub fn centers(spec: &BlobSpec) -> Vec<Vec<f32>> {
    assert!(spec.classes <= spec.dim, "one axis per class");
    let radius = spec.separation / std::f32::consts::SQRT_2;
    (0..spec.classes)
        .map(|c| {
            let mut v = vec![0.0; spec.dim];
            v[c] = radius;
            v
        })
        .collect()
}

/// `per_class` rows per class, labeled `0..classes`, grouped by class.
pub fn blobs(spec: &BlobSpec) -> FeatureSet {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let centers = centers(spec);
    let mut values = Vec::with_capacity(spec.classes * spec.per_class * spec.dim);
    let mut labels = Vec::with_capacity(spec.classes * spec.per_class);
    for (c, center) in centers.iter().enumerate() {
        for _ in 0..spec.per_class {
            values.extend(
                center
                    .iter()
                    .map(|&x| x + spec.sigma * rng.sample::<f32, _>(StandardNormal)),
            );
            labels.push(c as i32);
        }
    }
    FeatureSet::new(values, spec.classes * spec.per_class, spec.dim)
        .and_then(|f| f.with_labels(labels))
        .expect("blob fixture is well formed")
}

/// Rows whose label is in `classes`.
pub fn with_classes(set: &FeatureSet, classes: &[i32]) -> FeatureSet {
    let labels = set.labels().expect("labeled set");
    let rows: Vec<usize> = (0..set.len())
        .filter(|&i| classes.contains(&labels[i]))
        .collect();
    set.select(&rows).expect("classes present")
}
