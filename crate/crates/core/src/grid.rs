use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Grid resolution used when the caller does not pick one. Odd, so that
/// the slope 1 sits exactly in the middle of the grid.
pub const DEFAULT_RESOLUTION: usize = 1001;

/// Equiangular grid of slopes `tan(i/(m+1) · π/2)` for `i = 1..=m`.
///
/// Slopes above 1 are computed as reciprocals of their mirror images, so the
/// grid is symmetric under `λ ↦ 1/λ` to rounding, and the center of an
/// odd-sized grid is exactly `1.0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaGrid {
    lambdas: Vec<f64>,
}

impl LambdaGrid {
    pub fn new(resolution: usize) -> Result<Self> {
        if resolution == 0 {
            return Err(domain("grid resolution must be at least 1"));
        }
        let m = resolution;
        let slope = |step: usize| (step as f64 / (m + 1) as f64 * FRAC_PI_2).tan();
        let lambdas = (1..=m)
            .map(|step| match (2 * step).cmp(&(m + 1)) {
                std::cmp::Ordering::Less => slope(step),
                std::cmp::Ordering::Equal => 1.0,
                std::cmp::Ordering::Greater => 1.0 / slope(m + 1 - step),
            })
            .collect();
        Ok(Self { lambdas })
    }

    /// Wraps an explicit list of slopes, e.g. one read back from a report.
    pub fn from_lambdas(lambdas: Vec<f64>) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(domain("grid is empty"));
        }
        if lambdas.iter().any(|l| !l.is_finite() || *l <= 0.0) {
            return Err(domain("grid slopes must be positive and finite"));
        }
        if lambdas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(domain("grid slopes must be strictly increasing"));
        }
        Ok(Self { lambdas })
    }

    pub fn resolution(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    /// Index of the slope 1, present iff the resolution is odd.
    pub fn unit_index(&self) -> Option<usize> {
        self.lambdas.iter().position(|&l| l == 1.0)
    }
}
