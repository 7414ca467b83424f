//! Probability distributions over a finite state space and the summary
//! quantities that only need the two histograms (support masses and total
//! variation).

use crate::error::{check_same_size, PrdError, Result};

/// A state belongs to the support iff its mass exceeds this value.
pub const SUPPORT_THRESHOLD: f64 = 1e-12;

/// Allowed deviation of the total mass from 1.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// A normalized histogram over `size()` states, stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    weights: Vec<f64>,
}

impl DiscreteDistribution {
    /// Validates `weights` as a probability vector: non-empty, finite,
    /// non-negative and summing to 1 within [`NORMALIZATION_TOLERANCE`].
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        validate_masses(&weights)?;
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(PrdError::InvalidDistribution(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        Ok(Self { weights })
    }

    /// Rescales non-negative masses so they sum to 1.
    pub fn from_unnormalized(masses: Vec<f64>) -> Result<Self> {
        validate_masses(&masses)?;
        let total: f64 = masses.iter().sum();
        if total <= 0.0 {
            return Err(PrdError::InvalidDistribution(
                "total mass is zero".to_string(),
            ));
        }
        Ok(Self {
            weights: masses.into_iter().map(|w| w / total).collect(),
        })
    }

    /// Normalized histogram of `counts`.
    pub fn from_counts(counts: &[usize]) -> Result<Self> {
        let total: usize = counts.iter().sum();
        if counts.is_empty() || total == 0 {
            return Err(PrdError::InvalidDistribution(
                "histogram has no observations".to_string(),
            ));
        }
        let total = total as f64;
        Ok(Self {
            weights: counts.iter().map(|&c| c as f64 / total).collect(),
        })
    }

    /// Uniform distribution over `size` states.
    pub fn uniform(size: usize) -> Result<Self> {
        Self::from_unnormalized(vec![1.0; size])
    }

    /// Point mass on `state`.
    pub fn point_mass(size: usize, state: usize) -> Result<Self> {
        if state >= size {
            return Err(PrdError::Domain(format!(
                "state {state} outside a space of {size} states"
            )));
        }
        let mut weights = vec![0.0; size];
        weights[state] = 1.0;
        Self::new(weights)
    }

    pub fn size(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn in_support(&self, state: usize) -> bool {
        self.weights[state] > SUPPORT_THRESHOLD
    }

    /// Total mass this distribution places on the support of `other`.
    pub fn mass_on_support_of(&self, other: &DiscreteDistribution) -> Result<f64> {
        check_same_size(self.size(), other.size())?;
        Ok(self
            .weights
            .iter()
            .enumerate()
            .filter(|&(i, _)| other.in_support(i))
            .map(|(_, w)| w)
            .sum::<f64>()
            .min(1.0))
    }

    /// Elementwise equality within `tol`.
    pub fn approx_eq(&self, other: &DiscreteDistribution, tol: f64) -> bool {
        self.size() == other.size()
            && self
                .weights
                .iter()
                .zip(&other.weights)
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

impl TryFrom<Vec<f64>> for DiscreteDistribution {
    type Error = PrdError;

    fn try_from(weights: Vec<f64>) -> Result<Self> {
        Self::new(weights)
    }
}

fn validate_masses(masses: &[f64]) -> Result<()> {
    if masses.is_empty() {
        return Err(PrdError::InvalidDistribution(
            "state space is empty".to_string(),
        ));
    }
    if let Some((i, w)) = masses
        .iter()
        .enumerate()
        .find(|(_, w)| !w.is_finite() || **w < 0.0)
    {
        return Err(PrdError::InvalidDistribution(format!(
            "weight {i} is {w}; masses must be finite and non-negative"
        )));
    }
    Ok(())
}

/// Largest attainable precision of `q` w.r.t. `p`: the mass `q` puts on `supp(p)`.
pub fn max_precision(p: &DiscreteDistribution, q: &DiscreteDistribution) -> Result<f64> {
    q.mass_on_support_of(p)
}

/// Largest attainable recall of `q` w.r.t. `p`: the mass `p` puts on `supp(q)`.
pub fn max_recall(p: &DiscreteDistribution, q: &DiscreteDistribution) -> Result<f64> {
    p.mass_on_support_of(q)
}

/// Total variation distance `Σ (p − q)⁺`.
pub fn tv_distance(p: &DiscreteDistribution, q: &DiscreteDistribution) -> Result<f64> {
    check_same_size(p.size(), q.size())?;
    Ok(p.weights
        .iter()
        .zip(&q.weights)
        .map(|(a, b)| (a - b).max(0.0))
        .sum())
}
