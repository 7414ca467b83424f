//! Direct membership test for the PRD set and explicit mixture witnesses.
//!
//! `(α, β)` with `α, β ∈ (0, 1]` is attainable iff some distribution `μ`
//! satisfies `P ≥ βμ` and `Q ≥ αμ` pointwise. The largest mass such a `μ`
//! can carry is `Z = Σ min(P/β, Q/α)`, so membership reduces to `Z ≥ 1`.
//! Nothing here goes through the slope parametrization used by the curves,
//! which is what makes it usable as a cross-check for them.

use crate::distribution::DiscreteDistribution;
use crate::error::{check_same_size, domain, PrdError, Result};

/// `Z` may fall this far short of 1 and still count as feasible.
pub const ORACLE_TOLERANCE: f64 = 1e-9;

fn check_unit_interval(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v <= 1.0) {
        return Err(domain(format!("{name} must lie in (0, 1], got {v}")));
    }
    Ok(())
}

fn witness_masses(
    alpha: f64,
    beta: f64,
    p: &DiscreteDistribution,
    q: &DiscreteDistribution,
) -> Result<Vec<f64>> {
    check_unit_interval("precision", alpha)?;
    check_unit_interval("recall", beta)?;
    check_same_size(p.size(), q.size())?;
    Ok(p.weights()
        .iter()
        .zip(q.weights())
        .map(|(&pw, &qw)| (pw / beta).min(qw / alpha))
        .collect())
}

/// Whether `q` attains precision `alpha` at recall `beta` w.r.t. `p`.
pub fn membership_oracle(
    alpha: f64,
    beta: f64,
    p: &DiscreteDistribution,
    q: &DiscreteDistribution,
) -> Result<bool> {
    let total: f64 = witness_masses(alpha, beta, p, q)?.iter().sum();
    Ok(total >= 1.0 - ORACLE_TOLERANCE)
}

/// Mixture witness: `P = β·μ + (1−β)·ν_P` and `Q = α·μ + (1−α)·ν_Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub alpha: f64,
    pub beta: f64,
    pub mu: DiscreteDistribution,
    pub nu_p: DiscreteDistribution,
    pub nu_q: DiscreteDistribution,
}

impl Decomposition {
    /// `β·μ + (1−β)·ν_P`, which should reproduce `P`.
    pub fn recombine_reference(&self) -> Vec<f64> {
        mix(self.beta, &self.mu, &self.nu_p)
    }

    /// `α·μ + (1−α)·ν_Q`, which should reproduce `Q`.
    pub fn recombine_model(&self) -> Vec<f64> {
        mix(self.alpha, &self.mu, &self.nu_q)
    }
}

fn mix(weight: f64, common: &DiscreteDistribution, rest: &DiscreteDistribution) -> Vec<f64> {
    common
        .weights()
        .iter()
        .zip(rest.weights())
        .map(|(c, r)| weight * c + (1.0 - weight) * r)
        .collect()
}

/// Builds the canonical witness for an attainable `(alpha, beta)`.
///
/// `μ` is the maximal-mass candidate `min(P/β, Q/α)` scaled down to unit
/// mass; the residuals follow from the mixture equations. When a mixture
/// weight is exactly 1 the matching residual is unconstrained and is set
/// to `μ`.
pub fn decompose(
    alpha: f64,
    beta: f64,
    p: &DiscreteDistribution,
    q: &DiscreteDistribution,
) -> Result<Decomposition> {
    let masses = witness_masses(alpha, beta, p, q)?;
    let total: f64 = masses.iter().sum();
    if total < 1.0 - ORACLE_TOLERANCE {
        return Err(PrdError::Infeasible { alpha, beta });
    }
    let mu = DiscreteDistribution::from_unnormalized(masses)?;
    let nu_p = residual(beta, p, &mu)?;
    let nu_q = residual(alpha, q, &mu)?;
    Ok(Decomposition {
        alpha,
        beta,
        mu,
        nu_p,
        nu_q,
    })
}

fn residual(
    weight: f64,
    target: &DiscreteDistribution,
    mu: &DiscreteDistribution,
) -> Result<DiscreteDistribution> {
    if weight == 1.0 {
        return Ok(mu.clone());
    }
    let rest: Vec<f64> = target
        .weights()
        .iter()
        .zip(mu.weights())
        .map(|(t, m)| ((t - weight * m) / (1.0 - weight)).max(0.0))
        .collect();
    // Only rounding separates the total from 1 here; rescale it away.
    DiscreteDistribution::from_unnormalized(rest)
}
