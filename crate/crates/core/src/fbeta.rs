use serde::{Deserialize, Serialize};

use crate::curve::PrdCurve;
use crate::error::{domain, Result};

/// Weight favouring recall; its reciprocal favours precision.
pub const DEFAULT_BETA_WEIGHT: f64 = 8.0;

/// `F_β = (1 + β²)·p·r / (β²·p + r)`, defined as 0 at `p = r = 0`.
pub fn f_beta(precision: f64, recall: f64, beta_weight: f64) -> Result<f64> {
    if beta_weight.is_nan() || beta_weight <= 0.0 || !beta_weight.is_finite() {
        return Err(domain(format!(
            "beta weight must be positive and finite, got {beta_weight}"
        )));
    }
    let in_unit = |v: f64| (0.0..=1.0).contains(&v);
    if !in_unit(precision) || !in_unit(recall) {
        return Err(domain(format!(
            "precision {precision} and recall {recall} must lie in [0, 1]"
        )));
    }
    if precision == 0.0 && recall == 0.0 {
        return Ok(0.0);
    }
    let b2 = beta_weight * beta_weight;
    Ok((1.0 + b2) * precision * recall / (b2 * precision + recall))
}

/// Largest `F_β` over the points of `curve`.
pub fn max_f_beta(curve: &PrdCurve, beta_weight: f64) -> Result<f64> {
    if curve.is_empty() {
        return Err(domain("curve has no points"));
    }
    curve
        .points()
        .iter()
        .map(|p| f_beta(p.precision, p.recall, beta_weight))
        .try_fold(0.0, |best, f| f.map(|f| f64::max(best, f)))
}

/// Two-number summary of a curve: max `F_β` (recall-leaning for β > 1) and
/// max `F_{1/β}` (precision-leaning).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FBetaSummary {
    pub beta_weight: f64,
    pub f_beta: f64,
    pub f_inv_beta: f64,
}

impl FBetaSummary {
    pub fn from_curve(curve: &PrdCurve, beta_weight: f64) -> Result<Self> {
        Ok(Self {
            beta_weight,
            f_beta: max_f_beta(curve, beta_weight)?,
            f_inv_beta: max_f_beta(curve, 1.0 / beta_weight)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::prd_curve;
    use crate::distribution::DiscreteDistribution;
    use proptest::prelude::*;

    #[test]
    fn equal_inputs_give_the_input() {
        for b in [0.125, 1.0, 8.0, 3.3] {
            assert!((f_beta(0.37, 0.37, b).unwrap() - 0.37).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_branches() {
        assert_eq!(f_beta(1.0, 0.0, 8.0).unwrap(), 0.0);
        assert_eq!(f_beta(0.0, 0.0, 8.0).unwrap(), 0.0);
    }

    #[test]
    fn recall_weighted_value() {
        // 65 · 0.5 / (64 + 0.5)
        let f = f_beta(1.0, 0.5, 8.0).unwrap();
        assert!((f - 32.5 / 64.5).abs() < 1e-15);
        assert!((f - 0.50388).abs() < 1e-5);
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(f_beta(0.5, 0.5, 0.0).is_err());
        assert!(f_beta(0.5, 0.5, -1.0).is_err());
        assert!(f_beta(0.5, 0.5, f64::NAN).is_err());
        assert!(f_beta(1.5, 0.5, 1.0).is_err());
    }

    #[test]
    fn summary_of_curves() {
        let p = DiscreteDistribution::new(vec![0.5, 0.5]).unwrap();
        let q = DiscreteDistribution::new(vec![1.0, 0.0]).unwrap();

        let same = FBetaSummary::from_curve(&prd_curve(&p, &p, 1001).unwrap(), 8.0).unwrap();
        assert_eq!((same.f_beta, same.f_inv_beta), (1.0, 1.0));

        let curve = prd_curve(&p, &q, 1001).unwrap();
        let s = FBetaSummary::from_curve(&curve, 8.0).unwrap();
        let high = (1.0 + 1.0 / 64.0) * 0.5 / (1.0 / 64.0 + 0.5);
        // λ = 2 is not on the grid, so the optimum is approached from below.
        assert!(s.f_inv_beta <= high && high - s.f_inv_beta < 1e-3);
        assert!(s.f_beta <= 32.5 / 64.5 && 32.5 / 64.5 - s.f_beta < 1e-2);
        assert!(s.f_beta < 0.51);

        let swapped = FBetaSummary::from_curve(&prd_curve(&q, &p, 1001).unwrap(), 8.0).unwrap();
        assert!((swapped.f_beta - s.f_inv_beta).abs() < 1e-9);
        assert!((swapped.f_inv_beta - s.f_beta).abs() < 1e-9);
    }

    proptest! {
        #[test]
        fn bounded_by_inputs(p in 0.0f64..=1.0, r in 0.0f64..=1.0, b in 0.01f64..100.0) {
            let f = f_beta(p, r, b).unwrap();
            if p > 0.0 || r > 0.0 {
                prop_assert!(f >= p.min(r) - 1e-12);
            }
            prop_assert!(f <= p.max(r) + 1e-12);
        }

        #[test]
        fn swapping_inputs_inverts_weight(p in 0.0f64..=1.0, r in 0.0f64..=1.0, b in 0.01f64..100.0) {
            let lhs = f_beta(p, r, b).unwrap();
            let rhs = f_beta(r, p, 1.0 / b).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12);
        }
    }
}
