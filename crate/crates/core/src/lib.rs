//! Precision and recall for distributions.
//!
//! For a reference distribution `P` and a model distribution `Q` on a finite
//! state space, the attainable (precision, recall) pairs form a set bounded
//! by the curve
//!
//! ```text
//! precision(λ) = Σ min(λ·P(ω), Q(ω)),   recall(λ) = Σ min(P(ω), Q(ω)/λ)
//! ```
//!
//! traced over slopes `λ > 0`. Precision measures how much of `Q` is
//! explained by a component shared with `P` (sample quality); recall measures
//! how much of `P` that component covers (coverage).
//!
//! | Item | Purpose |
//! |------|---------|
//! | [`prd_curve`] / [`alpha_beta`] | boundary of the set on an equiangular slope grid |
//! | [`membership_oracle`] / [`decompose`] | direct feasibility test and mixture witnesses |
//! | [`max_precision`] / [`max_recall`] / [`tv_distance`] | closed-form summaries |
//! | [`f_beta`] / [`FBetaSummary`] | two-number summary of a curve |
//! | [`cluster`] | quantizing embedding samples into histograms |
//!
//! ```
//! use prd_core::{prd_curve, DiscreteDistribution};
//!
//! let p = DiscreteDistribution::new(vec![0.5, 0.5]).unwrap();
//! let q = DiscreteDistribution::new(vec![1.0, 0.0]).unwrap();
//! let curve = prd_curve(&p, &q, 1001).unwrap();
//! assert_eq!(curve.max_precision(), 1.0);
//! assert_eq!(curve.max_recall(), 0.5);
//! ```

pub mod cluster;
mod curve;
mod distribution;
mod error;
mod fbeta;
mod grid;
mod oracle;

pub use curve::{
    alpha_beta, curve_on_grid, interpolate_set, prd_curve, PrdCurve, PrdPoint, PrdPolygon,
};
pub use distribution::{
    max_precision, max_recall, tv_distance, DiscreteDistribution, NORMALIZATION_TOLERANCE,
    SUPPORT_THRESHOLD,
};
pub use error::{PrdError, Result};
pub use fbeta::{f_beta, max_f_beta, FBetaSummary, DEFAULT_BETA_WEIGHT};
pub use grid::{LambdaGrid, DEFAULT_RESOLUTION};
pub use oracle::{decompose, membership_oracle, Decomposition, ORACLE_TOLERANCE};
