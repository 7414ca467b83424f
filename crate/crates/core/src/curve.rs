//! Precision/recall curves traced along the slopes of a [`LambdaGrid`].

use serde::{Deserialize, Serialize};

use crate::distribution::DiscreteDistribution;
use crate::error::{check_same_size, domain, Result};
use crate::grid::LambdaGrid;

/// One attainable (precision, recall) pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrdPoint {
    pub precision: f64,
    pub recall: f64,
}

impl PrdPoint {
    pub const ORIGIN: PrdPoint = PrdPoint {
        precision: 0.0,
        recall: 0.0,
    };

    pub fn new(precision: f64, recall: f64) -> Self {
        Self { precision, recall }
    }

    pub fn scaled(self, theta: f64) -> Self {
        Self::new(self.precision * theta, self.recall * theta)
    }

    pub fn is_origin(&self) -> bool {
        self.precision == 0.0 && self.recall == 0.0
    }
}

/// Boundary point of the PRD set on the line `precision = λ · recall`:
/// `(Σ min(λP, Q), Σ min(P, Q/λ))`.
pub fn alpha_beta(
    lambda: f64,
    p: &DiscreteDistribution,
    q: &DiscreteDistribution,
) -> Result<PrdPoint> {
    check_same_size(p.size(), q.size())?;
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(domain(format!(
            "slope must be positive and finite, got {lambda}"
        )));
    }
    Ok(boundary_point(lambda, p.weights(), q.weights()))
}

fn boundary_point(lambda: f64, p: &[f64], q: &[f64]) -> PrdPoint {
    let mut precision = 0.0;
    let mut recall = 0.0;
    for (&pw, &qw) in p.iter().zip(q) {
        precision += (lambda * pw).min(qw);
        recall += pw.min(qw / lambda);
    }
    PrdPoint::new(precision.min(1.0), recall.min(1.0))
}

/// A PRD curve: one boundary point per grid slope, in grid order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrdCurve {
    grid: LambdaGrid,
    points: Vec<PrdPoint>,
}

impl PrdCurve {
    pub fn from_parts(grid: LambdaGrid, points: Vec<PrdPoint>) -> Result<Self> {
        check_same_size(grid.resolution(), points.len())?;
        Ok(Self { grid, points })
    }

    pub fn grid(&self) -> &LambdaGrid {
        &self.grid
    }

    pub fn lambdas(&self) -> &[f64] {
        self.grid.lambdas()
    }

    pub fn points(&self) -> &[PrdPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `(λ, point)` pairs in grid order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, PrdPoint)> + '_ {
        self.lambdas()
            .iter()
            .copied()
            .zip(self.points.iter().copied())
    }

    /// Point at slope 1, if the grid contains it.
    pub fn at_unit_slope(&self) -> Option<PrdPoint> {
        self.grid.unit_index().map(|i| self.points[i])
    }

    pub fn max_precision(&self) -> f64 {
        self.points.iter().map(|p| p.precision).fold(0.0, f64::max)
    }

    pub fn max_recall(&self) -> f64 {
        self.points.iter().map(|p| p.recall).fold(0.0, f64::max)
    }

    /// Pointwise arithmetic mean of curves sharing one grid.
    pub fn mean(curves: &[PrdCurve]) -> Result<PrdCurve> {
        let first = curves
            .first()
            .ok_or_else(|| domain("cannot average zero curves"))?;
        if curves.iter().any(|c| c.grid != first.grid) {
            return Err(domain("curves to average must share a grid"));
        }
        let n = curves.len() as f64;
        let points = (0..first.len())
            .map(|i| {
                let (a, b) = curves.iter().fold((0.0, 0.0), |(a, b), c| {
                    (a + c.points[i].precision, b + c.points[i].recall)
                });
                PrdPoint::new(a / n, b / n)
            })
            .collect();
        Ok(PrdCurve {
            grid: first.grid.clone(),
            points,
        })
    }

    /// Re-checks the structural invariants: the line relation per row,
    /// monotone columns and values inside the unit square.
    pub fn validate(&self, line_tolerance: f64) -> Result<()> {
        for (i, (lambda, pt)) in self.iter().enumerate() {
            let in_unit = |v: f64| (0.0..=1.0).contains(&v);
            if !in_unit(pt.precision) || !in_unit(pt.recall) {
                return Err(domain(format!("row {i} leaves the unit square")));
            }
            if (pt.precision - lambda * pt.recall).abs() > line_tolerance {
                return Err(domain(format!(
                    "row {i} violates precision = lambda * recall"
                )));
            }
        }
        for (i, w) in self.points.windows(2).enumerate() {
            if w[1].precision + line_tolerance < w[0].precision {
                return Err(domain(format!("precision decreases at row {}", i + 1)));
            }
            if w[1].recall > w[0].recall + line_tolerance {
                return Err(domain(format!("recall increases at row {}", i + 1)));
            }
        }
        Ok(())
    }
}

/// Evaluates [`alpha_beta`] on every slope of a `resolution`-point grid.
pub fn prd_curve(
    p: &DiscreteDistribution,
    q: &DiscreteDistribution,
    resolution: usize,
) -> Result<PrdCurve> {
    check_same_size(p.size(), q.size())?;
    let grid = LambdaGrid::new(resolution)?;
    curve_on_grid(p, q, grid)
}

pub fn curve_on_grid(
    p: &DiscreteDistribution,
    q: &DiscreteDistribution,
    grid: LambdaGrid,
) -> Result<PrdCurve> {
    check_same_size(p.size(), q.size())?;
    let points = grid
        .lambdas()
        .iter()
        .map(|&l| boundary_point(l, p.weights(), q.weights()))
        .collect();
    Ok(PrdCurve { grid, points })
}

/// Star-shaped polygon spanned by the origin and the curve points, i.e. the
/// union of the segments from the origin to each curve point.
#[derive(Debug, Clone, PartialEq)]
pub struct PrdPolygon {
    vertices: Vec<PrdPoint>,
}

/// Closes a curve into the polygon approximating the full PRD set.
///
/// Vertices are the origin followed by the non-origin curve points in grid
/// order; a curve that is identically zero yields just the origin.
pub fn interpolate_set(curve: &PrdCurve) -> Result<PrdPolygon> {
    if curve.is_empty() {
        return Err(domain("cannot interpolate an empty curve"));
    }
    let mut vertices = vec![PrdPoint::ORIGIN];
    vertices.extend(curve.points().iter().filter(|p| !p.is_origin()).copied());
    Ok(PrdPolygon { vertices })
}

impl PrdPolygon {
    pub fn vertices(&self) -> &[PrdPoint] {
        &self.vertices
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() == 1
    }

    /// Whether `(precision, recall)` lies in the filled polygon, allowing
    /// `tol` of slack across each boundary edge.
    pub fn contains(&self, point: PrdPoint, tol: f64) -> bool {
        if point.precision.abs() <= tol && point.recall.abs() <= tol {
            return true;
        }
        let rim = &self.vertices[1..];
        // Walk the rim (ordered by angle) and test the fan triangle whose
        // angular sector contains the point.
        let angle = |p: &PrdPoint| p.precision.atan2(p.recall);
        let target = angle(&point);
        if rim.len() == 1 {
            return on_segment_to_origin(rim[0], point, tol);
        }
        for w in rim.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (lo, hi) = (angle(&a), angle(&b));
            if target + 1e-15 < lo || target - 1e-15 > hi {
                continue;
            }
            // Cross product sign of (b − a) × (point − a): the origin is on
            // the non-negative side for a counter-clockwise rim.
            let edge = (b.recall - a.recall, b.precision - a.precision);
            let rel = (point.recall - a.recall, point.precision - a.precision);
            let cross = edge.0 * rel.1 - edge.1 * rel.0;
            let len = edge.0.hypot(edge.1);
            if len == 0.0 {
                return on_segment_to_origin(a, point, tol);
            }
            return cross >= -tol * len;
        }
        rim.iter().any(|&v| on_segment_to_origin(v, point, tol))
    }
}

fn on_segment_to_origin(end: PrdPoint, point: PrdPoint, tol: f64) -> bool {
    let len2 = end.precision * end.precision + end.recall * end.recall;
    if len2 == 0.0 {
        return false;
    }
    let t = (point.precision * end.precision + point.recall * end.recall) / len2;
    let t = t.clamp(0.0, 1.0);
    let dx = point.precision - t * end.precision;
    let dy = point.recall - t * end.recall;
    dx.hypot(dy) <= tol
}
