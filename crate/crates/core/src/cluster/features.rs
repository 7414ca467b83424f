use std::cmp::Ordering;

use crate::error::{check_same_size, domain, PrdError, Result};

/// `n` embedding vectors of dimension `dim`, stored row-major, with
/// optional integer class labels.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSet {
    values: Vec<f32>,
    n: usize,
    dim: usize,
    labels: Option<Vec<i32>>,
}

impl FeatureSet {
    pub fn new(values: Vec<f32>, n: usize, dim: usize) -> Result<Self> {
        if n == 0 || dim == 0 {
            return Err(domain(format!(
                "feature set needs at least one row and one column, got {n}x{dim}"
            )));
        }
        if values.len() != n * dim {
            return Err(PrdError::Dimension {
                left: values.len(),
                right: n * dim,
            });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(domain(format!(
                "non-finite value at row {}, column {}",
                pos / dim,
                pos % dim
            )));
        }
        Ok(Self {
            values,
            n,
            dim,
            labels: None,
        })
    }

    pub fn from_rows(rows: &[Vec<f32>]) -> Result<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(PrdError::Dimension {
                left: bad.len(),
                right: dim,
            });
        }
        Self::new(rows.concat(), rows.len(), dim)
    }

    pub fn with_labels(mut self, labels: Vec<i32>) -> Result<Self> {
        check_same_size(labels.len(), self.n)?;
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[f32] {
        &self.values
    }

    pub fn labels(&self) -> Option<&[i32]> {
        self.labels.as_deref()
    }

    pub fn row(&self, i: usize) -> &[f32] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f32]> + '_ {
        self.values.chunks_exact(self.dim)
    }

    /// Rows at `indices`, in that order; labels follow along.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(domain("selection is empty"));
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.n) {
            return Err(domain(format!(
                "row {bad} out of range for {} rows",
                self.n
            )));
        }
        let mut values = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            values.extend_from_slice(self.row(i));
        }
        Ok(Self {
            values,
            n: indices.len(),
            dim: self.dim,
            labels: self
                .labels
                .as_ref()
                .map(|l| indices.iter().map(|&i| l[i]).collect()),
        })
    }

    /// Rows of `self` followed by rows of `other`, unlabeled.
    pub fn concat(&self, other: &FeatureSet) -> Result<Self> {
        check_same_size(self.dim, other.dim)?;
        let mut values = self.values.clone();
        values.extend_from_slice(&other.values);
        Self::new(values, self.n + other.n, self.dim)
    }

    /// Same multiset of rows in a canonical order (lexicographic under
    /// `f32::total_cmp`), so anything computed from it ignores input order.
    pub fn canonical(&self) -> Self {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by(|&a, &b| compare_rows(self.row(a), self.row(b)));
        let mut values = Vec::with_capacity(self.values.len());
        for i in order {
            values.extend_from_slice(self.row(i));
        }
        Self {
            values,
            n: self.n,
            dim: self.dim,
            labels: None,
        }
    }
}

fn compare_rows(a: &[f32], b: &[f32]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}
