//! Mixed-type k-means with an optional automatic choice of k.
//!
//! Rows are compared with [`DistanceMetric`]: a Euclidean distance over
//! min-max normalized numeric attributes, with a 0/1 mismatch term for
//! nominal and text attributes and a full penalty of 1 whenever either side
//! of an attribute is missing.
//!
//! [`kmeans`] runs the classic loop (seeded choice of k distinct rows as the
//! initial centres, then alternate assignment and centroid update until no
//! assignment changes). [`select_k`] fits every k in `2..=k_max` and keeps
//! the model with the highest mean silhouette.

mod distance;
mod kmeans;
mod select;

use thiserror::Error;

use crate::tabular::Value;

pub use distance::{distance, DistanceMetric};
pub use kmeans::{initial_center_rows, kmeans, kmeans_from_centers, reassign, sse};
pub use select::{mean_silhouette, select_k, KSelection};

pub const DEFAULT_MAX_ITERATIONS: usize = 100;

#[derive(Debug, Error, PartialEq)]
pub enum ClusterError {
    #[error("dataset has no rows")]
    EmptyDataset,
    #[error("cannot form {k} clusters from {rows} rows")]
    TooFewRows { k: usize, rows: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("row has {found} cells, expected {expected}")]
    ArityMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KMeansConfig {
    /// Cluster count when `fixed_k` is set.
    pub k: usize,
    pub fixed_k: bool,
    /// Upper bound of the search when `fixed_k` is false.
    pub k_max: usize,
    pub max_iterations: usize,
    pub seed: u64,
}

impl KMeansConfig {
    pub fn fixed(k: usize, seed: u64) -> Self {
        Self {
            k,
            fixed_k: true,
            k_max: k.max(2),
            max_iterations: DEFAULT_MAX_ITERATIONS,
            seed,
        }
    }

    pub fn auto(k_max: usize, seed: u64) -> Self {
        Self {
            k: 2,
            fixed_k: false,
            k_max,
            max_iterations: DEFAULT_MAX_ITERATIONS,
            seed,
        }
    }

    pub fn with_max_iterations(mut self, max_iterations: usize) -> Self {
        self.max_iterations = max_iterations;
        self
    }
}

/// A cluster representative: the per-attribute mean (numeric and date
/// columns) or mode (nominal and text columns) of its members.
#[derive(Debug, Clone, PartialEq)]
pub struct Centroid(pub Vec<Value>);

impl Centroid {
    pub fn values(&self) -> &[Value] {
        &self.0
    }
}

impl From<Vec<Value>> for Centroid {
    fn from(values: Vec<Value>) -> Self {
        Centroid(values)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterModel {
    pub centroids: Vec<Centroid>,
    /// Cluster index of every row.
    pub assignment: Vec<usize>,
    /// Assignment passes executed, including the final unchanged pass.
    pub iterations: usize,
    pub converged: bool,
    /// Sum of squared row-to-centroid distances under the final centroids.
    pub sse: f64,
    /// Squared-distance total seen by each assignment pass, in order.
    pub sse_trace: Vec<f64>,
    pub sizes: Vec<usize>,
    pub chosen_k: usize,
}
