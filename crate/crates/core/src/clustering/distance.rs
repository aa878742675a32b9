use super::ClusterError;
use crate::tabular::{Dataset, Value};

#[derive(Debug, Clone, Copy, PartialEq)]
enum Term {
    /// Observed range of a numeric column; a zero range makes the column
    /// contribute nothing.
    Numeric {
        range: f64,
    },
    Categorical,
}

/// Per-attribute distance parameters fitted on a dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMetric {
    terms: Vec<Term>,
}

impl DistanceMetric {
    pub fn fit(ds: &Dataset) -> Self {
        let terms = ds
            .schema()
            .iter()
            .enumerate()
            .map(|(i, attr)| {
                if !attr.kind.is_numeric() {
                    return Term::Categorical;
                }
                let (min, max) = ds
                    .column(i)
                    .filter_map(Value::as_number)
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
                        (lo.min(x), hi.max(x))
                    });
                Term::Numeric {
                    range: if min.is_finite() && max > min {
                        max - min
                    } else {
                        0.0
                    },
                }
            })
            .collect();
        Self { terms }
    }

    pub fn arity(&self) -> usize {
        self.terms.len()
    }

    /// Squared contribution of attribute `index`.
    pub fn term(&self, index: usize, x: &Value, c: &Value) -> f64 {
        match (x, c) {
            (Value::Missing, _) | (_, Value::Missing) => 1.0,
            (Value::Number(x), Value::Number(c)) => match self.terms[index] {
                Term::Numeric { range: 0.0 } => 0.0,
                // min-max normalization cancels in the difference
                Term::Numeric { range } => {
                    let d = (x - c) / range;
                    d * d
                }
                Term::Categorical => f64::from(u8::from(x != c)),
            },
            (a, b) => f64::from(u8::from(a != b)),
        }
    }

    /// Squared distance, summed in attribute order.
    pub fn squared(&self, row: &[Value], centroid: &[Value]) -> Result<f64, ClusterError> {
        for len in [row.len(), centroid.len()] {
            if len != self.terms.len() {
                return Err(ClusterError::ArityMismatch {
                    expected: self.terms.len(),
                    found: len,
                });
            }
        }
        Ok(self.squared_unchecked(row, centroid))
    }

    pub fn distance(&self, row: &[Value], centroid: &[Value]) -> Result<f64, ClusterError> {
        self.squared(row, centroid).map(f64::sqrt)
    }

    pub(crate) fn squared_unchecked(&self, row: &[Value], centroid: &[Value]) -> f64 {
        row.iter()
            .zip(centroid)
            .enumerate()
            .map(|(i, (x, c))| self.term(i, x, c))
            .sum()
    }
}

/// Distance between a row and a centroid, with normalization ranges taken
/// from `ds`.
pub fn distance(row: &[Value], centroid: &[Value], ds: &Dataset) -> Result<f64, ClusterError> {
    DistanceMetric::fit(ds).distance(row, centroid)
}
