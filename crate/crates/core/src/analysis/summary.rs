use crate::clustering::ClusterModel;
use crate::tabular::Dataset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterShare {
    pub index: usize,
    pub size: usize,
    /// Whole percent of all rows, rounded half away from zero.
    pub percent: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterSummary {
    pub clusters: Vec<ClusterShare>,
    pub total: usize,
    pub iterations: usize,
    pub chosen_k: usize,
    pub attributes: Vec<String>,
}

/// `part * 100 / total` rounded to the nearest integer, halves away from
/// zero; 0 when `total` is 0.
pub fn rounded_percent(part: usize, total: usize) -> u32 {
    if total == 0 {
        return 0;
    }
    let (part, total) = (part as u128, total as u128);
    ((200 * part + total) / (2 * total)) as u32
}

pub fn summarize(model: &ClusterModel, ds: &Dataset) -> ClusterSummary {
    let total = ds.n_rows();
    let mut sizes = vec![0usize; model.chosen_k];
    for &c in &model.assignment {
        sizes[c] += 1;
    }
    ClusterSummary {
        clusters: sizes
            .into_iter()
            .enumerate()
            .map(|(index, size)| ClusterShare {
                index,
                size,
                percent: rounded_percent(size, total),
            })
            .collect(),
        total,
        iterations: model.iterations,
        chosen_k: model.chosen_k,
        attributes: ds.attribute_names().into_iter().map(String::from).collect(),
    }
}
