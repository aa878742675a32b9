use super::{kmeans, ClusterError, ClusterModel, DistanceMetric, KMeansConfig};
use crate::tabular::Dataset;

/// Outcome of the automatic k search.
#[derive(Debug, Clone, PartialEq)]
pub struct KSelection {
    pub chosen_k: usize,
    pub model: ClusterModel,
    /// Mean silhouette for every k tried, ascending in k.
    pub silhouettes: Vec<(usize, f64)>,
}

/// Mean silhouette coefficient of a partition. Rows in singleton clusters
/// score 0, as do rows when no other non-empty cluster exists.
pub fn mean_silhouette(ds: &Dataset, assignment: &[usize]) -> f64 {
    let n = ds.n_rows();
    if n == 0 {
        return 0.0;
    }
    let metric = DistanceMetric::fit(ds);
    let k = assignment.iter().max().map_or(0, |&m| m + 1);
    let mut sizes = vec![0usize; k];
    for &c in assignment {
        sizes[c] += 1;
    }

    let rows = ds.rows();
    let mut total = 0.0;
    let mut sums = vec![0.0; k];
    for i in 0..n {
        let own = assignment[i];
        if sizes[own] <= 1 {
            continue;
        }
        sums.iter_mut().for_each(|s| *s = 0.0);
        for j in 0..n {
            if i != j {
                sums[assignment[j]] += metric.squared_unchecked(&rows[i], &rows[j]).sqrt();
            }
        }
        let a = sums[own] / (sizes[own] - 1) as f64;
        let b = (0..k)
            .filter(|&c| c != own && sizes[c] > 0)
            .map(|c| sums[c] / sizes[c] as f64)
            .fold(f64::INFINITY, f64::min);
        if !b.is_finite() {
            continue;
        }
        let scale = a.max(b);
        if scale > 0.0 {
            total += (b - a) / scale;
        }
    }
    total / n as f64
}

/// Fit k-means for every k in `2..=cfg.k_max` with the same seed and keep
/// the model with the highest mean silhouette (smallest k on ties).
pub fn select_k(ds: &Dataset, cfg: &KMeansConfig) -> Result<KSelection, ClusterError> {
    if ds.n_rows() == 0 {
        return Err(ClusterError::EmptyDataset);
    }
    if cfg.k_max < 2 {
        return Err(ClusterError::InvalidConfig(
            "k_max must be at least 2".into(),
        ));
    }
    if ds.n_rows() < cfg.k_max {
        return Err(ClusterError::TooFewRows {
            k: cfg.k_max,
            rows: ds.n_rows(),
        });
    }

    let mut best: Option<(f64, ClusterModel)> = None;
    let mut silhouettes = Vec::with_capacity(cfg.k_max - 1);
    for k in 2..=cfg.k_max {
        let model = kmeans(
            ds,
            &KMeansConfig {
                k,
                fixed_k: true,
                ..cfg.clone()
            },
        )?;
        let score = mean_silhouette(ds, &model.assignment);
        silhouettes.push((k, score));
        if best.as_ref().is_none_or(|(s, _)| score > *s) {
            best = Some((score, model));
        }
    }
    let (_, model) = best.expect("k_max >= 2 guarantees one candidate");
    Ok(KSelection {
        chosen_k: model.chosen_k,
        model,
        silhouettes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tabular::{AttributeSpec, Value};

    fn one_dim(values: &[f64]) -> Dataset {
        Dataset::new(
            "r",
            vec![AttributeSpec::numeric("x")],
            values.iter().map(|&v| vec![Value::Number(v)]).collect(),
        )
        .unwrap()
    }

    #[test]
    fn separated_groups_pick_two() {
        let ds = one_dim(&[0.0, 1.0, 100.0, 101.0]);
        let sel = select_k(&ds, &KMeansConfig::auto(3, 42)).unwrap();
        assert_eq!(sel.chosen_k, 2);
        assert_eq!(sel.silhouettes.len(), 2);
    }

    #[test]
    fn identical_rows() {
        let ds = one_dim(&[5.0; 4]);
        let sel = select_k(&ds, &KMeansConfig::auto(2, 1)).unwrap();
        assert_eq!(sel.chosen_k, 2);
        assert_eq!(sel.model.sse, 0.0);
        assert_eq!(sel.silhouettes, [(2, 0.0)]);
    }

    #[test]
    fn bounds() {
        let ds = one_dim(&[0.0, 1.0]);
        assert!(matches!(
            select_k(&ds, &KMeansConfig::auto(1, 0)),
            Err(ClusterError::InvalidConfig(_))
        ));
        assert_eq!(
            select_k(&ds, &KMeansConfig::auto(3, 0)),
            Err(ClusterError::TooFewRows { k: 3, rows: 2 })
        );
        assert_eq!(
            select_k(&one_dim(&[]), &KMeansConfig::auto(2, 0)),
            Err(ClusterError::EmptyDataset)
        );
    }

    #[test]
    fn singletons_score_zero() {
        let ds = one_dim(&[0.0, 1.0, 2.0]);
        assert_eq!(mean_silhouette(&ds, &[0, 1, 2]), 0.0);
    }
}
