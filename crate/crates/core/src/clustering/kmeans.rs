use super::{Centroid, ClusterError, ClusterModel, DistanceMetric, KMeansConfig};
use crate::rng::SplitMix64;
use crate::tabular::{Dataset, Value};

/// Rows used as initial centres: a seeded permutation of the row indices,
/// preferring rows whose values differ from every centre already taken.
/// Duplicate rows are used only when fewer than `k` distinct rows exist.
pub fn initial_center_rows(ds: &Dataset, k: usize, seed: u64) -> Vec<usize> {
    let order = SplitMix64::new(seed).permutation(ds.n_rows());
    let rows = ds.rows();
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    for &i in &order {
        if chosen.len() == k {
            return chosen;
        }
        if chosen.iter().all(|&c| rows[c] != rows[i]) {
            chosen.push(i);
        }
    }
    for &i in &order {
        if chosen.len() == k {
            break;
        }
        if !chosen.contains(&i) {
            chosen.push(i);
        }
    }
    chosen
}

/// Nearest centroid per row (ties go to the lowest index) and the summed
/// squared distance of the pass.
fn assign(ds: &Dataset, metric: &DistanceMetric, centroids: &[Centroid]) -> (Vec<usize>, f64) {
    let mut total = 0.0;
    let assignment = ds
        .rows()
        .iter()
        .map(|row| {
            let mut best = (0, f64::INFINITY);
            for (j, c) in centroids.iter().enumerate() {
                let d = metric.squared_unchecked(row, c.values());
                if d < best.1 {
                    best = (j, d);
                }
            }
            total += best.1;
            best.0
        })
        .collect();
    (assignment, total)
}

fn mean_or_mode(ds: &Dataset, members: &[usize], attr: usize) -> Value {
    let values = members.iter().map(|&r| &ds.rows()[r][attr]);
    if ds.schema()[attr].kind.is_numeric() {
        let (sum, count) = values
            .filter_map(Value::as_number)
            .fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
        return if count == 0 {
            Value::Missing
        } else {
            Value::Number(sum / count as f64)
        };
    }
    // counts in first-occurrence order so ties resolve to the earliest row
    let mut counts: Vec<(&Value, usize)> = Vec::new();
    for v in values.filter(|v| !v.is_missing()) {
        match counts.iter_mut().find(|(seen, _)| *seen == v) {
            Some((_, n)) => *n += 1,
            None => counts.push((v, 1)),
        }
    }
    let mut best: Option<(&Value, usize)> = None;
    for (v, n) in counts {
        if best.is_none_or(|(_, b)| n > b) {
            best = Some((v, n));
        }
    }
    best.map_or(Value::Missing, |(v, _)| v.clone())
}

fn update(ds: &Dataset, assignment: &[usize], previous: &[Centroid]) -> Vec<Centroid> {
    let mut members = vec![Vec::new(); previous.len()];
    for (row, &cluster) in assignment.iter().enumerate() {
        members[cluster].push(row);
    }
    members
        .iter()
        .zip(previous)
        .map(|(m, prev)| {
            if m.is_empty() {
                prev.clone()
            } else {
                Centroid(
                    (0..ds.n_attributes())
                        .map(|a| mean_or_mode(ds, m, a))
                        .collect(),
                )
            }
        })
        .collect()
}

fn sizes(assignment: &[usize], k: usize) -> Vec<usize> {
    let mut sizes = vec![0; k];
    for &c in assignment {
        sizes[c] += 1;
    }
    sizes
}

/// Run the assign/update loop from explicit starting centroids.
pub fn kmeans_from_centers(
    ds: &Dataset,
    centers: Vec<Centroid>,
    max_iterations: usize,
) -> Result<ClusterModel, ClusterError> {
    if ds.n_rows() == 0 {
        return Err(ClusterError::EmptyDataset);
    }
    if centers.is_empty() {
        return Err(ClusterError::InvalidConfig("k must be at least 1".into()));
    }
    if max_iterations == 0 {
        return Err(ClusterError::InvalidConfig(
            "max_iterations must be at least 1".into(),
        ));
    }
    if let Some(bad) = centers.iter().find(|c| c.0.len() != ds.n_attributes()) {
        return Err(ClusterError::ArityMismatch {
            expected: ds.n_attributes(),
            found: bad.0.len(),
        });
    }

    let metric = DistanceMetric::fit(ds);
    let k = centers.len();
    let mut centroids = centers;
    let mut assignment: Vec<usize> = Vec::new();
    let mut sse_trace = Vec::new();
    let mut converged = false;
    let mut iterations = 0;

    while iterations < max_iterations {
        iterations += 1;
        let (next, pass_sse) = assign(ds, &metric, &centroids);
        sse_trace.push(pass_sse);
        if iterations > 1 && next == assignment {
            converged = true;
            break;
        }
        centroids = update(ds, &next, &centroids);
        assignment = next;
    }

    let sse = total_sse(ds, &metric, &centroids, &assignment);
    Ok(ClusterModel {
        sizes: sizes(&assignment, k),
        centroids,
        assignment,
        iterations,
        converged,
        sse,
        sse_trace,
        chosen_k: k,
    })
}

/// Fit `cfg.k` clusters, seeding the centres with [`initial_center_rows`].
pub fn kmeans(ds: &Dataset, cfg: &KMeansConfig) -> Result<ClusterModel, ClusterError> {
    if ds.n_rows() == 0 {
        return Err(ClusterError::EmptyDataset);
    }
    if cfg.k == 0 {
        return Err(ClusterError::InvalidConfig("k must be at least 1".into()));
    }
    if cfg.k > ds.n_rows() {
        return Err(ClusterError::TooFewRows {
            k: cfg.k,
            rows: ds.n_rows(),
        });
    }
    let centers = initial_center_rows(ds, cfg.k, cfg.seed)
        .into_iter()
        .map(|r| Centroid(ds.rows()[r].clone()))
        .collect();
    kmeans_from_centers(ds, centers, cfg.max_iterations)
}

/// One more assignment pass against the model's centroids.
pub fn reassign(ds: &Dataset, model: &ClusterModel) -> Vec<usize> {
    assign(ds, &DistanceMetric::fit(ds), &model.centroids).0
}

fn total_sse(
    ds: &Dataset,
    metric: &DistanceMetric,
    centroids: &[Centroid],
    assignment: &[usize],
) -> f64 {
    ds.rows()
        .iter()
        .zip(assignment)
        .map(|(row, &c)| metric.squared_unchecked(row, centroids[c].values()))
        .sum()
}

/// Sum over rows of the squared distance to the assigned centroid.
pub fn sse(ds: &Dataset, model: &ClusterModel) -> f64 {
    total_sse(
        ds,
        &DistanceMetric::fit(ds),
        &model.centroids,
        &model.assignment,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tabular::AttributeSpec;

    fn one_dim(values: &[f64]) -> Dataset {
        Dataset::new(
            "r",
            vec![AttributeSpec::numeric("x")],
            values.iter().map(|&v| vec![Value::Number(v)]).collect(),
        )
        .unwrap()
    }

    fn center(x: f64) -> Centroid {
        Centroid(vec![Value::Number(x)])
    }

    #[test]
    fn hand_trace_two_passes() {
        let ds = one_dim(&[0.0, 1.0, 10.0, 11.0]);
        let m = kmeans_from_centers(&ds, vec![center(0.0), center(10.0)], 100).unwrap();
        assert_eq!(m.assignment, [0, 0, 1, 1]);
        assert_eq!(m.centroids, [center(0.5), center(10.5)]);
        assert_eq!(m.iterations, 2);
        assert!(m.converged);
        assert_eq!(m.sizes, [2, 2]);
    }

    #[test]
    fn single_cluster_sse() {
        // rows {0, 2}, centroid 1, range [0, 2]: 0.5^2 + 0.5^2
        let ds = one_dim(&[0.0, 2.0]);
        let m = kmeans(&ds, &KMeansConfig::fixed(1, 3)).unwrap();
        assert_eq!(m.centroids, [center(1.0)]);
        assert!((m.sse - 0.5).abs() < 1e-12);
        assert!((sse(&ds, &m) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn k_equals_n_has_zero_sse() {
        let ds = one_dim(&[3.0, 1.0, 4.0, 1.5, 9.0]);
        let m = kmeans(&ds, &KMeansConfig::fixed(5, 11)).unwrap();
        assert_eq!(m.sse, 0.0);
        assert!(m.sizes.iter().all(|&s| s == 1));
    }

    #[test]
    fn empty_cluster_keeps_its_centroid() {
        let ds = one_dim(&[0.0, 1.0]);
        let m = kmeans_from_centers(&ds, vec![center(0.0), center(100.0)], 10).unwrap();
        assert_eq!(m.sizes, [2, 0]);
        assert_eq!(m.centroids[1], center(100.0));
    }

    #[test]
    fn mode_ties_go_to_first_row() {
        let ds = Dataset::new(
            "r",
            vec![AttributeSpec::text("t")],
            vec![
                vec!["b".into()],
                vec!["a".into()],
                vec!["a".into()],
                vec!["b".into()],
                vec![Value::Missing],
            ],
        )
        .unwrap();
        let members = [0, 1, 2, 3, 4];
        assert_eq!(mean_or_mode(&ds, &members, 0), Value::from("b"));
        assert_eq!(mean_or_mode(&ds, &[4], 0), Value::Missing);
    }

    #[test]
    fn errors() {
        let ds = one_dim(&[1.0, 2.0]);
        assert_eq!(
            kmeans(&ds, &KMeansConfig::fixed(3, 0)),
            Err(ClusterError::TooFewRows { k: 3, rows: 2 })
        );
        assert!(matches!(
            kmeans(&ds, &KMeansConfig::fixed(0, 0)),
            Err(ClusterError::InvalidConfig(_))
        ));
        let empty = one_dim(&[]);
        assert_eq!(
            kmeans(&empty, &KMeansConfig::fixed(1, 0)),
            Err(ClusterError::EmptyDataset)
        );
        assert!(matches!(
            kmeans(&ds, &KMeansConfig::fixed(1, 0).with_max_iterations(0)),
            Err(ClusterError::InvalidConfig(_))
        ));
    }

    #[test]
    fn initial_centers_prefer_distinct_rows() {
        let ds = one_dim(&[1.0, 1.0, 1.0, 2.0]);
        for seed in 0..20 {
            let rows = initial_center_rows(&ds, 2, seed);
            assert_eq!(rows.len(), 2);
            assert!(rows.contains(&3), "seed {seed}: {rows:?}");
        }
        let all = initial_center_rows(&ds, 4, 1);
        let mut sorted = all.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, [0, 1, 2, 3]);
    }

    #[test]
    fn iteration_cap_is_respected() {
        let ds = one_dim(&[0.0, 1.0, 10.0, 11.0]);
        let m = kmeans_from_centers(&ds, vec![center(0.0), center(10.0)], 1).unwrap();
        assert_eq!(m.iterations, 1);
        assert!(!m.converged);
    }
}
