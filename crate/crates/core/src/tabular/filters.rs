use super::{AttributeKind, AttributeSpec, Dataset, TabularError, Value};
use crate::rng::SplitMix64;

/// Drop the named columns, keeping the rest in order.
pub fn filter_remove<S: AsRef<str>>(ds: &Dataset, names: &[S]) -> Result<Dataset, TabularError> {
    let mut drop = vec![false; ds.n_attributes()];
    for name in names {
        drop[ds.column_index(name.as_ref())?] = true;
    }
    if drop.iter().all(|&d| d) {
        return Err(TabularError::EmptyResultSchema);
    }
    let schema = ds
        .schema()
        .iter()
        .zip(&drop)
        .filter(|(_, &d)| !d)
        .map(|(a, _)| a.clone())
        .collect();
    let rows = ds
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .zip(&drop)
                .filter(|(_, &d)| !d)
                .map(|(c, _)| c.clone())
                .collect()
        })
        .collect();
    Ok(Dataset::from_parts_unchecked(
        ds.relation().to_string(),
        schema,
        rows,
    ))
}

/// Keep `floor(fraction * n)` rows drawn without replacement, in their
/// original relative order.
///
/// The product gets a 1e-9 nudge before flooring so that decimal fractions
/// such as 0.29 of 100 select 29 rows rather than 28.
pub fn filter_sample(ds: &Dataset, fraction: f64, seed: u64) -> Result<Dataset, TabularError> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(TabularError::InvalidFraction(fraction));
    }
    let n = ds.n_rows();
    let take = ((fraction * n as f64 + 1e-9).floor() as usize).min(n);
    let mut chosen = SplitMix64::new(seed).permutation(n);
    chosen.truncate(take);
    chosen.sort_unstable();
    let rows = chosen.into_iter().map(|i| ds.rows()[i].clone()).collect();
    Ok(Dataset::from_parts_unchecked(
        ds.relation().to_string(),
        ds.schema().to_vec(),
        rows,
    ))
}

/// Seeded Fisher–Yates shuffle of the rows.
pub fn filter_randomize(ds: &Dataset, seed: u64) -> Dataset {
    let mut rows = ds.rows().to_vec();
    SplitMix64::new(seed).shuffle(&mut rows);
    Dataset::from_parts_unchecked(ds.relation().to_string(), ds.schema().to_vec(), rows)
}

/// Replace a numeric column with `n_bins` equal-width nominal bins
/// `b1..bN` over the observed `[min, max]`. Bins are half-open except the
/// last, which also holds `max`.
pub fn filter_discretize(ds: &Dataset, name: &str, n_bins: usize) -> Result<Dataset, TabularError> {
    let idx = ds.column_index(name)?;
    if !ds.schema()[idx].kind.is_numeric() {
        return Err(TabularError::NotNumeric(name.to_string()));
    }
    if n_bins == 0 {
        return Err(TabularError::InvalidBins);
    }

    let (min, max) = ds
        .column(idx)
        .filter_map(Value::as_number)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
            (lo.min(x), hi.max(x))
        });
    let labels: Vec<String> = (1..=n_bins).map(|b| format!("b{b}")).collect();
    let bin_of = |x: f64| -> usize {
        let span = max - min;
        if span <= 0.0 {
            return 0;
        }
        let pos = (x - min) / span * n_bins as f64;
        (pos.floor() as usize).min(n_bins - 1)
    };

    let rows = ds
        .rows()
        .iter()
        .map(|row| {
            let mut row = row.clone();
            if let Value::Number(x) = row[idx] {
                row[idx] = Value::Text(labels[bin_of(x)].clone());
            }
            row
        })
        .collect();
    let mut schema = ds.schema().to_vec();
    schema[idx] = AttributeSpec::new(name, AttributeKind::Nominal(labels));
    Ok(Dataset::from_parts_unchecked(
        ds.relation().to_string(),
        schema,
        rows,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn numbers(values: &[Option<f64>]) -> Dataset {
        Dataset::new(
            "r",
            vec![AttributeSpec::numeric("x"), AttributeSpec::text("id")],
            values
                .iter()
                .enumerate()
                .map(|(i, v)| vec![Value::from(*v), Value::Text(i.to_string())])
                .collect(),
        )
        .unwrap()
    }

    fn labels(ds: &Dataset) -> Vec<Option<String>> {
        ds.column(0)
            .map(|v| v.as_text().map(str::to_string))
            .collect()
    }

    #[test]
    fn discretize_half_open_bins() {
        let ds = numbers(&[Some(0.0), Some(5.0), Some(10.0)]);
        let out = filter_discretize(&ds, "x", 2).unwrap();
        assert_eq!(
            labels(&out),
            [Some("b1".into()), Some("b2".into()), Some("b2".into())]
        );
        assert_eq!(
            out.schema()[0].kind,
            AttributeKind::Nominal(vec!["b1".into(), "b2".into()])
        );
    }

    #[test]
    fn discretize_missing_and_constant() {
        let out = filter_discretize(&numbers(&[None, Some(3.0), Some(3.0)]), "x", 4).unwrap();
        assert_eq!(labels(&out), [None, Some("b1".into()), Some("b1".into())]);
        let out = filter_discretize(&numbers(&[None, None]), "x", 3).unwrap();
        assert_eq!(labels(&out), [None, None]);
    }

    #[test]
    fn discretize_errors() {
        let ds = numbers(&[Some(1.0)]);
        assert!(matches!(
            filter_discretize(&ds, "id", 2),
            Err(TabularError::NotNumeric(_))
        ));
        assert!(matches!(
            filter_discretize(&ds, "x", 0),
            Err(TabularError::InvalidBins)
        ));
        assert!(matches!(
            filter_discretize(&ds, "nope", 2),
            Err(TabularError::UnknownAttribute(_))
        ));
    }

    #[test]
    fn remove_columns() {
        let ds = numbers(&[Some(1.0)]);
        let out = filter_remove(&ds, &["x"]).unwrap();
        assert_eq!(out.attribute_names(), ["id"]);
        assert!(matches!(
            filter_remove(&ds, &["x", "id"]),
            Err(TabularError::EmptyResultSchema)
        ));
        assert!(matches!(
            filter_remove(&ds, &["q"]),
            Err(TabularError::UnknownAttribute(_))
        ));
    }

    #[test]
    fn sample_sizes_and_order() {
        let ds = numbers(&(0..100).map(|i| Some(i as f64)).collect::<Vec<_>>());
        let out = filter_sample(&ds, 0.29, 3).unwrap();
        assert_eq!(out.n_rows(), 29);
        let xs: Vec<f64> = out.column(0).filter_map(Value::as_number).collect();
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(filter_sample(&ds, 1.0, 9).unwrap(), ds);
        assert_eq!(filter_sample(&ds, 0.001, 9).unwrap().n_rows(), 0);
        for bad in [0.0, -0.5, 1.5, f64::NAN] {
            assert!(matches!(
                filter_sample(&ds, bad, 1),
                Err(TabularError::InvalidFraction(_))
            ));
        }
    }

    #[test]
    fn randomize_is_seeded_permutation() {
        let ds = numbers(&(0..20).map(|i| Some(i as f64)).collect::<Vec<_>>());
        let a = filter_randomize(&ds, 5);
        assert_eq!(a, filter_randomize(&ds, 5));
        assert_ne!(a.rows(), ds.rows());
        let mut xs: Vec<f64> = a.column(0).filter_map(Value::as_number).collect();
        xs.sort_by(f64::total_cmp);
        assert_eq!(xs, (0..20).map(|i| i as f64).collect::<Vec<_>>());
    }
}
