use std::collections::HashMap;

use super::{Dataset, TabularError, Value};

/// How many rows are unique versus repeated under an attribute projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DuplicateProfile {
    pub projection: Vec<String>,
    /// Rows whose projected tuple occurs exactly once.
    pub n_different: usize,
    /// Rows whose projected tuple occurs two or more times.
    pub n_identical: usize,
}

impl DuplicateProfile {
    pub fn n_rows(&self) -> usize {
        self.n_different + self.n_identical
    }
}

/// Hashable view of a cell; the missing marker equals itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum CellKey<'a> {
    Missing,
    Number(u64),
    Text(&'a str),
}

impl<'a> From<&'a Value> for CellKey<'a> {
    fn from(v: &'a Value) -> Self {
        match v {
            Value::Missing => CellKey::Missing,
            // +0.0 and -0.0 compare equal as cells
            Value::Number(x) => CellKey::Number(if *x == 0.0 { 0 } else { x.to_bits() }),
            Value::Text(s) => CellKey::Text(s),
        }
    }
}

pub fn duplicate_profile<S: AsRef<str>>(
    ds: &Dataset,
    projection: &[S],
) -> Result<DuplicateProfile, TabularError> {
    let columns = projection
        .iter()
        .map(|name| ds.column_index(name.as_ref()))
        .collect::<Result<Vec<_>, _>>()?;

    let keys: Vec<Vec<CellKey>> = ds
        .rows()
        .iter()
        .map(|row| columns.iter().map(|&c| CellKey::from(&row[c])).collect())
        .collect();
    let mut multiplicity: HashMap<&[CellKey], usize> = HashMap::new();
    for key in &keys {
        *multiplicity.entry(key.as_slice()).or_default() += 1;
    }
    let n_different = keys
        .iter()
        .filter(|k| multiplicity[k.as_slice()] == 1)
        .count();

    Ok(DuplicateProfile {
        projection: projection.iter().map(|s| s.as_ref().to_string()).collect(),
        n_different,
        n_identical: keys.len() - n_different,
    })
}
