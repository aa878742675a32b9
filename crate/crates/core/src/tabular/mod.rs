//! Typed datasets, CSV/ARFF interchange and the preprocessing filters.
//!
//! A [`Dataset`] is an immutable value: an ordered schema of
//! [`AttributeSpec`]s plus rows of [`Value`]s. Every filter returns a new
//! dataset and leaves its input untouched.

mod arff;
mod csv;
mod dupes;
mod emails;
mod filters;

use std::collections::HashSet;

use thiserror::Error;

pub use self::arff::write_arff;
pub use self::csv::{escape_csv_field, read_csv, write_csv, CsvHints};
pub use self::dupes::{duplicate_profile, DuplicateProfile};
pub use self::emails::{records_to_dataset, MailAttribute};
pub use self::filters::{filter_discretize, filter_randomize, filter_remove, filter_sample};

/// Serialized form of the missing marker in both CSV and ARFF.
pub const MISSING: &str = "?";

#[derive(Debug, Error)]
pub enum TabularError {
    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),
    #[error("duplicate attribute `{0}`")]
    DuplicateAttribute(String),
    #[error("a dataset needs at least one attribute")]
    EmptySchema,
    #[error("removing these attributes would leave no columns")]
    EmptyResultSchema,
    #[error("attribute `{0}` is not numeric")]
    NotNumeric(String),
    #[error("nominal attribute `{0}` needs a non-empty domain without duplicates")]
    InvalidNominalDomain(String),
    #[error("row {row} has {found} cells, schema has {expected}")]
    ArityMismatch {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {row}, attribute `{attribute}`: cell does not match the attribute kind")]
    KindMismatch { row: usize, attribute: String },
    #[error("row {row}, attribute `{attribute}`: `{value}` is not in the nominal domain")]
    NotInDomain {
        row: usize,
        attribute: String,
        value: String,
    },
    #[error("line {line}: expected {expected} fields, found {found}")]
    RaggedRow {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}, attribute `{attribute}`: `{value}` is not a finite number")]
    BadNumber {
        line: usize,
        attribute: String,
        value: String,
    },
    #[error("line {line}: malformed quoted field")]
    BadQuote { line: usize },
    #[error("input has no header row")]
    MissingHeader,
    #[error("sample fraction must be in (0, 1], got {0}")]
    InvalidFraction(f64),
    #[error("bin count must be at least 1")]
    InvalidBins,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Column kind. Date columns hold UTC epoch seconds and behave numerically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AttributeKind {
    Numeric,
    Nominal(Vec<String>),
    Text,
    Date,
}

impl AttributeKind {
    /// True for kinds whose cells are numbers.
    pub fn is_numeric(&self) -> bool {
        matches!(self, AttributeKind::Numeric | AttributeKind::Date)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeSpec {
    pub name: String,
    pub kind: AttributeKind,
}

impl AttributeSpec {
    pub fn new(name: impl Into<String>, kind: AttributeKind) -> Self {
        Self {
            name: name.into(),
            kind,
        }
    }

    pub fn numeric(name: impl Into<String>) -> Self {
        Self::new(name, AttributeKind::Numeric)
    }

    pub fn date(name: impl Into<String>) -> Self {
        Self::new(name, AttributeKind::Date)
    }

    pub fn text(name: impl Into<String>) -> Self {
        Self::new(name, AttributeKind::Text)
    }

    pub fn nominal<S: Into<String>>(
        name: impl Into<String>,
        domain: impl IntoIterator<Item = S>,
    ) -> Self {
        Self::new(
            name,
            AttributeKind::Nominal(domain.into_iter().map(Into::into).collect()),
        )
    }

    fn validate(&self) -> Result<(), TabularError> {
        if let AttributeKind::Nominal(domain) = &self.kind {
            let unique: HashSet<&String> = domain.iter().collect();
            if domain.is_empty() || unique.len() != domain.len() {
                return Err(TabularError::InvalidNominalDomain(self.name.clone()));
            }
        }
        Ok(())
    }
}

/// A single cell. Numeric and date cells are `Number`, nominal and text
/// cells are `Text`.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Missing,
    Number(f64),
    Text(String),
}

impl Value {
    pub fn is_missing(&self) -> bool {
        matches!(self, Value::Missing)
    }

    pub fn as_number(&self) -> Option<f64> {
        match self {
            Value::Number(x) => Some(*x),
            _ => None,
        }
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            Value::Text(s) => Some(s),
            _ => None,
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Number(x)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        v.map_or(Value::Missing, Into::into)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    relation: String,
    schema: Vec<AttributeSpec>,
    rows: Vec<Vec<Value>>,
}

impl Dataset {
    /// Build a dataset, checking every schema and cell invariant.
    pub fn new(
        relation: impl Into<String>,
        schema: Vec<AttributeSpec>,
        rows: Vec<Vec<Value>>,
    ) -> Result<Self, TabularError> {
        if schema.is_empty() {
            return Err(TabularError::EmptySchema);
        }
        let mut seen = HashSet::new();
        for spec in &schema {
            if !seen.insert(spec.name.as_str()) {
                return Err(TabularError::DuplicateAttribute(spec.name.clone()));
            }
            spec.validate()?;
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != schema.len() {
                return Err(TabularError::ArityMismatch {
                    row: r,
                    expected: schema.len(),
                    found: row.len(),
                });
            }
            for (spec, cell) in schema.iter().zip(row) {
                check_cell(r, spec, cell)?;
            }
        }
        Ok(Self {
            relation: relation.into(),
            schema,
            rows,
        })
    }

    pub fn relation(&self) -> &str {
        &self.relation
    }

    pub fn schema(&self) -> &[AttributeSpec] {
        &self.schema
    }

    pub fn rows(&self) -> &[Vec<Value>] {
        &self.rows
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_attributes(&self) -> usize {
        self.schema.len()
    }

    pub fn attribute_names(&self) -> Vec<&str> {
        self.schema.iter().map(|a| a.name.as_str()).collect()
    }

    pub fn column_index(&self, name: &str) -> Result<usize, TabularError> {
        self.schema
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| TabularError::UnknownAttribute(name.to_string()))
    }

    pub fn column(&self, index: usize) -> impl Iterator<Item = &Value> + '_ {
        self.rows.iter().map(move |row| &row[index])
    }

    /// Reinterpret a column under a new kind, converting cells where needed
    /// (text to number, text to nominal with an inferred domain when the
    /// requested domain is empty, number to text).
    pub fn retype(&self, name: &str, kind: AttributeKind) -> Result<Dataset, TabularError> {
        let idx = self.column_index(name)?;
        let kind = match kind {
            AttributeKind::Nominal(d) if d.is_empty() => {
                AttributeKind::Nominal(infer_domain(self.column(idx).filter_map(cell_label)))
            }
            k => k,
        };
        let mut rows = self.rows.clone();
        for (r, row) in rows.iter_mut().enumerate() {
            let cell = std::mem::replace(&mut row[idx], Value::Missing);
            row[idx] = convert_cell(cell, &kind).ok_or_else(|| TabularError::BadNumber {
                line: r + 1,
                attribute: name.to_string(),
                value: cell_label(&self.rows[r][idx]).unwrap_or_default(),
            })?;
        }
        let mut schema = self.schema.clone();
        schema[idx].kind = kind;
        Dataset::new(self.relation.clone(), schema, rows)
    }

    pub(crate) fn from_parts_unchecked(
        relation: String,
        schema: Vec<AttributeSpec>,
        rows: Vec<Vec<Value>>,
    ) -> Self {
        debug_assert!(Dataset::new(relation.clone(), schema.clone(), rows.clone()).is_ok());
        Self {
            relation,
            schema,
            rows,
        }
    }
}

fn cell_label(v: &Value) -> Option<String> {
    match v {
        Value::Missing => None,
        Value::Number(x) => Some(format_number(*x)),
        Value::Text(s) => Some(s.clone()),
    }
}

fn convert_cell(cell: Value, kind: &AttributeKind) -> Option<Value> {
    Some(match (cell, kind) {
        (Value::Missing, _) => Value::Missing,
        (Value::Number(x), k) if k.is_numeric() => Value::Number(x),
        (Value::Number(x), _) => Value::Text(format_number(x)),
        (Value::Text(s), k) if k.is_numeric() => Value::Number(parse_number(&s)?),
        (Value::Text(s), _) => Value::Text(s),
    })
}

/// Labels in first-occurrence order.
pub(crate) fn infer_domain(values: impl Iterator<Item = String>) -> Vec<String> {
    let mut seen = HashSet::new();
    values.filter(|v| seen.insert(v.clone())).collect()
}

fn check_cell(row: usize, spec: &AttributeSpec, cell: &Value) -> Result<(), TabularError> {
    let mismatch = || TabularError::KindMismatch {
        row,
        attribute: spec.name.clone(),
    };
    match (&spec.kind, cell) {
        (_, Value::Missing) => Ok(()),
        (k, Value::Number(x)) if k.is_numeric() => {
            if x.is_finite() {
                Ok(())
            } else {
                Err(mismatch())
            }
        }
        (AttributeKind::Text, Value::Text(_)) => Ok(()),
        (AttributeKind::Nominal(domain), Value::Text(s)) => {
            if domain.contains(s) {
                Ok(())
            } else {
                Err(TabularError::NotInDomain {
                    row,
                    attribute: spec.name.clone(),
                    value: s.clone(),
                })
            }
        }
        _ => Err(mismatch()),
    }
}

/// Shortest text that parses back to exactly `x`.
pub(crate) fn format_number(x: f64) -> String {
    // normalise -0 so equal cells always print identically
    if x == 0.0 {
        "0".to_string()
    } else {
        x.to_string()
    }
}

pub(crate) fn parse_number(s: &str) -> Option<f64> {
    s.parse::<f64>().ok().filter(|x| x.is_finite())
}
