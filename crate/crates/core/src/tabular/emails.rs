use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use super::{AttributeKind, AttributeSpec, Dataset, TabularError, Value};
use crate::eml::EmailRecord;

/// The six canonical message attributes, in canonical column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MailAttribute {
    Date,
    MessageId,
    Cc,
    From,
    Subject,
    Html,
}

impl MailAttribute {
    pub const ALL: [MailAttribute; 6] = [
        MailAttribute::Date,
        MailAttribute::MessageId,
        MailAttribute::Cc,
        MailAttribute::From,
        MailAttribute::Subject,
        MailAttribute::Html,
    ];

    /// Column name; matching is case-sensitive.
    pub fn name(self) -> &'static str {
        match self {
            MailAttribute::Date => "Date",
            MailAttribute::MessageId => "MessageId",
            MailAttribute::Cc => "CC",
            MailAttribute::From => "From",
            MailAttribute::Subject => "Subject",
            MailAttribute::Html => "HTML",
        }
    }

    pub fn kind(self) -> AttributeKind {
        match self {
            MailAttribute::Date => AttributeKind::Date,
            MailAttribute::Html => AttributeKind::Nominal(vec!["yes".into(), "no".into()]),
            _ => AttributeKind::Text,
        }
    }

    fn value(self, record: &EmailRecord) -> Value {
        match self {
            MailAttribute::Date => record.date.map(|d| d as f64).into(),
            MailAttribute::MessageId => record.message_id.clone().into(),
            MailAttribute::Cc if record.cc.is_empty() => Value::Missing,
            MailAttribute::Cc => Value::Text(record.cc.join(";")),
            MailAttribute::From => record.from_addr.clone().into(),
            MailAttribute::Subject => record.subject.clone().into(),
            MailAttribute::Html => Value::from(if record.has_html { "yes" } else { "no" }),
        }
    }
}

impl fmt::Display for MailAttribute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MailAttribute {
    type Err = TabularError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MailAttribute::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| TabularError::UnknownAttribute(s.to_string()))
    }
}

/// Tabulate records, one row each, keeping the columns named in `selected`
/// in the order given. The relation is named `emails`.
pub fn records_to_dataset<S: AsRef<str>>(
    records: &[EmailRecord],
    selected: &[S],
) -> Result<Dataset, TabularError> {
    if selected.is_empty() {
        return Err(TabularError::EmptySchema);
    }
    let attrs = selected
        .iter()
        .map(|s| s.as_ref().parse::<MailAttribute>())
        .collect::<Result<Vec<_>, _>>()?;
    let mut seen = HashSet::new();
    if let Some(dup) = attrs.iter().find(|a| !seen.insert(**a)) {
        return Err(TabularError::DuplicateAttribute(dup.name().to_string()));
    }

    let schema = attrs
        .iter()
        .map(|a| AttributeSpec::new(a.name(), a.kind()))
        .collect();
    let rows = records
        .iter()
        .map(|r| attrs.iter().map(|a| a.value(r)).collect())
        .collect();
    Dataset::new("emails", schema, rows)
}
