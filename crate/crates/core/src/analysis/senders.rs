use std::collections::HashMap;

use crate::eml::EmailRecord;

/// Bucket for records without a usable From address.
pub const UNKNOWN_SENDER: &str = "(unknown)";

#[derive(Debug, Clone, PartialEq)]
pub struct SenderCount {
    pub address: String,
    pub count: usize,
    /// `count / total`.
    pub share: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SenderReport {
    pub entries: Vec<SenderCount>,
    /// Number of records counted, including those outside the top n.
    pub total: usize,
}

/// The `n` most frequent senders, by count descending then address
/// ascending.
pub fn top_senders(records: &[EmailRecord], n: usize) -> SenderReport {
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for r in records {
        *counts
            .entry(r.from_addr.as_deref().unwrap_or(UNKNOWN_SENDER))
            .or_default() += 1;
    }
    let mut ranked: Vec<(&str, usize)> = counts.into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));

    let total = records.len();
    SenderReport {
        entries: ranked
            .into_iter()
            .take(n)
            .map(|(address, count)| SenderCount {
                address: address.to_string(),
                count,
                share: count as f64 / total as f64,
            })
            .collect(),
        total,
    }
}
