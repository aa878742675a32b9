//! Reports built from fitted models and record sets: cluster shares, sender
//! rankings and duplicate profiles, rendered as text, CSV or SVG bars.

mod render;
mod senders;
mod summary;

pub use render::{render_report, Report, ReportFormat, UnsupportedFormat};
pub use senders::{top_senders, SenderCount, SenderReport, UNKNOWN_SENDER};
pub use summary::{rounded_percent, summarize, ClusterShare, ClusterSummary};
