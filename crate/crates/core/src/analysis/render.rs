use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use thiserror::Error;

use super::{ClusterSummary, SenderReport};
use crate::tabular::{escape_csv_field, DuplicateProfile};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unsupported report format `{0}` (expected text, csv or svg)")]
pub struct UnsupportedFormat(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Csv,
    SvgBars,
}

impl FromStr for ReportFormat {
    type Err = UnsupportedFormat;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "csv" => Ok(ReportFormat::Csv),
            "svg" | "svg-bars" => Ok(ReportFormat::SvgBars),
            other => Err(UnsupportedFormat(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Report<'a> {
    Clusters(&'a ClusterSummary),
    Duplicates(&'a DuplicateProfile),
    Senders(&'a SenderReport),
}

impl Report<'_> {
    fn title(&self) -> String {
        match self {
            Report::Clusters(s) => format!("Clustered instances (k={})", s.chosen_k),
            Report::Duplicates(p) => format!("Duplicate instances over {}", p.projection.join(",")),
            Report::Senders(_) => "Top senders".to_string(),
        }
    }

    /// One labelled count per bar.
    fn bars(&self) -> Vec<(String, usize)> {
        match self {
            Report::Clusters(s) => s
                .clusters
                .iter()
                .map(|c| (format!("cluster {} ({}%)", c.index, c.percent), c.size))
                .collect(),
            Report::Duplicates(p) => vec![
                ("different".to_string(), p.n_different),
                ("identical".to_string(), p.n_identical),
            ],
            Report::Senders(r) => r
                .entries
                .iter()
                .map(|e| (e.address.clone(), e.count))
                .collect(),
        }
    }
}

pub fn render_report<W: Write>(
    report: Report<'_>,
    format: ReportFormat,
    mut sink: W,
) -> std::io::Result<()> {
    let out = match format {
        ReportFormat::Text => text(report),
        ReportFormat::Csv => csv(report),
        ReportFormat::SvgBars => svg(report),
    };
    sink.write_all(out.as_bytes())?;
    sink.flush()
}

fn text(report: Report<'_>) -> String {
    let mut out = String::new();
    match report {
        Report::Clusters(s) => {
            let _ = writeln!(out, "Clustered instances (k={})", s.chosen_k);
            let _ = writeln!(out, "Instances: {}", s.total);
            let _ = writeln!(out, "Attributes: {}", s.attributes.join(","));
            let _ = writeln!(out, "Iterations: {}", s.iterations);
            for c in &s.clusters {
                let _ = writeln!(out, "{}  {} ({:>3}%)", c.index, c.size, c.percent);
            }
        }
        Report::Duplicates(p) => {
            let _ = writeln!(out, "Attributes: {}", p.projection.join(","));
            let _ = writeln!(out, "Instances: {}", p.n_rows());
            let _ = writeln!(
                out,
                "different: {}, identical: {}",
                p.n_different, p.n_identical
            );
        }
        Report::Senders(r) => {
            out.push_str("sender count share\n");
            for e in &r.entries {
                let _ = writeln!(out, "{} {} {:.4}", e.address, e.count, e.share);
            }
        }
    }
    out
}

fn csv(report: Report<'_>) -> String {
    let mut out = String::new();
    match report {
        Report::Clusters(s) => {
            out.push_str("cluster,size,percent\n");
            for c in &s.clusters {
                let _ = writeln!(out, "{},{},{}", c.index, c.size, c.percent);
            }
        }
        Report::Duplicates(p) => {
            out.push_str("attributes,different,identical\n");
            let _ = writeln!(
                out,
                "{},{},{}",
                escape_csv_field(&p.projection.join(",")),
                p.n_different,
                p.n_identical
            );
        }
        Report::Senders(r) => {
            out.push_str("sender,count,share\n");
            for e in &r.entries {
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    escape_csv_field(&e.address),
                    e.count,
                    e.share
                );
            }
        }
    }
    out
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            // characters XML 1.0 cannot carry at all
            c if (c as u32) < 0x20 && !matches!(c, '\t' | '\n' | '\r') => out.push('\u{FFFD}'),
            c => out.push(c),
        }
    }
    out
}

const LABEL_WIDTH: f64 = 240.0;
const BAR_MAX: f64 = 400.0;
const ROW_HEIGHT: f64 = 28.0;
const TOP: f64 = 40.0;

fn svg(report: Report<'_>) -> String {
    let bars = report.bars();
    let max = bars.iter().map(|(_, c)| *c).max().unwrap_or(0);
    let width = LABEL_WIDTH + BAR_MAX + 80.0;
    let height = TOP + ROW_HEIGHT * bars.len() as f64 + 20.0;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">"
    );
    let title = xml_escape(&report.title());
    let _ = writeln!(out, "  <title>{title}</title>");
    let _ = writeln!(
        out,
        "  <text x=\"10\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">{title}</text>"
    );
    for (i, (label, count)) in bars.iter().enumerate() {
        let y = TOP + ROW_HEIGHT * i as f64;
        let len = if max == 0 {
            0.0
        } else {
            BAR_MAX * *count as f64 / max as f64
        };
        let _ = writeln!(
            out,
            "  <text x=\"{:.0}\" y=\"{:.0}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">{}</text>",
            LABEL_WIDTH - 8.0,
            y + 15.0,
            xml_escape(label)
        );
        let _ = writeln!(
            out,
            "  <rect x=\"{LABEL_WIDTH:.0}\" y=\"{y:.0}\" width=\"{len:.2}\" height=\"20\" fill=\"#4e79a7\"/>"
        );
        let _ = writeln!(
            out,
            "  <text x=\"{:.2}\" y=\"{:.0}\" font-family=\"sans-serif\" font-size=\"12\">{count}</text>",
            LABEL_WIDTH + len + 6.0,
            y + 15.0
        );
    }
    out.push_str("</svg>\n");
    out
}
