use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use mailminer::analysis::ReportFormat;

#[derive(Debug, Parser)]
#[command(
    name = "mailminer",
    version,
    about = "Mine .eml corpora: convert, cluster and report"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert a directory of .eml files into a CSV or ARFF dataset
    Convert(ConvertArgs),
    /// Cluster a CSV dataset with k-means
    Cluster(ClusterArgs),
    /// Count unique and repeated instances over a set of attributes
    Dupes(DupesArgs),
    /// Rank sender addresses by message count
    TopSenders(TopSendersArgs),
    /// Apply one preprocessing filter to a CSV dataset
    Filter(FilterArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DataFormat {
    Csv,
    Arff,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    /// Directory scanned recursively for .eml files
    pub dir: PathBuf,
    /// Comma-separated attributes: Date, MessageId, CC, From, Subject, HTML
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "Date,MessageId,CC,From,Subject,HTML"
    )]
    pub attrs: Vec<String>,
    #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
    pub format: DataFormat,
    /// Output file (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_report(s: &str) -> Result<ReportFormat, String> {
    s.parse()
        .map_err(|e: mailminer::analysis::UnsupportedFormat| e.to_string())
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Report format: text, csv or svg
    #[arg(long, default_value = "text", value_parser = parse_report)]
    pub report: ReportFormat,
    /// Output file (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    pub csv: PathBuf,
    /// Fixed number of clusters
    #[arg(
        long,
        value_parser = clap::value_parser!(u64).range(1..),
        required_unless_present = "auto_k",
        conflicts_with = "auto_k"
    )]
    pub k: Option<u64>,
    /// Pick k in 2..=kmax by mean silhouette
    #[arg(long, requires = "kmax")]
    pub auto_k: bool,
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..), requires = "auto_k")]
    pub kmax: Option<u64>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long = "max-iter", default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_iter: u64,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct DupesArgs {
    pub csv: PathBuf,
    /// Attributes forming the compared tuple (all columns when omitted)
    #[arg(long, value_delimiter = ',')]
    pub attrs: Option<Vec<String>>,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct TopSendersArgs {
    pub dir: PathBuf,
    #[arg(short = 'n', default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinSpec {
    pub attribute: String,
    pub bins: usize,
}

fn parse_bins(s: &str) -> Result<BinSpec, String> {
    let (name, bins) = s
        .rsplit_once(':')
        .ok_or_else(|| format!("expected NAME:BINS, got `{s}`"))?;
    let bins: usize = bins
        .parse()
        .map_err(|_| format!("bad bin count `{bins}`"))?;
    if name.is_empty() || bins == 0 {
        return Err(format!("expected NAME:BINS with BINS >= 1, got `{s}`"));
    }
    Ok(BinSpec {
        attribute: name.to_string(),
        bins,
    })
}

#[derive(Debug, Args)]
#[command(group(
    ArgGroup::new("operation")
        .required(true)
        .args(["remove", "sample", "shuffle", "discretize"])
))]
pub struct FilterArgs {
    pub csv: PathBuf,
    /// Drop these comma-separated attributes
    #[arg(long, value_delimiter = ',')]
    pub remove: Option<Vec<String>>,
    /// Keep floor(F * rows) rows, 0 < F <= 1
    #[arg(long, value_name = "F")]
    pub sample: Option<f64>,
    /// Shuffle the rows
    #[arg(long)]
    pub shuffle: bool,
    /// Replace a numeric column by equal-width bins, e.g. Date:4
    #[arg(long, value_name = "NAME:BINS", value_parser = parse_bins)]
    pub discretize: Option<BinSpec>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Output file (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}
