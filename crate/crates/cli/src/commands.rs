use std::fs;
use std::path::{Path, PathBuf};

use log::{debug, info, warn};
use mailminer::analysis::{render_report, summarize, top_senders, Report, ReportFormat};
use mailminer::clustering::{kmeans, select_k, ClusterError, KMeansConfig};
use mailminer::eml::{scan_corpus, EmlError};
use mailminer::tabular::{
    duplicate_profile, filter_discretize, filter_randomize, filter_remove, filter_sample, read_csv,
    records_to_dataset, write_arff, write_csv, AttributeKind, CsvHints, Dataset, MailAttribute,
    TabularError,
};
use thiserror::Error;

use crate::args::{
    ClusterArgs, Command, ConvertArgs, DataFormat, DupesArgs, FilterArgs, TopSendersArgs,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<TabularError> for CliError {
    fn from(e: TabularError) -> Self {
        use TabularError::*;
        match e {
            UnknownAttribute(_)
            | DuplicateAttribute(_)
            | EmptySchema
            | EmptyResultSchema
            | NotNumeric(_)
            | InvalidFraction(_)
            | InvalidBins => CliError::Usage(e.to_string()),
            Io(_) => CliError::Io(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<ClusterError> for CliError {
    fn from(e: ClusterError) -> Self {
        match e {
            ClusterError::InvalidConfig(_) => CliError::Usage(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<EmlError> for CliError {
    fn from(e: EmlError) -> Self {
        match e {
            EmlError::MalformedInput(_) => CliError::Data(e.to_string()),
            _ => CliError::Io(e.to_string()),
        }
    }
}

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Convert(a) => convert(a),
        Command::Cluster(a) => cluster(a),
        Command::Dupes(a) => dupes(a),
        Command::TopSenders(a) => senders(a),
        Command::Filter(a) => filter(a),
    }
}

/// Output is fully rendered before anything is written, so a failing
/// command never leaves a partial file behind.
fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, bytes)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|()| stdout.flush())
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
        }
    }
}

fn scan(dir: &Path) -> Result<mailminer::eml::Corpus, CliError> {
    let corpus = scan_corpus(dir)?;
    for skip in &corpus.skipped {
        warn!("skipped {}: {}", skip.path.display(), skip.reason);
    }
    info!(
        "records: {}, skipped: {}",
        corpus.records.len(),
        corpus.skipped.len()
    );
    Ok(corpus)
}

fn convert(a: ConvertArgs) -> Result<(), CliError> {
    for name in &a.attrs {
        name.parse::<MailAttribute>()
            .map_err(|_| CliError::Usage(format!("unknown attribute `{name}`")))?;
    }
    let corpus = scan(&a.dir)?;
    let ds = records_to_dataset(&corpus.records, &a.attrs)?;
    let mut buf = Vec::new();
    match a.format {
        DataFormat::Csv => write_csv(&ds, &mut buf)?,
        DataFormat::Arff => write_arff(&ds, &mut buf)?,
    }
    emit(a.out.as_deref(), &buf)
}

fn load_csv(path: &PathBuf) -> Result<Dataset, CliError> {
    let file = fs::File::open(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let mut ds = read_csv(std::io::BufReader::new(file), &CsvHints::default())?;
    // canonical columns get their natural kinds; anything else that is
    // entirely numeric becomes numeric; the rest stays text
    for name in ds
        .attribute_names()
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>()
    {
        let kind = match name.parse::<MailAttribute>() {
            Ok(attr) if attr.kind() != AttributeKind::Text => attr.kind(),
            Ok(_) => continue,
            Err(_) => AttributeKind::Numeric,
        };
        let idx = ds.column_index(&name)?;
        if ds.column(idx).all(|v| v.is_missing()) && kind == AttributeKind::Numeric {
            continue;
        }
        match ds.retype(&name, kind) {
            Ok(retyped) => ds = retyped,
            Err(e) => debug!("keeping `{name}` as text: {e}"),
        }
    }
    debug!(
        "loaded {} rows x {} attributes",
        ds.n_rows(),
        ds.n_attributes()
    );
    Ok(ds)
}

fn render(report: Report<'_>, format: ReportFormat, out: Option<&Path>) -> Result<(), CliError> {
    let mut buf = Vec::new();
    render_report(report, format, &mut buf).map_err(|e| CliError::Io(e.to_string()))?;
    emit(out, &buf)
}

fn cluster(a: ClusterArgs) -> Result<(), CliError> {
    let ds = load_csv(&a.csv)?;
    let max_iter = a.max_iter as usize;
    let model = match (a.k, a.kmax) {
        (Some(k), _) => kmeans(
            &ds,
            &KMeansConfig::fixed(k as usize, a.seed).with_max_iterations(max_iter),
        )?,
        (None, Some(kmax)) => {
            let sel = select_k(
                &ds,
                &KMeansConfig::auto(kmax as usize, a.seed).with_max_iterations(max_iter),
            )?;
            for (k, s) in &sel.silhouettes {
                debug!("k={k} silhouette={s:.6}");
            }
            sel.model
        }
        (None, None) => {
            return Err(CliError::Usage(
                "either --k or --auto-k --kmax is required".into(),
            ))
        }
    };
    if !model.converged {
        warn!(
            "stopped after {} iterations without converging",
            model.iterations
        );
    }
    let summary = summarize(&model, &ds);
    render(
        Report::Clusters(&summary),
        a.report.report,
        a.report.out.as_deref(),
    )
}

fn dupes(a: DupesArgs) -> Result<(), CliError> {
    let ds = load_csv(&a.csv)?;
    let names: Vec<String> = match a.attrs {
        Some(names) => names,
        None => ds.attribute_names().into_iter().map(String::from).collect(),
    };
    let profile = duplicate_profile(&ds, &names)?;
    render(
        Report::Duplicates(&profile),
        a.report.report,
        a.report.out.as_deref(),
    )
}

fn senders(a: TopSendersArgs) -> Result<(), CliError> {
    let corpus = scan(&a.dir)?;
    let report = top_senders(&corpus.records, a.n as usize);
    render(
        Report::Senders(&report),
        a.report.report,
        a.report.out.as_deref(),
    )
}

fn filter(a: FilterArgs) -> Result<(), CliError> {
    let ds = load_csv(&a.csv)?;
    let out = if let Some(names) = &a.remove {
        filter_remove(&ds, names)?
    } else if let Some(fraction) = a.sample {
        filter_sample(&ds, fraction, a.seed)?
    } else if a.shuffle {
        filter_randomize(&ds, a.seed)
    } else if let Some(spec) = &a.discretize {
        filter_discretize(&ds, &spec.attribute, spec.bins)?
    } else {
        return Err(CliError::Usage("no filter operation given".into()));
    };
    let mut buf = Vec::new();
    write_csv(&out, &mut buf)?;
    emit(a.out.as_deref(), &buf)
}
