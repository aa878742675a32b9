use std::path::{Path, PathBuf};

use rayon::prelude::*;
use walkdir::WalkDir;

use super::{extract_record, read_eml, EmailRecord, EmlError};

/// A file that was found but could not be turned into a record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedFile {
    /// Path relative to the scanned directory.
    pub path: PathBuf,
    pub reason: String,
}

/// Result of a corpus scan. `records[i]` was read from `sources[i]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    pub records: Vec<EmailRecord>,
    pub sources: Vec<PathBuf>,
    pub skipped: Vec<SkippedFile>,
}

fn is_eml(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("eml"))
}

/// Recursively collect every `.eml` file under `dir` and extract one record
/// per parseable file. Files are processed in lexicographic byte order of
/// their relative paths, whatever order the filesystem lists them in.
pub fn scan_corpus(dir: &Path) -> Result<Corpus, EmlError> {
    let unreadable = |reason: String| EmlError::DirectoryUnreadable {
        path: dir.to_path_buf(),
        reason,
    };
    std::fs::read_dir(dir).map_err(|e| unreadable(e.to_string()))?;

    let mut files = Vec::new();
    for entry in WalkDir::new(dir).follow_links(false) {
        let entry = entry.map_err(|e| unreadable(e.to_string()))?;
        if entry.file_type().is_file() && is_eml(entry.path()) {
            let rel = entry
                .path()
                .strip_prefix(dir)
                .unwrap_or(entry.path())
                .to_path_buf();
            files.push(rel);
        }
    }
    files.sort_by(|a, b| {
        a.as_os_str()
            .as_encoded_bytes()
            .cmp(b.as_os_str().as_encoded_bytes())
    });

    let parsed: Vec<Result<EmailRecord, EmlError>> = files
        .par_iter()
        .map(|rel| read_eml(&dir.join(rel)).map(|raw| extract_record(&raw)))
        .collect();

    let mut corpus = Corpus::default();
    for (rel, result) in files.into_iter().zip(parsed) {
        match result {
            Ok(record) => {
                corpus.records.push(record);
                corpus.sources.push(rel);
            }
            Err(e) => corpus.skipped.push(SkippedFile {
                path: rel,
                reason: e.to_string(),
            }),
        }
    }
    Ok(corpus)
}
