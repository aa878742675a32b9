//! Ingestion of `.eml` files into structured records.
//!
//! The pipeline is `bytes -> RawEmail -> EmailRecord`. [`parse_eml`] handles
//! the RFC 5322 framing (header unfolding, header/body split, MIME multipart
//! splitting) and [`extract_record`] reduces a message to the six canonical
//! attributes: Date, MessageId, CC, From, Subject and HTML.

mod address;
mod date;
mod encoded_word;
mod raw;
mod record;
mod scan;

use std::path::PathBuf;

use thiserror::Error;

pub use address::{parse_address_list, Mailbox};
pub use date::parse_rfc5322_date;
pub use encoded_word::decode_encoded_words;
pub use raw::{parse_eml, read_eml, BodyPart, RawEmail};
pub use record::{extract_record, EmailRecord};
pub use scan::{scan_corpus, Corpus, SkippedFile};

#[derive(Debug, Error)]
pub enum EmlError {
    #[error("malformed message: {0}")]
    MalformedInput(String),
    #[error("cannot read file {path}: {source}")]
    FileUnreadable {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot read directory {path}: {reason}")]
    DirectoryUnreadable { path: PathBuf, reason: String },
}
