use std::path::Path;

use dphls_core::symbol::EncodeError;
use thiserror::Error;

/// Errors from reading and parsing input files.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum InputError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed FASTA at line {0}")]
    MalformedFasta(usize),
    #[error("input file is empty")]
    EmptyFile,
    #[error("matrix shape mismatch: {0}")]
    MatrixShapeMismatch(String),
    #[error("unknown residue {0:?}")]
    UnknownResidue(char),
    #[error("malformed sample at line {0}")]
    MalformedSample(usize),
    #[error("{query} query records but {reference} reference records")]
    RecordCountMismatch { query: usize, reference: usize },
    #[error("record {record}: {source}")]
    Encode { record: String, source: EncodeError },
}

pub fn read_text(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
