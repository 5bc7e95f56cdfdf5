//! FASTA records.

use std::path::Path;

use crate::input::{read_text, InputError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub id: String,
    pub seq: Vec<u8>,
}

impl Record {
    pub fn new(id: impl Into<String>, seq: impl Into<Vec<u8>>) -> Self {
        Record {
            id: id.into(),
            seq: seq.into(),
        }
    }
}

/// Parses FASTA text. The id is the header up to the first whitespace;
/// sequence lines are concatenated with all whitespace removed. Blank lines
/// are skipped.
pub fn parse_fasta(text: &str) -> Result<Vec<Record>, InputError> {
    let mut records: Vec<Record> = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if let Some(header) = line.strip_prefix('>') {
            let id = header.split_whitespace().next().unwrap_or("");
            records.push(Record::new(id, Vec::new()));
        } else if line.trim().is_empty() {
            continue;
        } else {
            let rec = records.last_mut().ok_or(InputError::MalformedFasta(n + 1))?;
            rec.seq
                .extend(line.bytes().filter(|b| !b.is_ascii_whitespace()));
        }
    }
    if records.is_empty() {
        return Err(if text.trim().is_empty() {
            InputError::EmptyFile
        } else {
            InputError::MalformedFasta(1)
        });
    }
    Ok(records)
}

pub fn read_fasta(path: &Path) -> Result<Vec<Record>, InputError> {
    parse_fasta(&read_text(path)?)
}

/// Serializes records with sequence lines wrapped at `width` (0: no wrap).
pub fn write_fasta(records: &[Record], width: usize) -> String {
    let mut out = String::new();
    for r in records {
        out.push('>');
        out.push_str(&r.id);
        out.push('\n');
        let seq = String::from_utf8_lossy(&r.seq);
        if width == 0 || seq.is_empty() {
            out.push_str(&seq);
            out.push('\n');
        } else {
            for chunk in r.seq.chunks(width) {
                out.push_str(&String::from_utf8_lossy(chunk));
                out.push('\n');
            }
        }
    }
    out
}
