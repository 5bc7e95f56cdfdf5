//! Paired inputs and tab-separated result rows.

use std::path::Path;

use dphls_core::engine::{align_batch, BatchItem};
use dphls_core::symbol::encode_sequence;
use dphls_core::{AlignmentResult, EngineConfig, EngineError, KernelSpec, Symbol, SymbolKind};

use crate::fasta::read_fasta;
use crate::input::InputError;
use crate::signal::read_signal;

pub const HEADER: &str = "#id_q\tid_r\tscore\tstart\tend\tcigar\tstatus";

#[derive(Debug, Clone, PartialEq)]
pub struct SeqRecord {
    pub id: String,
    pub symbols: Vec<Symbol>,
}

fn is_text(kind: SymbolKind) -> bool {
    matches!(
        kind,
        SymbolKind::Nucleotide | SymbolKind::AmbiguousNucleotide | SymbolKind::AminoAcid
    )
}

/// Reads the records of `path`: FASTA for sequence alphabets, otherwise a
/// single sample file named after its stem. Empty FASTA records are kept
/// so the engine can report them per row.
pub fn load_records(path: &Path, kind: SymbolKind) -> Result<Vec<SeqRecord>, InputError> {
    if !is_text(kind) {
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        return Ok(vec![SeqRecord {
            id,
            symbols: read_signal(path, kind)?,
        }]);
    }
    read_fasta(path)?
        .into_iter()
        .map(|r| {
            let symbols = if r.seq.is_empty() {
                Vec::new()
            } else {
                encode_sequence(&r.seq, kind).map_err(|source| InputError::Encode {
                    record: r.id.clone(),
                    source,
                })?
            };
            Ok(SeqRecord { id: r.id, symbols })
        })
        .collect()
}

/// Formats one result row.
pub fn format_row(id_q: &str, id_r: &str, res: &Result<AlignmentResult, EngineError>) -> String {
    match res {
        Ok(a) => {
            let cigar = if a.moves.is_empty() { "*".to_owned() } else { a.cigar() };
            let cigar = if cigar.is_empty() { "*".to_owned() } else { cigar };
            format!(
                "{id_q}\t{id_r}\t{}\t{}\t{}\t{cigar}\tOK",
                a.score, a.start_coord, a.end_coord
            )
        }
        Err(e) => format!("{id_q}\t{id_r}\t*\t*\t*\t*\t{}", e.code()),
    }
}

/// Aligns record `i` of `queries` with record `i` of `references` and
/// returns the whole table, header included.
pub fn run_batch(
    spec: &KernelSpec,
    config: &EngineConfig,
    queries: &[SeqRecord],
    references: &[SeqRecord],
) -> Result<String, InputError> {
    if queries.len() != references.len() {
        return Err(InputError::RecordCountMismatch {
            query: queries.len(),
            reference: references.len(),
        });
    }
    let items: Vec<BatchItem<'_>> = queries
        .iter()
        .zip(references)
        .map(|(q, r)| BatchItem {
            spec: 0,
            query: &q.symbols,
            reference: &r.symbols,
        })
        .collect();
    let results = align_batch(std::slice::from_ref(spec), config, &items);
    let mut out = String::from(HEADER);
    out.push('\n');
    for ((q, r), res) in queries.iter().zip(references).zip(&results) {
        out.push_str(&format_row(&q.id, &r.id, res));
        out.push('\n');
    }
    Ok(out)
}

/// A parsed result row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub id_q: String,
    pub id_r: String,
    pub score: String,
    pub start: String,
    pub end: String,
    pub cigar: String,
    pub status: String,
}

pub fn parse_rows(text: &str) -> Option<Vec<Row>> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            let [id_q, id_r, score, start, end, cigar, status] = f[..] else {
                return None;
            };
            Some(Row {
                id_q: id_q.into(),
                id_r: id_r.into(),
                score: score.into(),
                start: start.into(),
                end: end.into(),
                cigar: cigar.into(),
                status: status.into(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use dphls_core::kernels::{default_params, kernel_global_linear};

    fn rec(id: &str, s: &str) -> SeqRecord {
        let symbols = if s.is_empty() {
            Vec::new()
        } else {
            encode_sequence(s.as_bytes(), SymbolKind::Nucleotide).unwrap()
        };
        SeqRecord { id: id.into(), symbols }
    }

    #[test]
    fn rows_and_isolation() {
        let spec = kernel_global_linear().with_params(default_params(1));
        let cfg = EngineConfig::default().with_max_lengths(8, 8);
        let q = [rec("q1", "ACGT"), rec("q2", "ACGT"), rec("q3", "ACGTACGTA"), rec("q4", "")];
        let r = [rec("r1", "ACGT"), rec("r2", "ACGT"), rec("r3", "A"), rec("r4", "A")];
        let out = run_batch(&spec, &cfg, &q, &r).unwrap();
        let rows = parse_rows(&out).unwrap();
        assert!(out.starts_with(HEADER));
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0].score, "4");
        assert_eq!(rows[0].cigar, "4M");
        assert_eq!((rows[0].start.as_str(), rows[0].end.as_str()), ("0,0", "4,4"));
        assert_eq!(rows[0].status, "OK");
        let strip = |r: &Row| (r.score.clone(), r.start.clone(), r.end.clone(), r.cigar.clone());
        assert_eq!(strip(&rows[0]), strip(&rows[1]));
        assert_eq!(rows[2].status, "SequenceTooLong");
        assert_eq!(rows[3].status, "EmptySequence");
    }

    #[test]
    fn record_counts_must_match() {
        let spec = kernel_global_linear().with_params(default_params(1));
        let q = [rec("a", "A")];
        assert!(run_batch(&spec, &EngineConfig::default(), &q, &[]).is_err());
    }
}
