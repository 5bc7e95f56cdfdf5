//! Sequence alphabets and byte-string encoding.

use thiserror::Error;

/// Amino-acid one-letter codes in alphabetical order; a residue's code is
/// its index here.
pub const AMINO_ACIDS: &[u8; 20] = b"ACDEFGHIKLMNPQRSTVWY";
pub const NUCLEOTIDES: &[u8; 4] = b"ACGT";
/// Index of the gap / `N` entry in 5-entry alphabets.
pub const GAP_INDEX: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    Nucleotide,
    AmbiguousNucleotide,
    AminoAcid,
    ProfileColumn,
    ComplexSample,
    IntSample,
}

impl SymbolKind {
    /// Size of the discrete alphabet, if this kind is discrete.
    pub fn alphabet_size(self) -> Option<usize> {
        match self {
            SymbolKind::Nucleotide => Some(4),
            SymbolKind::AmbiguousNucleotide => Some(5),
            SymbolKind::AminoAcid => Some(20),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Symbol {
    Nucleotide(u8),
    AmbiguousNucleotide(u8),
    AminoAcid(u8),
    ProfileColumn([f64; 5]),
    ComplexSample { re: f64, im: f64 },
    IntSample(i32),
}

impl Symbol {
    pub fn kind(&self) -> SymbolKind {
        match self {
            Symbol::Nucleotide(_) => SymbolKind::Nucleotide,
            Symbol::AmbiguousNucleotide(_) => SymbolKind::AmbiguousNucleotide,
            Symbol::AminoAcid(_) => SymbolKind::AminoAcid,
            Symbol::ProfileColumn(_) => SymbolKind::ProfileColumn,
            Symbol::ComplexSample { .. } => SymbolKind::ComplexSample,
            Symbol::IntSample(_) => SymbolKind::IntSample,
        }
    }

    /// Alphabet index of a discrete symbol.
    ///
    /// # Panics
    /// On continuous symbols; kernels only call this on the kinds they declare.
    #[inline]
    pub fn code(&self) -> usize {
        match *self {
            Symbol::Nucleotide(c) | Symbol::AmbiguousNucleotide(c) | Symbol::AminoAcid(c) => {
                usize::from(c)
            }
            ref other => panic!("symbol {other:?} has no discrete code"),
        }
    }

    /// Checks the per-variant invariants (code ranges, profile entries).
    pub fn is_valid(&self) -> bool {
        match *self {
            Symbol::Nucleotide(c) => c < 4,
            Symbol::AmbiguousNucleotide(c) => c < 5,
            Symbol::AminoAcid(c) => c < 20,
            Symbol::ProfileColumn(p) => p.iter().all(|v| v.is_finite() && *v >= 0.0),
            Symbol::ComplexSample { re, im } => re.is_finite() && im.is_finite(),
            Symbol::IntSample(_) => true,
        }
    }

    /// One-hot profile column for a nucleotide (or gap) code.
    pub fn one_hot(code: usize) -> Symbol {
        let mut p = [0.0; 5];
        p[code] = 1.0;
        Symbol::ProfileColumn(p)
    }

    /// Profile column scaled so its entries sum to one. Columns that sum to
    /// zero are returned unchanged.
    pub fn normalized_profile(counts: [f64; 5]) -> Symbol {
        let total: f64 = counts.iter().sum();
        if total > 0.0 {
            Symbol::ProfileColumn(counts.map(|c| c / total))
        } else {
            Symbol::ProfileColumn(counts)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("invalid character {:?} at position {position}", char::from(*byte))]
    InvalidCharacter { position: usize, byte: u8 },
    #[error("empty sequence")]
    EmptySequence,
    #[error("symbol kind {0:?} cannot be encoded from text")]
    NotTextual(SymbolKind),
}

fn nucleotide_code(b: u8) -> Option<u8> {
    match b.to_ascii_uppercase() {
        b'A' => Some(0),
        b'C' => Some(1),
        b'G' => Some(2),
        b'T' | b'U' => Some(3),
        _ => None,
    }
}

pub fn amino_acid_code(b: u8) -> Option<u8> {
    let up = b.to_ascii_uppercase();
    AMINO_ACIDS.iter().position(|&a| a == up).map(|p| p as u8)
}

/// Encodes a text sequence into symbols of the given discrete `kind`.
pub fn encode_sequence(text: &[u8], kind: SymbolKind) -> Result<Vec<Symbol>, EncodeError> {
    if text.is_empty() {
        return Err(EncodeError::EmptySequence);
    }
    let bad = |position, byte| EncodeError::InvalidCharacter { position, byte };
    text.iter()
        .enumerate()
        .map(|(i, &b)| match kind {
            SymbolKind::Nucleotide => nucleotide_code(b).map(Symbol::Nucleotide).ok_or(bad(i, b)),
            SymbolKind::AmbiguousNucleotide => match b.to_ascii_uppercase() {
                b'N' | b'-' => Ok(Symbol::AmbiguousNucleotide(4)),
                _ => nucleotide_code(b)
                    .map(Symbol::AmbiguousNucleotide)
                    .ok_or(bad(i, b)),
            },
            SymbolKind::AminoAcid => amino_acid_code(b).map(Symbol::AminoAcid).ok_or(bad(i, b)),
            other => Err(EncodeError::NotTextual(other)),
        })
        .collect()
}

/// Inverse of [`encode_sequence`] for discrete symbols (uppercase, `T` for
/// thymine/uracil, `N` for the ambiguous code).
pub fn decode_sequence(symbols: &[Symbol]) -> Option<Vec<u8>> {
    symbols
        .iter()
        .map(|s| match *s {
            Symbol::Nucleotide(c) => NUCLEOTIDES.get(usize::from(c)).copied(),
            Symbol::AmbiguousNucleotide(4) => Some(b'N'),
            Symbol::AmbiguousNucleotide(c) => NUCLEOTIDES.get(usize::from(c)).copied(),
            Symbol::AminoAcid(c) => AMINO_ACIDS.get(usize::from(c)).copied(),
            _ => None,
        })
        .collect()
}
