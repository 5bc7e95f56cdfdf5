//! Whitespace-separated substitution matrices.
//!
//! ```text
//! # comment
//!    A  C  G  T
//! A  1 -1 -1 -1
//! C -1  1 -1 -1
//! ...
//! ```
//!
//! Rows and columns are reordered into the core's residue ordering. For
//! nucleotide alphabets a fifth letter `-` (or `N`) names the gap entry.

use std::path::Path;

use dphls_core::symbol::{amino_acid_code, AMINO_ACIDS, GAP_INDEX, NUCLEOTIDES};
use dphls_core::{Score, SubMatrix, SymbolKind};

use crate::input::{read_text, InputError};

fn index_of(letter: char, kind: SymbolKind) -> Option<usize> {
    let b = u8::try_from(letter).ok()?.to_ascii_uppercase();
    match kind {
        SymbolKind::AminoAcid => amino_acid_code(b).map(usize::from),
        _ => match b {
            b'-' | b'N' => Some(GAP_INDEX),
            b'U' => Some(3),
            _ => NUCLEOTIDES.iter().position(|&n| n == b),
        },
    }
}

/// Letters of a `size`-residue alphabet in core order.
pub fn alphabet(kind: SymbolKind, size: usize) -> Vec<char> {
    match kind {
        SymbolKind::AminoAcid => AMINO_ACIDS.iter().map(|&b| b as char).collect(),
        _ => NUCLEOTIDES
            .iter()
            .map(|&b| b as char)
            .chain((size > 4).then_some('-'))
            .collect(),
    }
}

fn expected_size(kind: SymbolKind, header: usize) -> Result<(), InputError> {
    let ok = match kind {
        SymbolKind::AminoAcid => header == 20,
        _ => header == 4 || header == 5,
    };
    if ok {
        Ok(())
    } else {
        Err(InputError::MatrixShapeMismatch(format!(
            "{header} residues in header for a {kind:?} alphabet"
        )))
    }
}

enum Value {
    Int(i32),
    Float(f64),
}

pub fn parse_matrix(text: &str, kind: SymbolKind) -> Result<SubMatrix, InputError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines.next().ok_or(InputError::EmptyFile)?;

    let mut cols = Vec::new();
    for tok in header.split_whitespace() {
        let mut chars = tok.chars();
        let (Some(c), None) = (chars.next(), chars.next()) else {
            return Err(InputError::MatrixShapeMismatch(format!("header entry {tok:?}")));
        };
        cols.push(index_of(c, kind).ok_or(InputError::UnknownResidue(c))?);
    }
    let size = cols.len();
    expected_size(kind, size)?;
    let mut seen = vec![false; size];
    for &c in &cols {
        if c >= size || std::mem::replace(&mut seen[c], true) {
            return Err(InputError::MatrixShapeMismatch("header letters repeat or skip a residue".into()));
        }
    }

    let mut cells: Vec<Option<Value>> = (0..size * size).map(|_| None).collect();
    let mut rows = 0;
    for (n, line) in lines {
        let mut toks = line.split_whitespace();
        let label = toks.next().expect("line is not blank");
        let mut chars = label.chars();
        let (Some(c), None) = (chars.next(), chars.next()) else {
            return Err(InputError::MatrixShapeMismatch(format!("row label {label:?} at line {n}")));
        };
        let row = index_of(c, kind).ok_or(InputError::UnknownResidue(c))?;
        if row >= size {
            return Err(InputError::UnknownResidue(c));
        }
        let vals: Vec<&str> = toks.collect();
        if vals.len() != size {
            return Err(InputError::MatrixShapeMismatch(format!(
                "line {n} has {} values, expected {size}",
                vals.len()
            )));
        }
        for (k, v) in vals.iter().enumerate() {
            let value = if let Ok(i) = v.parse::<i32>() {
                Value::Int(i)
            } else if let Ok(f) = v.parse::<f64>() {
                Value::Float(f)
            } else {
                return Err(InputError::MatrixShapeMismatch(format!("value {v:?} at line {n}")));
            };
            let slot = &mut cells[row * size + cols[k]];
            if slot.replace(value).is_some() {
                return Err(InputError::MatrixShapeMismatch(format!("row {c} repeated at line {n}")));
            }
        }
        rows += 1;
    }
    if rows != size {
        return Err(InputError::MatrixShapeMismatch(format!("{rows} rows for {size} columns")));
    }

    let any_float = cells.iter().any(|c| matches!(c, Some(Value::Float(_))));
    let scores = cells
        .into_iter()
        .map(|c| match c.expect("every row and column filled") {
            Value::Int(i) if !any_float => Score::Int(i),
            Value::Int(i) => Score::Float(i as f64),
            Value::Float(f) => Score::Float(f),
        })
        .collect();
    Ok(SubMatrix::new(size, scores).expect("size checked"))
}

pub fn read_matrix(path: &Path, kind: SymbolKind) -> Result<SubMatrix, InputError> {
    parse_matrix(&read_text(path)?, kind)
}

/// Serializes in core order; floats always carry a decimal point so the
/// value type survives a round trip.
pub fn write_matrix(m: &SubMatrix, kind: SymbolKind) -> String {
    let letters = alphabet(kind, m.size());
    let cell = |s: Score| match s {
        Score::Int(i) => i.to_string(),
        Score::Float(f) => format!("{f:?}"),
    };
    let width = m.rows().flatten().map(|s| cell(*s).len()).max().unwrap_or(1) + 1;
    let mut out = String::from(" ");
    for l in &letters {
        out.push_str(&format!("{l:>width$}"));
    }
    out.push('\n');
    for (l, row) in letters.iter().zip(m.rows()) {
        out.push(*l);
        for s in row {
            out.push_str(&format!("{:>width$}", cell(*s)));
        }
        out.push('\n');
    }
    out
}
