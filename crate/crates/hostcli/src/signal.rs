//! Sample files: one sample per line. Complex samples are `re,im`, integer
//! samples a single integer, profile columns five tab-separated
//! frequencies. Blank lines and `#` comments are skipped.

use std::path::Path;

use dphls_core::{Symbol, SymbolKind};

use crate::input::{read_text, InputError};

fn parse_line(line: &str, kind: SymbolKind) -> Option<Symbol> {
    match kind {
        SymbolKind::ComplexSample => {
            let (re, im) = line.split_once(',')?;
            Some(Symbol::ComplexSample {
                re: re.trim().parse().ok()?,
                im: im.trim().parse().ok()?,
            })
        }
        SymbolKind::IntSample => line.parse().ok().map(Symbol::IntSample),
        SymbolKind::ProfileColumn => {
            let vals: Vec<f64> = line
                .split('\t')
                .map(|v| v.trim().parse().ok())
                .collect::<Option<_>>()?;
            Some(Symbol::ProfileColumn(vals.try_into().ok()?))
        }
        _ => None,
    }
}

pub fn parse_signal(text: &str, kind: SymbolKind) -> Result<Vec<Symbol>, InputError> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(parse_line(line, kind).ok_or(InputError::MalformedSample(n + 1))?);
    }
    if out.is_empty() {
        return Err(InputError::EmptyFile);
    }
    Ok(out)
}

pub fn read_signal(path: &Path, kind: SymbolKind) -> Result<Vec<Symbol>, InputError> {
    parse_signal(&read_text(path)?, kind)
}

/// Serializes samples; floats use the shortest exact representation.
pub fn write_signal(samples: &[Symbol]) -> String {
    let mut out = String::new();
    for s in samples {
        match s {
            Symbol::ComplexSample { re, im } => out.push_str(&format!("{re:?},{im:?}")),
            Symbol::IntSample(v) => out.push_str(&v.to_string()),
            Symbol::ProfileColumn(f) => {
                let cols: Vec<String> = f.iter().map(|x| format!("{x:?}")).collect();
                out.push_str(&cols.join("\t"));
            }
            other => out.push_str(&format!("{other:?}")),
        }
        out.push('\n');
    }
    out
}
