//! Verification and performance reports.

use dphls_core::engine::FillProbe;
use dphls_core::perf::{csv_row, model_alignment_cycles, scaling_sweep, sweep_csv, PerfError, CSV_HEADER};
use dphls_core::verify::{verify_pair, VerifyError};
use dphls_core::{EngineConfig, KernelSpec};
use thiserror::Error;

use crate::batch::SeqRecord;
use crate::input::InputError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyRunError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub text: String,
    pub pairs: usize,
    pub mismatches: usize,
}

impl VerifyReport {
    pub fn all_match(&self) -> bool {
        self.mismatches == 0
    }
}

/// Runs engine and oracle on every pair. Each pair gets a line ending in
/// `MATCH` or the first divergence; the last line is `MATCH` when every
/// pair agreed.
pub fn run_verify<P: FillProbe>(
    spec: &KernelSpec,
    config: &EngineConfig,
    queries: &[SeqRecord],
    references: &[SeqRecord],
    probe: &mut P,
) -> Result<VerifyReport, VerifyRunError> {
    if queries.len() != references.len() {
        return Err(InputError::RecordCountMismatch {
            query: queries.len(),
            reference: references.len(),
        }
        .into());
    }
    let mut text = String::new();
    let mut mismatches = 0;
    for (q, r) in queries.iter().zip(references) {
        let verdict = verify_pair(spec, config, &q.symbols, &r.symbols, probe)?;
        let status = match verdict {
            None => "MATCH".to_owned(),
            Some(d) => {
                mismatches += 1;
                format!("DIVERGE {d}")
            }
        };
        text.push_str(&format!("{}\t{}\t{status}\n", q.id, r.id));
    }
    if mismatches == 0 {
        text.push_str("MATCH\n");
    } else {
        text.push_str(&format!("MISMATCH {mismatches}/{}\n", queries.len()));
    }
    Ok(VerifyReport {
        text,
        pairs: queries.len(),
        mismatches,
    })
}

/// CSV for one `q × r` alignment on `config`; with `sweep`, every
/// power-of-two `n_pe` and `n_b` up to the configured values follows.
pub fn perf_report(config: &EngineConfig, q: usize, r: usize, sweep: bool) -> Result<String, PerfError> {
    let path_len = q.max(r);
    if !sweep {
        let rep = model_alignment_cycles(config, q, r, path_len)?;
        return Ok(format!("{CSV_HEADER}\n{}\n", csv_row(config, &rep)));
    }
    let powers = |max: usize| {
        let mut v: Vec<usize> = std::iter::successors(Some(1usize), |x| x.checked_mul(2))
            .take_while(|&x| x <= max)
            .collect();
        if v.last() != Some(&max) {
            v.push(max);
        }
        v
    };
    let pts = scaling_sweep(config, &powers(config.n_pe), &powers(config.n_b), q, r)?;
    Ok(sweep_csv(&pts))
}
