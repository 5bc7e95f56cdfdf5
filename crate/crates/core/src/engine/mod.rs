//! Wavefront execution of a [`KernelSpec`].
//!
//! The engine mirrors a linear systolic array: `n_pe` processing elements
//! sweep anti-diagonals of a chunk of `n_pe` rows, a preserved row buffer
//! carries the chunk's last row to the next chunk, pointers go to a banked
//! traceback memory, and per-PE best-cell trackers are reduced before
//! traceback. `n_pe` changes the schedule only, never the result.

mod fill;
mod schedule;
mod tb_memory;
mod traceback;
mod tracker;

use std::fmt;

use thiserror::Error;

pub use fill::{fill_matrix, fill_matrix_probed, Fill, FillProbe, NoProbe};
pub use schedule::{Chunk, ChunkSchedule};
pub use tb_memory::TbMemory;
pub use traceback::{traceback, TracebackOutcome};
pub use tracker::{reduce, Candidate, LocalMaxTracker};

use crate::spec::{validate_spec, KernelSpec, ResultLayer, SpecError};
use crate::symbol::{Symbol, SymbolKind};
use crate::types::{AlignmentResult, CellScores, Coord, EngineConfig, TracebackState};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Query,
    Reference,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Query => "query",
            Side::Reference => "reference",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("{0} sequence is empty")]
    EmptySequence(Side),
    #[error("{which} length {len} exceeds the maximum {max}")]
    SequenceTooLong { which: Side, len: usize, max: usize },
    #[error("{which} symbol {position} is {found:?}, kernel expects {expected:?}")]
    SymbolKindMismatch {
        which: Side,
        position: usize,
        expected: SymbolKind,
        found: SymbolKind,
    },
    #[error("{which} symbol {position} is out of range")]
    InvalidSymbol { which: Side, position: usize },
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("no cell of the start region lies inside the band")]
    NoValidStartCell,
    #[error("traceback reached uncomputed cell {coord}")]
    TracebackOutOfBounds { coord: Coord },
    #[error("traceback exceeded {limit} steps")]
    NonTerminating { limit: usize },
    #[error("batch item names spec {index} but only {available} were given")]
    UnknownSpec { index: usize, available: usize },
}

impl EngineError {
    /// Short status tag, e.g. for result tables.
    pub fn code(&self) -> &'static str {
        match self {
            EngineError::EmptySequence(_) => "EmptySequence",
            EngineError::SequenceTooLong { .. } => "SequenceTooLong",
            EngineError::SymbolKindMismatch { .. } => "SymbolKindMismatch",
            EngineError::InvalidSymbol { .. } => "InvalidSymbol",
            EngineError::Spec(_) => "InvalidSpec",
            EngineError::NoValidStartCell => "NoValidStartCell",
            EngineError::TracebackOutOfBounds { .. } => "TracebackOutOfBounds",
            EngineError::NonTerminating { .. } => "NonTerminating",
            EngineError::UnknownSpec { .. } => "UnknownSpec",
        }
    }
}

/// Band membership of 0-based cell `(i, j)`.
#[inline]
pub fn in_band(band: Option<usize>, i: usize, j: usize) -> bool {
    band.is_none_or(|w| i.abs_diff(j) <= w)
}

/// Band membership of a boundary-inclusive coordinate.
#[inline]
pub fn in_band_coord(band: Option<usize>, row: usize, col: usize) -> bool {
    band.is_none_or(|w| row.abs_diff(col) <= w)
}

fn check_sequence(
    which: Side,
    seq: &[Symbol],
    max: usize,
    kind: SymbolKind,
) -> Result<(), EngineError> {
    if seq.is_empty() {
        return Err(EngineError::EmptySequence(which));
    }
    if seq.len() > max {
        return Err(EngineError::SequenceTooLong {
            which,
            len: seq.len(),
            max,
        });
    }
    for (position, s) in seq.iter().enumerate() {
        if s.kind() != kind {
            return Err(EngineError::SymbolKindMismatch {
                which,
                position,
                expected: kind,
                found: s.kind(),
            });
        }
        if !s.is_valid() {
            return Err(EngineError::InvalidSymbol { which, position });
        }
    }
    Ok(())
}

pub(crate) fn check_inputs(
    spec: &KernelSpec,
    config: &EngineConfig,
    query: &[Symbol],
    reference: &[Symbol],
) -> Result<(), EngineError> {
    validate_spec(spec, config)?;
    check_sequence(Side::Query, query, config.max_query_length, spec.symbol_kind)?;
    check_sequence(
        Side::Reference,
        reference,
        config.max_reference_length,
        spec.symbol_kind,
    )
}

/// Traceback state matching the layer the reported score was read from.
pub fn start_state(spec: &KernelSpec, scores: &CellScores) -> TracebackState {
    match spec.result_layer {
        ResultLayer::Primary => TracebackState::Mm,
        ResultLayer::Best => {
            let best = spec.result_score(scores);
            let layer = scores
                .as_slice()
                .iter()
                .position(|s| *s == best)
                .unwrap_or(0);
            TracebackState::ALL[layer]
        }
    }
}

pub fn align(
    spec: &KernelSpec,
    config: &EngineConfig,
    query: &[Symbol],
    reference: &[Symbol],
) -> Result<AlignmentResult, EngineError> {
    align_probed(spec, config, query, reference, &mut NoProbe)
}

/// [`align`] with instrumentation hooks on the fill phase.
pub fn align_probed<P: FillProbe>(
    spec: &KernelSpec,
    config: &EngineConfig,
    query: &[Symbol],
    reference: &[Symbol],
    probe: &mut P,
) -> Result<AlignmentResult, EngineError> {
    let fill = fill_matrix_probed(spec, config, query, reference, probe)?;
    complete(spec, &fill, query.len(), reference.len())
}

/// Traceback phase: turns a finished fill of a `q_len × r_len` matrix into
/// the alignment result.
pub fn complete(
    spec: &KernelSpec,
    fill: &Fill,
    q_len: usize,
    r_len: usize,
) -> Result<AlignmentResult, EngineError> {
    let start = fill.start.as_ref().ok_or(EngineError::NoValidStartCell)?;
    let end_coord = Coord::of_cell(start.cell.0, start.cell.1);

    let Some(tb) = fill.tb.as_ref() else {
        return Ok(AlignmentResult {
            score: start.score,
            end_coord,
            start_coord: end_coord,
            moves: Vec::new(),
            layers_at_end: start.scores,
        });
    };
    let walk = traceback(
        spec,
        tb,
        start.cell,
        start_state(spec, &start.scores),
        (q_len, r_len),
        fill.band,
    )?;
    Ok(AlignmentResult {
        score: start.score,
        end_coord,
        start_coord: walk.stop,
        moves: walk.moves,
        layers_at_end: start.scores,
    })
}

/// One pair of a batch, aligned with `specs[spec]`.
#[derive(Debug, Clone, Copy)]
pub struct BatchItem<'a> {
    pub spec: usize,
    pub query: &'a [Symbol],
    pub reference: &'a [Symbol],
}

/// Aligns every item, returning results in input order.
///
/// Item `i` goes to channel `i mod n_k`; channels run on their own threads
/// and each feeds its `n_b` blocks in turn. Failures are reported per item.
pub fn align_batch(
    specs: &[KernelSpec],
    config: &EngineConfig,
    items: &[BatchItem<'_>],
) -> Vec<Result<AlignmentResult, EngineError>> {
    let n_k = config.n_k.max(1);
    let run = |item: &BatchItem<'_>| match specs.get(item.spec) {
        Some(spec) => align(spec, config, item.query, item.reference),
        None => Err(EngineError::UnknownSpec {
            index: item.spec,
            available: specs.len(),
        }),
    };

    let mut out: Vec<Option<Result<AlignmentResult, EngineError>>> = vec![None; items.len()];
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..n_k.min(items.len()))
            .map(|channel| {
                let run = &run;
                scope.spawn(move || {
                    items
                        .iter()
                        .enumerate()
                        .skip(channel)
                        .step_by(n_k)
                        .map(|(i, item)| (i, run(item)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, res) in h.join().expect("batch channel panicked") {
                out[i] = Some(res);
            }
        }
    });
    out.into_iter()
        .map(|r| r.expect("every item is assigned to a channel"))
        .collect()
}
