//! Engine versus oracle comparison reporting the first divergence.

use std::fmt;

use thiserror::Error;

use crate::engine::{complete, fill_matrix_probed, EngineError, FillProbe};
use crate::oracle::{oracle_align_with_band, OracleError};
use crate::score::Score;
use crate::spec::{KernelSpec, PeInput};
use crate::symbol::Symbol;
use crate::types::{AlignmentResult, CellScores, Coord, EngineConfig, TracebackMove, TracebackPointer};

/// Relative tolerance for floating-point kernels.
pub const FLOAT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum Divergence {
    /// An in-band cell differs.
    Cell {
        cell: (usize, usize),
        engine: Option<CellScores>,
        oracle: CellScores,
    },
    /// The engine computed a cell outside the band.
    OutOfBand { cell: (usize, usize) },
    /// The stored traceback pointer differs.
    Pointer {
        cell: (usize, usize),
        engine: Option<TracebackPointer>,
        oracle: Option<TracebackPointer>,
    },
    Score { engine: Score, oracle: Score },
    EndCoord { engine: Coord, oracle: Coord },
    StartCoord { engine: Coord, oracle: Coord },
    Move {
        index: usize,
        engine: Option<TracebackMove>,
        oracle: Option<TracebackMove>,
    },
    /// One side failed, or both failed differently.
    Outcome { engine: String, oracle: String },
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = |c: &(usize, usize)| Coord::of_cell(c.0, c.1);
        match self {
            Divergence::Cell { cell, engine, oracle } => {
                write!(f, "cell {}: engine {:?}, oracle {:?}", at(cell), engine, oracle)
            }
            Divergence::OutOfBand { cell } => write!(f, "cell {}: computed outside the band", at(cell)),
            Divergence::Pointer { cell, engine, oracle } => write!(
                f,
                "pointer {}: engine {:?}, oracle {:?}",
                at(cell),
                engine.map(|p| p.0),
                oracle.map(|p| p.0)
            ),
            Divergence::Score { engine, oracle } => write!(f, "score: engine {engine}, oracle {oracle}"),
            Divergence::EndCoord { engine, oracle } => write!(f, "end: engine {engine}, oracle {oracle}"),
            Divergence::StartCoord { engine, oracle } => {
                write!(f, "start: engine {engine}, oracle {oracle}")
            }
            Divergence::Move { index, engine, oracle } => {
                write!(f, "move {index}: engine {engine:?}, oracle {oracle:?}")
            }
            Divergence::Outcome { engine, oracle } => write!(f, "outcome: engine {engine}, oracle {oracle}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Forwards to the caller's probe and records every computed cell.
struct Recorder<'p, P> {
    inner: &'p mut P,
    r_len: usize,
    cells: Vec<Option<CellScores>>,
}

impl<P: FillProbe> FillProbe for Recorder<'_, P> {
    fn on_pe(&mut self, input: &PeInput<'_>) {
        self.inner.on_pe(input);
    }
    fn on_cell(&mut self, cell: (usize, usize), scores: &CellScores, ptr: TracebackPointer) {
        self.cells[cell.0 * self.r_len + cell.1] = Some(*scores);
        self.inner.on_cell(cell, scores, ptr);
    }
    fn on_tb_write(&mut self, chunk: usize, w: usize, bank: usize, addr: usize) {
        self.inner.on_tb_write(chunk, w, bank, addr);
    }
    fn on_wavefront_end(&mut self, chunk: usize, w: usize) {
        self.inner.on_wavefront_end(chunk, w);
    }
    fn mutate_pointer(&mut self, cell: (usize, usize), ptr: TracebackPointer) -> TracebackPointer {
        self.inner.mutate_pointer(cell, ptr)
    }
}

pub fn verify_pair<P: FillProbe>(
    spec: &KernelSpec,
    config: &EngineConfig,
    query: &[Symbol],
    reference: &[Symbol],
    probe: &mut P,
) -> Result<Option<Divergence>, VerifyError> {
    let (q, r) = (query.len(), reference.len());
    let mut rec = Recorder {
        inner: probe,
        r_len: r,
        cells: Vec::new(),
    };
    if q > 0 && r > 0 {
        rec.cells = vec![None; q * r];
    }
    let fill = fill_matrix_probed(spec, config, query, reference, &mut rec)?;
    let band = spec.effective_band(config);
    let oracle = oracle_align_with_band(spec, query, reference, band);
    let matrix = match &oracle {
        Ok((_, m)) => m,
        Err(OracleError::NoValidStartCell) => {
            return Ok(match complete(spec, &fill, q, r) {
                Err(EngineError::NoValidStartCell) => None,
                Ok(res) => Some(Divergence::Outcome {
                    engine: format!("score {}", res.score),
                    oracle: OracleError::NoValidStartCell.to_string(),
                }),
                Err(e) => Some(Divergence::Outcome {
                    engine: e.to_string(),
                    oracle: OracleError::NoValidStartCell.to_string(),
                }),
            });
        }
        Err(e) => return Err(e.clone().into()),
    };

    for ((i, j), want) in matrix.cells() {
        let got = rec.cells[i * r + j];
        if !matrix.in_band(i, j) {
            if got.is_some() {
                return Ok(Some(Divergence::OutOfBand { cell: (i, j) }));
            }
            continue;
        }
        if !got.is_some_and(|g| g.approx_eq(want, FLOAT_TOL)) {
            return Ok(Some(Divergence::Cell {
                cell: (i, j),
                engine: got,
                oracle: *want,
            }));
        }
    }
    if let Some(tb) = &fill.tb {
        for i in 0..q {
            for j in 0..r {
                let (engine, oracle) = (tb.read(i, j), matrix.pointer(i, j));
                if engine != oracle {
                    return Ok(Some(Divergence::Pointer { cell: (i, j), engine, oracle }));
                }
            }
        }
    }

    let want = &oracle.as_ref().expect("checked above").0;
    Ok(match complete(spec, &fill, q, r) {
        Ok(got) => compare_results(&got, want),
        Err(e) => Some(Divergence::Outcome {
            engine: e.to_string(),
            oracle: format!("score {}", want.score),
        }),
    })
}

pub fn compare_results(engine: &AlignmentResult, oracle: &AlignmentResult) -> Option<Divergence> {
    if !engine.score.approx_eq(oracle.score, FLOAT_TOL) {
        return Some(Divergence::Score {
            engine: engine.score,
            oracle: oracle.score,
        });
    }
    if engine.end_coord != oracle.end_coord {
        return Some(Divergence::EndCoord {
            engine: engine.end_coord,
            oracle: oracle.end_coord,
        });
    }
    let n = engine.moves.len().max(oracle.moves.len());
    if let Some(index) = (0..n).find(|&k| engine.moves.get(k) != oracle.moves.get(k)) {
        return Some(Divergence::Move {
            index,
            engine: engine.moves.get(index).copied(),
            oracle: oracle.moves.get(index).copied(),
        });
    }
    if engine.start_coord != oracle.start_coord {
        return Some(Divergence::StartCoord {
            engine: engine.start_coord,
            oracle: oracle.start_coord,
        });
    }
    None
}
