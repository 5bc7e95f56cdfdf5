//! Reference implementations used to check the engine.
//!
//! [`oracle_align`] evaluates a kernel's own cell function in a plain
//! row-major double loop over a fully materialized matrix. [`enumerate_paths`]
//! and [`rescore`] score lattice paths straight from the gap model, and
//! [`closed_form`] holds hand-written recurrences for three kernels, so the
//! kernel definitions are themselves cross-checked.

pub mod closed_form;
mod paths;

use thiserror::Error;

pub use paths::{enumerate_paths, rescore, ENUMERATION_LIMIT};

use crate::score::Score;
use crate::spec::{KernelSpec, PeInput, ResultLayer};
use crate::symbol::Symbol;
use crate::types::{
    AlignmentResult, CellScores, Coord, StartRegion, Strategy, TracebackMove, TracebackPointer,
    TracebackState,
};

/// Largest sequence length [`oracle_align`] accepts.
pub const ORACLE_LIMIT: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle input {len} exceeds the {limit}-symbol limit")]
    OracleSizeExceeded { len: usize, limit: usize },
    #[error("enumeration input Q+R = {total} exceeds {limit}")]
    EnumerationSizeExceeded { total: usize, limit: usize },
    #[error("empty sequence")]
    EmptySequence,
    #[error("no cell of the start region lies inside the band")]
    NoValidStartCell,
    #[error("oracle traceback failed: {0}")]
    Traceback(String),
    #[error("illegal path: {0}")]
    IllegalPath(String),
    #[error("unsupported kernel: {0}")]
    Unsupported(String),
}

/// Dense `Q × R` score and pointer matrices. Cells outside the band hold the
/// kernel's worst value and no pointer.
#[derive(Debug, Clone, PartialEq)]
pub struct FullMatrix {
    q_len: usize,
    r_len: usize,
    band: Option<usize>,
    scores: Vec<CellScores>,
    pointers: Vec<Option<TracebackPointer>>,
}

impl FullMatrix {
    pub fn dims(&self) -> (usize, usize) {
        (self.q_len, self.r_len)
    }

    pub fn cell(&self, i: usize, j: usize) -> &CellScores {
        &self.scores[i * self.r_len + j]
    }

    pub fn pointer(&self, i: usize, j: usize) -> Option<TracebackPointer> {
        self.pointers[i * self.r_len + j]
    }

    pub fn in_band(&self, i: usize, j: usize) -> bool {
        match self.band {
            Some(w) => i.abs_diff(j) <= w,
            None => true,
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = ((usize, usize), &CellScores)> {
        let r = self.r_len;
        self.scores.iter().enumerate().map(move |(k, s)| ((k / r, k % r), s))
    }
}

/// Row-major evaluation using `spec.band` for masking.
pub fn oracle_align(
    spec: &KernelSpec,
    query: &[Symbol],
    reference: &[Symbol],
) -> Result<(AlignmentResult, FullMatrix), OracleError> {
    oracle_align_with_band(spec, query, reference, spec.band)
}

#[allow(clippy::needless_range_loop)]
pub fn oracle_align_with_band(
    spec: &KernelSpec,
    query: &[Symbol],
    reference: &[Symbol],
    band: Option<usize>,
) -> Result<(AlignmentResult, FullMatrix), OracleError> {
    let (q, r) = (query.len(), reference.len());
    if q == 0 || r == 0 {
        return Err(OracleError::EmptySequence);
    }
    if q.max(r) > ORACLE_LIMIT {
        return Err(OracleError::OracleSizeExceeded {
            len: q.max(r),
            limit: ORACLE_LIMIT,
        });
    }
    let ok = |row: usize, col: usize| band.is_none_or(|w| row.abs_diff(col) <= w);
    let worst = CellScores::filled(spec.n_layers, spec.worst());

    let mut init = (spec.init)(&spec.params, r, q);
    for (j, cell) in init.row.iter_mut().enumerate() {
        if !ok(0, j + 1) {
            *cell = worst;
        }
    }
    for (i, cell) in init.col.iter_mut().enumerate() {
        if !ok(i + 1, 0) {
            *cell = worst;
        }
    }

    let mut m = FullMatrix {
        q_len: q,
        r_len: r,
        band,
        scores: vec![worst; q * r],
        pointers: vec![None; q * r],
    };
    // boundary-inclusive lookup
    let at = |m: &FullMatrix, row: usize, col: usize| -> CellScores {
        match (row, col) {
            (0, 0) => init.origin,
            (0, c) => init.row[c - 1],
            (r, 0) => init.col[r - 1],
            (r, c) => *m.cell(r - 1, c - 1),
        }
    };
    for i in 0..q {
        for j in 0..r {
            if !ok(i + 1, j + 1) {
                continue;
            }
            let (up, diag, left) = (at(&m, i, j + 1), at(&m, i, j), at(&m, i + 1, j));
            let (scores, ptr) = (spec.pe)(&PeInput {
                up: &up,
                diag: &diag,
                left: &left,
                query: &query[i],
                reference: &reference[j],
                params: &spec.params,
                cell: (i, j),
            });
            m.scores[i * r + j] = scores;
            m.pointers[i * r + j] = Some(ptr);
        }
    }

    let region = spec.policy.start_region();
    let objective = spec.objective();
    let mut best: Option<(Score, usize, usize)> = None;
    // column-major scan: the first strictly better cell wins, which is the
    // smallest reference index, then the smallest query index, among ties
    for j in 0..r {
        for i in 0..q {
            if !ok(i + 1, j + 1) || !region_has(region, i, j, q, r) {
                continue;
            }
            let s = spec.result_score(m.cell(i, j));
            if best.is_none_or(|(b, _, _)| s.better_than(b, objective)) {
                best = Some((s, i, j));
            }
        }
    }
    let (score, bi, bj) = best.ok_or(OracleError::NoValidStartCell)?;
    let layers_at_end = *m.cell(bi, bj);
    let end_coord = Coord::of_cell(bi, bj);

    if !spec.policy.emits_traceback() {
        let res = AlignmentResult {
            score,
            end_coord,
            start_coord: end_coord,
            moves: Vec::new(),
            layers_at_end,
        };
        return Ok((res, m));
    }

    let mut state = match spec.result_layer {
        ResultLayer::Primary => TracebackState::Mm,
        ResultLayer::Best => {
            let k = layers_at_end
                .as_slice()
                .iter()
                .position(|s| *s == score)
                .unwrap_or(0);
            TracebackState::ALL[k]
        }
    };
    let (mut row, mut col) = (bi + 1, bj + 1);
    let mut moves = Vec::new();
    while row > 0 && col > 0 {
        let ptr = m
            .pointer(row - 1, col - 1)
            .ok_or_else(|| OracleError::Traceback(format!("pruned cell at {row},{col}")))?;
        let (next, mv) = (spec.tb_transition)(state, ptr);
        if mv == TracebackMove::End {
            break;
        }
        let (dq, dr) = mv.consumes();
        row -= dq;
        col -= dr;
        moves.push(mv);
        state = next;
        if moves.len() > q + r {
            return Err(OracleError::Traceback("walk does not terminate".into()));
        }
    }
    let global = matches!(spec.policy.strategy, Strategy::Global | Strategy::None);
    if row == 0 && global {
        moves.extend(std::iter::repeat_n(TracebackMove::Del, col));
        col = 0;
    }
    if col == 0 && (global || spec.policy.strategy == Strategy::SemiGlobal) {
        moves.extend(std::iter::repeat_n(TracebackMove::Ins, row));
        row = 0;
    }
    moves.push(TracebackMove::End);
    let res = AlignmentResult {
        score,
        end_coord,
        start_coord: Coord::new(row, col),
        moves,
        layers_at_end,
    };
    Ok((res, m))
}

fn region_has(region: StartRegion, i: usize, j: usize, q: usize, r: usize) -> bool {
    match region {
        StartRegion::Corner => (i, j) == (q - 1, r - 1),
        StartRegion::Anywhere => true,
        StartRegion::LastRow => i == q - 1,
        StartRegion::LastRowOrColumn => i == q - 1 || j == r - 1,
    }
}
