//! Single-layer kernels with a linear gap penalty (#1, #3, #6, #7, #11, #15).

use crate::params::{ParamName, ScoringParams};
use crate::score::Score;
use crate::spec::{InitVectors, PeInput};
use crate::types::{CellScores, TracebackMove, TracebackPointer, TracebackState};

pub const TB_DIAG: u8 = 0;
pub const TB_UP: u8 = 1;
pub const TB_LEFT: u8 = 2;
pub const TB_END: u8 = 3;

#[inline]
pub(crate) fn dna_sub(inp: &PeInput<'_>) -> Score {
    if inp.query.code() == inp.reference.code() {
        inp.params.req(ParamName::Match)
    } else {
        inp.params.req(ParamName::Mismatch)
    }
}

#[inline]
fn matrix_sub(inp: &PeInput<'_>) -> Score {
    inp.params
        .req_sub()
        .get(inp.query.code(), inp.reference.code())
}

/// Candidates are taken in the order left, diagonal, up, zero and replaced
/// only on a strictly greater value, so earlier candidates win ties.
#[inline]
fn linear_cell(inp: &PeInput<'_>, sub: Score, clamp: bool) -> (CellScores, TracebackPointer) {
    let gap = inp.params.req(ParamName::LinearGap);
    let left = inp.left.get(0) + gap;
    let diag = inp.diag.get(0) + sub;
    let up = inp.up.get(0) + gap;

    let mut best = left;
    let mut ptr = TB_LEFT;
    if diag > best {
        best = diag;
        ptr = TB_DIAG;
    }
    if up > best {
        best = up;
        ptr = TB_UP;
    }
    if clamp {
        let zero = Score::zero(best.kind());
        if zero > best {
            best = zero;
            ptr = TB_END;
        }
    }
    (CellScores::filled(1, best), TracebackPointer(ptr))
}

pub(crate) fn pe_global(inp: &PeInput<'_>) -> (CellScores, TracebackPointer) {
    linear_cell(inp, dna_sub(inp), false)
}

pub(crate) fn pe_local(inp: &PeInput<'_>) -> (CellScores, TracebackPointer) {
    linear_cell(inp, dna_sub(inp), true)
}

pub(crate) fn pe_protein_local(inp: &PeInput<'_>) -> (CellScores, TracebackPointer) {
    linear_cell(inp, matrix_sub(inp), true)
}

pub(crate) fn tb(state: TracebackState, ptr: TracebackPointer) -> (TracebackState, TracebackMove) {
    let mv = match ptr.0 {
        TB_DIAG => TracebackMove::Mmi,
        TB_UP => TracebackMove::Ins,
        TB_LEFT => TracebackMove::Del,
        _ => TracebackMove::End,
    };
    // single-state machine
    let _ = state;
    (TracebackState::Mm, mv)
}

fn gap_ramp(gap: Score, len: usize) -> Vec<CellScores> {
    (1..=len).map(|k| CellScores::filled(1, gap.times(k))).collect()
}

/// Row and column both pay `k · gap` for a leading gap of length `k`.
pub(crate) fn init_global(p: &ScoringParams, max_ref: usize, max_qry: usize) -> InitVectors {
    let gap = p.req(ParamName::LinearGap);
    InitVectors {
        row: gap_ramp(gap, max_ref),
        col: gap_ramp(gap, max_qry),
        origin: CellScores::filled(1, Score::zero(gap.kind())),
    }
}

pub(crate) fn init_zero(p: &ScoringParams, max_ref: usize, max_qry: usize) -> InitVectors {
    let zero = Score::zero(p.req(ParamName::LinearGap).kind());
    let cell = CellScores::filled(1, zero);
    InitVectors {
        row: vec![cell; max_ref],
        col: vec![cell; max_qry],
        origin: cell,
    }
}

/// Free leading reference gap, paid leading query gap.
pub(crate) fn init_semiglobal(p: &ScoringParams, max_ref: usize, max_qry: usize) -> InitVectors {
    let gap = p.req(ParamName::LinearGap);
    let zero = CellScores::filled(1, Score::zero(gap.kind()));
    InitVectors {
        row: vec![zero; max_ref],
        col: gap_ramp(gap, max_qry),
        origin: zero,
    }
}
