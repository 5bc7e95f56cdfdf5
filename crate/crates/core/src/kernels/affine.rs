//! Three-layer affine-gap kernels (#2, #4, #8, #12).
//!
//! Layers: `H` (0), `I` (1, vertical gap: consumes query), `D` (2,
//! horizontal gap: consumes reference).
//!
//! Pointer layout (4 bits): bits 0-1 select the source of `H`
//! (diag / up-`I` / left-`D` / end), bit 2 is set when `I` extended an open
//! gap, bit 3 likewise for `D`.

use crate::params::{ParamName, ScoringParams};
use crate::score::Score;
use crate::spec::{InitVectors, PeInput};
use crate::types::{CellScores, TracebackMove, TracebackPointer, TracebackState};

use super::linear::{dna_sub, TB_DIAG, TB_END, TB_LEFT, TB_UP};

pub const H: usize = 0;
pub const I: usize = 1;
pub const D: usize = 2;

const I_EXTEND: u8 = 1 << 2;
const D_EXTEND: u8 = 1 << 3;

/// Opening wins ties against extension.
#[inline]
fn gap_layer(open_from: Score, extend_from: Score, open: Score, extend: Score) -> (Score, bool) {
    let opened = open_from + open;
    if extend_from > opened {
        (extend_from + extend, true)
    } else {
        (opened + extend, false)
    }
}

#[inline]
pub(crate) fn affine_cell(
    inp: &PeInput<'_>,
    sub: Score,
    clamp: bool,
) -> (CellScores, TracebackPointer) {
    let open = inp.params.req(ParamName::GapOpen);
    let extend = inp.params.req(ParamName::GapExtend);

    let (ins, ins_ext) = gap_layer(inp.up.get(H), inp.up.get(I), open, extend);
    let (del, del_ext) = gap_layer(inp.left.get(H), inp.left.get(D), open, extend);
    let diag = inp.diag.get(H) + sub;

    let mut best = del;
    let mut src = TB_LEFT;
    if diag > best {
        best = diag;
        src = TB_DIAG;
    }
    if ins > best {
        best = ins;
        src = TB_UP;
    }
    if clamp {
        let zero = Score::zero(best.kind());
        if zero > best {
            best = zero;
            src = TB_END;
        }
    }
    let mut ptr = src;
    if ins_ext {
        ptr |= I_EXTEND;
    }
    if del_ext {
        ptr |= D_EXTEND;
    }
    (
        CellScores::from_slice(&[best, ins, del]),
        TracebackPointer(ptr),
    )
}

pub(crate) fn pe_global(inp: &PeInput<'_>) -> (CellScores, TracebackPointer) {
    affine_cell(inp, dna_sub(inp), false)
}

pub(crate) fn pe_local(inp: &PeInput<'_>) -> (CellScores, TracebackPointer) {
    affine_cell(inp, dna_sub(inp), true)
}

pub(crate) fn tb(state: TracebackState, ptr: TracebackPointer) -> (TracebackState, TracebackMove) {
    let stay_ins = if ptr.0 & I_EXTEND != 0 {
        TracebackState::Ins
    } else {
        TracebackState::Mm
    };
    let stay_del = if ptr.0 & D_EXTEND != 0 {
        TracebackState::Del
    } else {
        TracebackState::Mm
    };
    match state {
        TracebackState::Mm => match ptr.0 & 0b11 {
            TB_DIAG => (TracebackState::Mm, TracebackMove::Mmi),
            TB_UP => (stay_ins, TracebackMove::Ins),
            TB_LEFT => (stay_del, TracebackMove::Del),
            _ => (TracebackState::Mm, TracebackMove::End),
        },
        TracebackState::Ins | TracebackState::LongIns => (stay_ins, TracebackMove::Ins),
        TracebackState::Del | TracebackState::LongDel => (stay_del, TracebackMove::Del),
    }
}

/// Leading gaps cost `open + k · extend`. The vertical layer is undefined
/// along the top row and the horizontal layer along the left column.
pub(crate) fn init_global(p: &ScoringParams, max_ref: usize, max_qry: usize) -> InitVectors {
    let open = p.req(ParamName::GapOpen);
    let extend = p.req(ParamName::GapExtend);
    let kind = open.kind();
    let worst = Score::worst(kind, crate::score::Objective::Maximize);
    let run = |k: usize| open + extend.times(k);
    InitVectors {
        row: (1..=max_ref)
            .map(|k| CellScores::from_slice(&[run(k), worst, run(k)]))
            .collect(),
        col: (1..=max_qry)
            .map(|k| CellScores::from_slice(&[run(k), run(k), worst]))
            .collect(),
        origin: CellScores::from_slice(&[Score::zero(kind), worst, worst]),
    }
}

pub(crate) fn init_local(p: &ScoringParams, max_ref: usize, max_qry: usize) -> InitVectors {
    let kind = p.req(ParamName::GapOpen).kind();
    let worst = Score::worst(kind, crate::score::Objective::Maximize);
    let cell = CellScores::from_slice(&[Score::zero(kind), worst, worst]);
    InitVectors {
        row: vec![cell; max_ref],
        col: vec![cell; max_qry],
        origin: cell,
    }
}
