//! Five-layer two-piece affine kernels (#5, #13).
//!
//! Layers `H, I1, D1, I2, D2`; each `(I_k, D_k)` pair runs the affine
//! recurrence with its own `(open_k, extend_k)`, so a gap of length `k`
//! costs the better of the two lines.
//!
//! Pointer layout (7 bits): bits 0-2 pick the source of `H`, bits 3-6 are
//! the extend flags of `I1, D1, I2, D2`.

use crate::params::{ParamName, ScoringParams};
use crate::score::{Objective, Score};
use crate::spec::{InitVectors, PeInput};
use crate::types::{CellScores, TracebackMove, TracebackPointer, TracebackState};

use super::linear::dna_sub;

pub const SRC_DIAG: u8 = 0;
pub const SRC_I1: u8 = 1;
pub const SRC_D1: u8 = 2;
pub const SRC_I2: u8 = 3;
pub const SRC_D2: u8 = 4;

const I1_EXTEND: u8 = 1 << 3;
const D1_EXTEND: u8 = 1 << 4;
const I2_EXTEND: u8 = 1 << 5;
const D2_EXTEND: u8 = 1 << 6;

#[inline]
fn gap_layer(
    open_from: Score,
    extend_from: Score,
    open: Score,
    extend: Score,
    flag: u8,
) -> (Score, u8) {
    let opened = open_from + open;
    if extend_from > opened {
        (extend_from + extend, flag)
    } else {
        (opened + extend, 0)
    }
}

pub(crate) fn pe_global(inp: &PeInput<'_>) -> (CellScores, TracebackPointer) {
    let p = inp.params;
    let (o1, e1) = (p.req(ParamName::GapOpen), p.req(ParamName::GapExtend));
    let (o2, e2) = (p.req(ParamName::GapOpen2), p.req(ParamName::GapExtend2));
    let (up, left) = (inp.up, inp.left);

    let (i1, f_i1) = gap_layer(up.get(0), up.get(1), o1, e1, I1_EXTEND);
    let (d1, f_d1) = gap_layer(left.get(0), left.get(2), o1, e1, D1_EXTEND);
    let (i2, f_i2) = gap_layer(up.get(0), up.get(3), o2, e2, I2_EXTEND);
    let (d2, f_d2) = gap_layer(left.get(0), left.get(4), o2, e2, D2_EXTEND);
    let diag = inp.diag.get(0) + dna_sub(inp);

    // left group, diagonal, up group; strictly-greater replacement
    let mut best = d1;
    let mut src = SRC_D1;
    for (cand, s) in [(d2, SRC_D2), (diag, SRC_DIAG), (i1, SRC_I1), (i2, SRC_I2)] {
        if cand > best {
            best = cand;
            src = s;
        }
    }
    (
        CellScores::from_slice(&[best, i1, d1, i2, d2]),
        TracebackPointer(src | f_i1 | f_d1 | f_i2 | f_d2),
    )
}

pub(crate) fn tb(state: TracebackState, ptr: TracebackPointer) -> (TracebackState, TracebackMove) {
    let bits = ptr.0;
    let next = |flag: u8, stay: TracebackState| {
        if bits & flag != 0 {
            stay
        } else {
            TracebackState::Mm
        }
    };
    match state {
        TracebackState::Mm => match bits & 0b111 {
            SRC_DIAG => (TracebackState::Mm, TracebackMove::Mmi),
            SRC_I1 => (next(I1_EXTEND, TracebackState::Ins), TracebackMove::Ins),
            SRC_D1 => (next(D1_EXTEND, TracebackState::Del), TracebackMove::Del),
            SRC_I2 => (next(I2_EXTEND, TracebackState::LongIns), TracebackMove::Ins),
            SRC_D2 => (next(D2_EXTEND, TracebackState::LongDel), TracebackMove::Del),
            _ => (TracebackState::Mm, TracebackMove::End),
        },
        TracebackState::Ins => (next(I1_EXTEND, TracebackState::Ins), TracebackMove::Ins),
        TracebackState::Del => (next(D1_EXTEND, TracebackState::Del), TracebackMove::Del),
        TracebackState::LongIns => (next(I2_EXTEND, TracebackState::LongIns), TracebackMove::Ins),
        TracebackState::LongDel => (next(D2_EXTEND, TracebackState::LongDel), TracebackMove::Del),
    }
}

/// A leading gap of length `k` costs `max(open1 + k·ext1, open2 + k·ext2)`.
pub(crate) fn init_global(p: &ScoringParams, max_ref: usize, max_qry: usize) -> InitVectors {
    let (o1, e1) = (p.req(ParamName::GapOpen), p.req(ParamName::GapExtend));
    let (o2, e2) = (p.req(ParamName::GapOpen2), p.req(ParamName::GapExtend2));
    let kind = o1.kind();
    let worst = Score::worst(kind, Objective::Maximize);
    let short = |k: usize| o1 + e1.times(k);
    let long = |k: usize| o2 + e2.times(k);
    let best = |k: usize| {
        let (a, b) = (short(k), long(k));
        if b > a {
            b
        } else {
            a
        }
    };
    InitVectors {
        row: (1..=max_ref)
            .map(|k| CellScores::from_slice(&[best(k), worst, short(k), worst, long(k)]))
            .collect(),
        col: (1..=max_qry)
            .map(|k| CellScores::from_slice(&[best(k), short(k), worst, long(k), worst]))
            .collect(),
        origin: CellScores::from_slice(&[Score::zero(kind), worst, worst, worst, worst]),
    }
}
