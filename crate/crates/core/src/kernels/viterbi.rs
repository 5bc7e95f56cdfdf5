//! Pair-HMM Viterbi (#10) in log space, score only.
//!
//! ```text
//! M(i,j) = e[q_i][r_j] + max(M, I, D)(i-1, j-1)
//! I(i,j) = max(M(i-1,j) + log_mu, I(i-1,j) + log_lambda) + e[q_i][gap]
//! D(i,j) = max(M(i,j-1) + log_mu, D(i,j-1) + log_lambda) + e[gap][r_j]
//! ```
//!
//! The chain starts in `M` at the origin; every other boundary entry is
//! `-inf`. The result is the best of the three layers at the corner.

use crate::params::{ParamName, ScoringParams};
use crate::score::Score;
use crate::spec::{InitVectors, PeInput};
use crate::symbol::GAP_INDEX;
use crate::types::{CellScores, TracebackMove, TracebackPointer, TracebackState};

pub const M: usize = 0;
pub const I: usize = 1;
pub const D: usize = 2;

const I_EXTEND: u8 = 1 << 2;
const D_EXTEND: u8 = 1 << 3;

pub(crate) fn pe(inp: &PeInput<'_>) -> (CellScores, TracebackPointer) {
    let p = inp.params;
    let e = p.req_emission();
    let mu = p.req(ParamName::LogMu);
    let lambda = p.req(ParamName::LogLambda);
    let (q, r) = (inp.query.code(), inp.reference.code());

    let mut from = inp.diag.get(M);
    let mut src = M as u8;
    for layer in [I, D] {
        if inp.diag.get(layer) > from {
            from = inp.diag.get(layer);
            src = layer as u8;
        }
    }
    let m = e.get(q, r) + from;

    let (i_open, i_ext) = (inp.up.get(M) + mu, inp.up.get(I) + lambda);
    let (i, i_flag) = if i_ext > i_open { (i_ext, I_EXTEND) } else { (i_open, 0) };
    let i = i + e.get(q, GAP_INDEX);

    let (d_open, d_ext) = (inp.left.get(M) + mu, inp.left.get(D) + lambda);
    let (d, d_flag) = if d_ext > d_open { (d_ext, D_EXTEND) } else { (d_open, 0) };
    let d = d + e.get(GAP_INDEX, r);

    (
        CellScores::from_slice(&[m, i, d]),
        TracebackPointer(src | i_flag | d_flag),
    )
}

/// Total over the three states; the kernel ships without traceback.
pub(crate) fn tb(state: TracebackState, ptr: TracebackPointer) -> (TracebackState, TracebackMove) {
    let bits = ptr.0;
    match state {
        TracebackState::Mm => {
            let next = match bits & 0b11 {
                1 => TracebackState::Ins,
                2 => TracebackState::Del,
                _ => TracebackState::Mm,
            };
            (next, TracebackMove::Mmi)
        }
        TracebackState::Ins | TracebackState::LongIns => {
            let next = if bits & I_EXTEND != 0 { TracebackState::Ins } else { TracebackState::Mm };
            (next, TracebackMove::Ins)
        }
        TracebackState::Del | TracebackState::LongDel => {
            let next = if bits & D_EXTEND != 0 { TracebackState::Del } else { TracebackState::Mm };
            (next, TracebackMove::Del)
        }
    }
}

pub(crate) fn init(_: &ScoringParams, max_ref: usize, max_qry: usize) -> InitVectors {
    let ninf = Score::Float(f64::NEG_INFINITY);
    let blocked = CellScores::filled(3, ninf);
    InitVectors {
        row: vec![blocked; max_ref],
        col: vec![blocked; max_qry],
        origin: CellScores::from_slice(&[Score::Float(0.0), ninf, ninf]),
    }
}
