//! Dynamic time warping (#9, complex samples) and semi-global DTW (#14,
//! integer samples). Single layer, minimizing.
//!
//! The boundary row and column hold the forbidden value and the origin holds
//! zero, so the first cell is `dist(q0, r0)` and the edges accumulate running
//! sums. sDTW instead zeroes the whole top row, letting the query start
//! anywhere in the reference.

use crate::params::{DistanceMetric, ScoringParams};
use crate::score::{Objective, Score, ScoreKind};
use crate::spec::{InitVectors, PeInput};
use crate::symbol::Symbol;
use crate::types::{CellScores, TracebackPointer};

use super::linear::{TB_DIAG, TB_LEFT, TB_UP};

pub fn complex_distance(a: (f64, f64), b: (f64, f64), metric: DistanceMetric) -> f64 {
    let (dr, di) = (a.0 - b.0, a.1 - b.1);
    match metric {
        DistanceMetric::Manhattan | DistanceMetric::AbsDiff => dr.abs() + di.abs(),
        DistanceMetric::Euclidean => dr.hypot(di),
    }
}

pub fn int_distance(a: i32, b: i32) -> i32 {
    let d = (i64::from(a) - i64::from(b)).abs();
    i32::try_from(d).unwrap_or(i32::MAX)
}

/// Distance between two samples of the same kind.
pub fn sample_distance(q: &Symbol, r: &Symbol, metric: DistanceMetric) -> Score {
    match (q, r) {
        (Symbol::ComplexSample { re: a, im: b }, Symbol::ComplexSample { re: c, im: d }) => {
            Score::Float(complex_distance((*a, *b), (*c, *d), metric))
        }
        (Symbol::IntSample(a), Symbol::IntSample(b)) => Score::Int(int_distance(*a, *b)),
        other => panic!("DTW kernel given {other:?}"),
    }
}

/// Left, diagonal, up; replaced only on a strictly smaller value.
#[inline]
fn warp_cell(inp: &PeInput<'_>, dist: Score) -> (CellScores, TracebackPointer) {
    let mut best = inp.left.get(0);
    let mut ptr = TB_LEFT;
    if inp.diag.get(0) < best {
        best = inp.diag.get(0);
        ptr = TB_DIAG;
    }
    if inp.up.get(0) < best {
        best = inp.up.get(0);
        ptr = TB_UP;
    }
    (CellScores::filled(1, dist + best), TracebackPointer(ptr))
}

pub(crate) fn pe_dtw(inp: &PeInput<'_>) -> (CellScores, TracebackPointer) {
    let metric = inp.params.distance_metric.unwrap_or_default();
    warp_cell(inp, sample_distance(inp.query, inp.reference, metric))
}

pub(crate) fn pe_sdtw(inp: &PeInput<'_>) -> (CellScores, TracebackPointer) {
    warp_cell(
        inp,
        sample_distance(inp.query, inp.reference, DistanceMetric::AbsDiff),
    )
}

fn forbidden_edges(kind: ScoreKind, free_row: bool, max_ref: usize, max_qry: usize) -> InitVectors {
    let worst = CellScores::filled(1, Score::worst(kind, Objective::Minimize));
    let zero = CellScores::filled(1, Score::zero(kind));
    InitVectors {
        row: vec![if free_row { zero } else { worst }; max_ref],
        col: vec![worst; max_qry],
        origin: zero,
    }
}

pub(crate) fn init_dtw(_: &ScoringParams, max_ref: usize, max_qry: usize) -> InitVectors {
    forbidden_edges(ScoreKind::Float64, false, max_ref, max_qry)
}

pub(crate) fn init_sdtw(_: &ScoringParams, max_ref: usize, max_qry: usize) -> InitVectors {
    forbidden_edges(ScoreKind::Int32Saturating, true, max_ref, max_qry)
}
