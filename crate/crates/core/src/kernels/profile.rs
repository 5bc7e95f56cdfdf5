//! Profile-to-profile alignment (#8): affine layers over 5-entry frequency
//! columns (A, C, G, T, gap) scored with the sum-of-pairs bilinear form.

use crate::params::SubMatrix;
use crate::score::Score;
use crate::spec::PeInput;
use crate::symbol::Symbol;
use crate::types::{CellScores, TracebackPointer};

use super::affine::affine_cell;

/// `q · M · r`, computed as `M · r` followed by a dot product with `q`.
pub fn sum_of_pairs(q: &[f64; 5], r: &[f64; 5], m: &SubMatrix) -> f64 {
    let mut mr = [0.0; 5];
    for (a, slot) in mr.iter_mut().enumerate() {
        *slot = (0..5).map(|b| m.get(a, b).as_f64() * r[b]).sum();
    }
    q.iter().zip(&mr).map(|(x, y)| x * y).sum()
}

fn column(s: &Symbol) -> &[f64; 5] {
    match s {
        Symbol::ProfileColumn(p) => p,
        other => panic!("profile kernel given {other:?}"),
    }
}

pub(crate) fn pe_global(inp: &PeInput<'_>) -> (CellScores, TracebackPointer) {
    let sub = sum_of_pairs(
        column(inp.query),
        column(inp.reference),
        inp.params.req_sub(),
    );
    affine_cell(inp, Score::Float(sub), false)
}
