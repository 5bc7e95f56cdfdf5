use crate::score::{Objective, Score};
use crate::types::CellScores;

/// Best start-region cell seen by one PE.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub score: Score,
    pub cell: (usize, usize),
    pub scores: CellScores,
}

#[derive(Debug, Clone, Default)]
pub struct LocalMaxTracker {
    pub best: Option<Candidate>,
}

/// `a` beats `b`: better score, or equal score at a smaller reference index,
/// then smaller query index.
#[inline]
pub fn beats(a: &Candidate, b: &Candidate, objective: Objective) -> bool {
    if a.score.better_than(b.score, objective) {
        return true;
    }
    a.score == b.score && (a.cell.1, a.cell.0) < (b.cell.1, b.cell.0)
}

impl LocalMaxTracker {
    #[inline]
    pub fn offer(&mut self, c: Candidate, objective: Objective) {
        match &self.best {
            Some(b) if !beats(&c, b, objective) => {}
            _ => self.best = Some(c),
        }
    }
}

/// Reduction over the per-PE trackers.
pub fn reduce(trackers: &[LocalMaxTracker], objective: Objective) -> Option<Candidate> {
    let mut out = LocalMaxTracker::default();
    for c in trackers.iter().filter_map(|t| t.best) {
        out.offer(c, objective);
    }
    out.best
}
