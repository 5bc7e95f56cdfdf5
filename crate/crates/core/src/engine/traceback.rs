use std::iter::repeat_n;

use crate::spec::KernelSpec;
use crate::types::{Coord, Strategy, TracebackMove, TracebackState};

use super::tb_memory::TbMemory;
use super::{in_band_coord, EngineError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracebackOutcome {
    /// Moves from the end cell towards the start, closed by one `End`.
    pub moves: Vec<TracebackMove>,
    /// Where the walk stopped, boundary-inclusive.
    pub stop: Coord,
}

/// Walks pointers from 0-based cell `from` in `state` until an `End` move or
/// the policy's boundary condition.
///
/// On the boundary the remaining path is forced: global alignments finish
/// along row 0 or column 0 to the origin, semi-global ones finish a column-0
/// run up to row 0, local and overlap alignments stop.
pub fn traceback(
    spec: &KernelSpec,
    tb: &TbMemory,
    from: (usize, usize),
    mut state: TracebackState,
    dims: (usize, usize),
    band: Option<usize>,
) -> Result<TracebackOutcome, EngineError> {
    let limit = dims.0 + dims.1 + 1;
    let (mut r, mut c) = (from.0 + 1, from.1 + 1);
    let mut moves = Vec::new();

    loop {
        if moves.len() > limit {
            return Err(EngineError::NonTerminating { limit });
        }
        if r == 0 || c == 0 {
            let forced = match spec.policy.strategy {
                Strategy::Global | Strategy::None => (r, c),
                Strategy::SemiGlobal => (r, 0),
                Strategy::Local | Strategy::Overlap => (0, 0),
            };
            if forced != (0, 0) && !in_band_coord(band, r, c) {
                return Err(EngineError::TracebackOutOfBounds {
                    coord: Coord::new(r, c),
                });
            }
            moves.extend(repeat_n(TracebackMove::Del, forced.1));
            moves.extend(repeat_n(TracebackMove::Ins, forced.0));
            r -= forced.0;
            c -= forced.1;
            break;
        }
        let ptr = tb
            .read(r - 1, c - 1)
            .ok_or(EngineError::TracebackOutOfBounds {
                coord: Coord::new(r, c),
            })?;
        let (next, mv) = (spec.tb_transition)(state, ptr);
        match mv {
            TracebackMove::End => break,
            TracebackMove::Mmi => {
                r -= 1;
                c -= 1;
            }
            TracebackMove::Ins => r -= 1,
            TracebackMove::Del => c -= 1,
        }
        moves.push(mv);
        state = next;
    }
    moves.push(TracebackMove::End);
    Ok(TracebackOutcome {
        moves,
        stop: Coord::new(r, c),
    })
}
