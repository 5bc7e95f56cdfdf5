//! Long alignments as a chain of overlapping tiles.
//!
//! Each tile globally aligns a `T × T` window starting where the previous
//! tile's kept path ended. Every tile except the last drops the tail of its
//! path that enters the final `O` symbols of either window, since that part
//! was forced towards the window corner. Once one sequence is used up the
//! rest of the other becomes a gap.

use dphls_core::engine::align;
use dphls_core::oracle::{rescore, OracleError};
use dphls_core::types::{Coord, TracebackMove};
use dphls_core::{AlignmentResult, EngineConfig, EngineError, KernelSpec, Strategy, Symbol};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TilingPlan {
    pub tile_size: usize,
    pub overlap: usize,
}

impl Default for TilingPlan {
    fn default() -> Self {
        TilingPlan {
            tile_size: 256,
            overlap: 32,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TileError {
    #[error("invalid tiling plan: {0}")]
    InvalidPlan(String),
    #[error("tiling needs a global kernel with traceback, `{0}` is not one")]
    NotGlobal(String),
    #[error("tile at query {query}, reference {reference} consumed nothing")]
    TilingStalled { query: usize, reference: usize },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("stitched path: {0}")]
    Rescore(#[from] OracleError),
}

/// One aligned tile.
#[derive(Debug, Clone, PartialEq)]
pub struct Tile {
    /// Window origin, 0-based.
    pub origin: (usize, usize),
    /// Symbols consumed by the kept part of the path.
    pub consumed: (usize, usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TiledAlignment {
    pub result: AlignmentResult,
    pub tiles: Vec<Tile>,
}

/// Longest prefix of `path` whose consumption stays out of the overlap
/// margin on each axis whose window does not reach the sequence end.
fn kept_prefix(path: &[TracebackMove], limit: (Option<usize>, Option<usize>)) -> (usize, (usize, usize)) {
    let (mut q, mut r) = (0, 0);
    let mut kept = 0;
    for (k, mv) in path.iter().enumerate() {
        let (dq, dr) = mv.consumes();
        let (nq, nr) = (q + dq, r + dr);
        if limit.0.is_some_and(|l| nq > l) || limit.1.is_some_and(|l| nr > l) {
            break;
        }
        (q, r, kept) = (nq, nr, k + 1);
    }
    (kept, (q, r))
}

pub fn run_tiled_alignment(
    spec: &KernelSpec,
    config: &EngineConfig,
    query: &[Symbol],
    reference: &[Symbol],
    plan: TilingPlan,
) -> Result<TiledAlignment, TileError> {
    let TilingPlan { tile_size: t, overlap: o } = plan;
    if o == 0 || o >= t {
        return Err(TileError::InvalidPlan(format!("need 0 < overlap < tile, got {o} and {t}")));
    }
    let global = matches!(spec.policy.strategy, Strategy::Global | Strategy::None);
    if !global || !spec.policy.emits_traceback() {
        return Err(TileError::NotGlobal(spec.name.clone()));
    }
    let config = EngineConfig {
        max_query_length: t,
        max_reference_length: t,
        ..config.clone()
    };
    let (q_len, r_len) = (query.len(), reference.len());
    if q_len <= t && r_len <= t {
        let result = align(spec, &config, query, reference)?;
        let tiles = vec![Tile {
            origin: (0, 0),
            consumed: (q_len, r_len),
        }];
        return Ok(TiledAlignment { result, tiles });
    }

    let mut path = Vec::with_capacity(q_len + r_len);
    let mut tiles = Vec::new();
    let (mut qi, mut rj) = (0, 0);
    let mut layers = None;
    while qi < q_len && rj < r_len {
        let (qe, re) = ((qi + t).min(q_len), (rj + t).min(r_len));
        let res = align(spec, &config, &query[qi..qe], &reference[rj..re])?;
        let forward = res.forward_path();
        let limit = (
            (qe < q_len).then_some(qe - qi - o),
            (re < r_len).then_some(re - rj - o),
        );
        let (kept, (dq, dr)) = kept_prefix(&forward, limit);
        if dq == 0 && dr == 0 {
            return Err(TileError::TilingStalled { query: qi, reference: rj });
        }
        path.extend_from_slice(&forward[..kept]);
        tiles.push(Tile {
            origin: (qi, rj),
            consumed: (dq, dr),
        });
        qi += dq;
        rj += dr;
        layers = Some(res.layers_at_end);
    }
    path.extend(std::iter::repeat_n(TracebackMove::Ins, q_len - qi));
    path.extend(std::iter::repeat_n(TracebackMove::Del, r_len - rj));

    let mut moves: Vec<TracebackMove> = path.into_iter().rev().collect();
    moves.push(TracebackMove::End);
    let mut result = AlignmentResult {
        score: spec.worst(),
        end_coord: Coord::new(q_len, r_len),
        start_coord: Coord::new(0, 0),
        moves,
        layers_at_end: layers.expect("at least one tile"),
    };
    // tiles see no band outside their window, so rescore without one
    let unbanded = spec.clone().with_band(None);
    result.score = rescore(&unbanded, query, reference, &result)?;
    Ok(TiledAlignment { result, tiles })
}
