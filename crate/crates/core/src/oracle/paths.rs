//! Path-level scoring written directly from each kernel family's gap model,
//! without touching the kernels' cell functions. Used both to re-score an
//! emitted alignment and to enumerate every lattice path of a tiny instance.

use crate::params::{DistanceMetric, ParamName, ScoringParams, SubMatrix};
use crate::score::{Score, ScoreKind};
use crate::spec::KernelSpec;
use crate::symbol::{Symbol, GAP_INDEX};
use crate::types::{AlignmentResult, Coord, Strategy, TracebackMove};

use super::OracleError;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Gaps {
    Linear(Score),
    Affine { open: Score, extend: Score },
    TwoPiece { short: (Score, Score), long: (Score, Score) },
}

#[derive(Debug, Clone, PartialEq)]
enum Model {
    /// Substitution plus gap model; boundary runs are paid like any gap.
    Edit { sub: Sub, gaps: Gaps },
    /// Sum of distances over every entered cell.
    Warp { metric: DistanceMetric },
    Hmm { emission: SubMatrix, mu: Score, lambda: Score },
}

#[derive(Debug, Clone, PartialEq)]
enum Sub {
    MatchMismatch(Score, Score),
    Matrix(SubMatrix),
    SumOfPairs(SubMatrix),
}

/// Running state of a partial path.
#[derive(Debug, Clone, Copy)]
struct Walk {
    at: Coord,
    score: Score,
    last: Option<TracebackMove>,
    run: usize,
    /// Score before the current gap run.
    base: Score,
}

struct Scorer<'a> {
    model: Model,
    kind: ScoreKind,
    query: &'a [Symbol],
    reference: &'a [Symbol],
}

fn param(p: &ScoringParams, name: ParamName) -> Result<Score, OracleError> {
    p.scalar(name).ok_or(OracleError::Unsupported(format!("missing {name}")))
}

fn model_for(spec: &KernelSpec) -> Result<Model, OracleError> {
    let p = &spec.params;
    let mm = || -> Result<Sub, OracleError> {
        Ok(Sub::MatchMismatch(param(p, ParamName::Match)?, param(p, ParamName::Mismatch)?))
    };
    let matrix = || {
        p.substitution_matrix
            .clone()
            .ok_or(OracleError::Unsupported("missing substitution_matrix".into()))
    };
    let affine = || -> Result<Gaps, OracleError> {
        Ok(Gaps::Affine {
            open: param(p, ParamName::GapOpen)?,
            extend: param(p, ParamName::GapExtend)?,
        })
    };
    Ok(match spec.id {
        1 | 3 | 6 | 7 | 11 => Model::Edit {
            sub: mm()?,
            gaps: Gaps::Linear(param(p, ParamName::LinearGap)?),
        },
        15 => Model::Edit {
            sub: Sub::Matrix(matrix()?),
            gaps: Gaps::Linear(param(p, ParamName::LinearGap)?),
        },
        2 | 4 | 12 => Model::Edit { sub: mm()?, gaps: affine()? },
        8 => Model::Edit {
            sub: Sub::SumOfPairs(matrix()?),
            gaps: affine()?,
        },
        5 | 13 => Model::Edit {
            sub: mm()?,
            gaps: Gaps::TwoPiece {
                short: (param(p, ParamName::GapOpen)?, param(p, ParamName::GapExtend)?),
                long: (param(p, ParamName::GapOpen2)?, param(p, ParamName::GapExtend2)?),
            },
        },
        9 => Model::Warp {
            metric: p.distance_metric.unwrap_or_default(),
        },
        14 => Model::Warp {
            metric: DistanceMetric::AbsDiff,
        },
        10 => Model::Hmm {
            emission: p
                .emission
                .clone()
                .ok_or(OracleError::Unsupported("missing emission".into()))?,
            mu: param(p, ParamName::LogMu)?,
            lambda: param(p, ParamName::LogLambda)?,
        },
        other => {
            return Err(OracleError::Unsupported(format!(
                "no path model for kernel id {other}"
            )))
        }
    })
}

fn distance(q: &Symbol, r: &Symbol, metric: DistanceMetric) -> Score {
    match (q, r) {
        (Symbol::IntSample(a), Symbol::IntSample(b)) => {
            Score::Int((i64::from(*a) - i64::from(*b)).abs().min(i64::from(i32::MAX)) as i32)
        }
        (Symbol::ComplexSample { re: a, im: b }, Symbol::ComplexSample { re: c, im: d }) => {
            let (x, y) = ((a - c).abs(), (b - d).abs());
            Score::Float(match metric {
                DistanceMetric::Euclidean => (x * x + y * y).sqrt(),
                _ => x + y,
            })
        }
        _ => panic!("warp model given non-sample symbols"),
    }
}

impl Sub {
    fn score(&self, q: &Symbol, r: &Symbol) -> Score {
        match self {
            Sub::MatchMismatch(m, x) => {
                if q.code() == r.code() {
                    *m
                } else {
                    *x
                }
            }
            Sub::Matrix(m) => m.get(q.code(), r.code()),
            Sub::SumOfPairs(m) => {
                let (Symbol::ProfileColumn(a), Symbol::ProfileColumn(b)) = (q, r) else {
                    panic!("sum-of-pairs given non-profile symbols");
                };
                let mut total = 0.0;
                for (x, qa) in a.iter().enumerate() {
                    for (y, rb) in b.iter().enumerate() {
                        total += qa * rb * m.get(x, y).as_f64();
                    }
                }
                Score::Float(total)
            }
        }
    }
}

impl Gaps {
    fn run_cost(&self, k: usize) -> Score {
        match *self {
            Gaps::Linear(g) => g.times(k),
            Gaps::Affine { open, extend } => open + extend.times(k),
            Gaps::TwoPiece { short, long } => {
                let a = short.0 + short.1.times(k);
                let b = long.0 + long.1.times(k);
                if b > a {
                    b
                } else {
                    a
                }
            }
        }
    }
}

impl<'a> Scorer<'a> {
    fn start(&self, at: Coord) -> Walk {
        let zero = Score::zero(self.kind);
        Walk {
            at,
            score: zero,
            last: None,
            run: 0,
            base: zero,
        }
    }

    /// Extends `w` by `mv`; `None` when the move is not a legal path step.
    fn step(&self, w: &Walk, mv: TracebackMove) -> Option<Walk> {
        let (dq, dr) = mv.consumes();
        let at = Coord::new(w.at.row + dq, w.at.col + dr);
        if at.row > self.query.len() || at.col > self.reference.len() || (dq, dr) == (0, 0) {
            return None;
        }
        let interior = at.row >= 1 && at.col >= 1;
        let q = at.row.checked_sub(1).map(|i| &self.query[i]);
        let r = at.col.checked_sub(1).map(|j| &self.reference[j]);
        let mut next = Walk {
            at,
            last: Some(mv),
            ..*w
        };
        match &self.model {
            Model::Edit { sub, gaps } => match mv {
                TracebackMove::Mmi => {
                    next.score = w.score + sub.score(q?, r?);
                    next.run = 0;
                }
                _ => {
                    if w.last == Some(mv) {
                        next.run = w.run + 1;
                    } else {
                        next.base = w.score;
                        next.run = 1;
                    }
                    next.score = next.base + gaps.run_cost(next.run);
                }
            },
            Model::Warp { metric } => {
                if !interior {
                    return None;
                }
                next.score = w.score + distance(q?, r?, *metric);
            }
            Model::Hmm { emission, mu, lambda } => {
                if !interior {
                    return None;
                }
                let (qc, rc) = (q?.code(), r?.code());
                next.score = match (w.last, mv) {
                    (_, TracebackMove::Mmi) => w.score + emission.get(qc, rc),
                    (Some(TracebackMove::Ins), TracebackMove::Ins)
                    | (Some(TracebackMove::Del), TracebackMove::Del) => w.score + *lambda,
                    (Some(TracebackMove::Ins), TracebackMove::Del)
                    | (Some(TracebackMove::Del), TracebackMove::Ins) => return None,
                    _ => w.score + *mu,
                } + match mv {
                    TracebackMove::Ins => emission.get(qc, GAP_INDEX),
                    TracebackMove::Del => emission.get(GAP_INDEX, rc),
                    _ => Score::Float(0.0),
                };
            }
        }
        Some(next)
    }
}

/// Re-accumulates the score of `result`'s path from its start coordinate
/// using only the kernel's parameters.
pub fn rescore(
    spec: &KernelSpec,
    query: &[Symbol],
    reference: &[Symbol],
    result: &AlignmentResult,
) -> Result<Score, OracleError> {
    let scorer = Scorer {
        model: model_for(spec)?,
        kind: spec.score_kind,
        query,
        reference,
    };
    let mut w = scorer.start(result.start_coord);
    for mv in result.forward_path() {
        w = scorer
            .step(&w, mv)
            .ok_or_else(|| OracleError::IllegalPath(format!("{mv:?} from {}", w.at)))?;
    }
    if w.at != result.end_coord {
        return Err(OracleError::IllegalPath(format!(
            "path ends at {}, result says {}",
            w.at, result.end_coord
        )));
    }
    Ok(w.score)
}

/// Largest `Q + R` accepted by [`enumerate_paths`].
pub const ENUMERATION_LIMIT: usize = 16;

/// Optimal score over every monotone lattice path allowed by the kernel's
/// strategy, found by exhaustive depth-first enumeration.
pub fn enumerate_paths(
    spec: &KernelSpec,
    query: &[Symbol],
    reference: &[Symbol],
) -> Result<Score, OracleError> {
    let (q, r) = (query.len(), reference.len());
    if q + r > ENUMERATION_LIMIT {
        return Err(OracleError::EnumerationSizeExceeded { total: q + r, limit: ENUMERATION_LIMIT });
    }
    if q == 0 || r == 0 {
        return Err(OracleError::EmptySequence);
    }
    let scorer = Scorer {
        model: model_for(spec)?,
        kind: spec.score_kind,
        query,
        reference,
    };
    let band = spec.band;
    let inside = |c: Coord| band.is_none_or(|w| c.row.abs_diff(c.col) <= w);
    let objective = spec.objective();

    let strategy = spec.policy.strategy;
    let starts: Vec<Coord> = (0..=q)
        .flat_map(|i| (0..=r).map(move |j| Coord::new(i, j)))
        .filter(|c| match strategy {
            Strategy::Global | Strategy::None => c.row == 0 && c.col == 0,
            Strategy::Local => true,
            // sDTW may enter the first row anywhere; the linear kernel's
            // column-0 prefix is reachable through paid boundary moves.
            Strategy::SemiGlobal => c.row == 0,
            Strategy::Overlap => c.row == 0 || c.col == 0,
        })
        .filter(|c| inside(*c))
        .collect();
    let is_end = |c: Coord| {
        let interior = c.row >= 1 && c.col >= 1;
        match strategy {
            Strategy::Global | Strategy::None => c.row == q && c.col == r,
            Strategy::Local => true,
            Strategy::SemiGlobal => c.row == q && interior,
            Strategy::Overlap => interior && (c.row == q || c.col == r),
        }
    };

    let mut best: Option<Score> = None;
    let mut consider = |s: Score| {
        if best.is_none_or(|b| s.better_than(b, objective)) {
            best = Some(s);
        }
    };
    let mut stack = Vec::new();
    for s in starts {
        stack.push(scorer.start(s));
        while let Some(w) = stack.pop() {
            if is_end(w.at) && w.last.is_some() {
                consider(w.score);
            }
            for mv in [TracebackMove::Mmi, TracebackMove::Ins, TracebackMove::Del] {
                if let Some(next) = scorer.step(&w, mv) {
                    // warp and HMM paths leave the boundary at once (the
                    // scorer rejects boundary steps for them)
                    if inside(next.at) {
                        stack.push(next);
                    }
                }
            }
        }
    }
    if strategy == Strategy::Local {
        consider(Score::zero(spec.score_kind));
    }
    best.ok_or(OracleError::NoValidStartCell)
}
