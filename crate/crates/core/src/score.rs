//! Cell score values.
//!
//! Integer kernels use saturating 32-bit arithmetic; the floating kernels
//! (DTW, Viterbi, profile alignment) use IEEE doubles. A kernel never mixes
//! the two.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg};

/// "Minus infinity" for integer kernels. Leaves 3/4 of the negative range as
/// headroom so chains of gap penalties added to a forbidden cell cannot wrap.
pub const NEG_SENTINEL: i32 = i32::MIN / 4;
/// "Plus infinity" for integer minimizing kernels (sDTW).
pub const POS_SENTINEL: i32 = i32::MAX / 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScoreKind {
    Int32Saturating,
    Float64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy)]
pub enum Score {
    Int(i32),
    Float(f64),
}

impl Score {
    pub const ZERO_INT: Score = Score::Int(0);
    pub const ZERO_FLOAT: Score = Score::Float(0.0);

    pub fn zero(kind: ScoreKind) -> Score {
        match kind {
            ScoreKind::Int32Saturating => Score::Int(0),
            ScoreKind::Float64 => Score::Float(0.0),
        }
    }

    /// The value a forbidden cell holds under `objective`: the sentinel that
    /// loses every comparison against a reachable cell.
    pub fn worst(kind: ScoreKind, objective: Objective) -> Score {
        match (kind, objective) {
            (ScoreKind::Int32Saturating, Objective::Maximize) => Score::Int(NEG_SENTINEL),
            (ScoreKind::Int32Saturating, Objective::Minimize) => Score::Int(POS_SENTINEL),
            (ScoreKind::Float64, Objective::Maximize) => Score::Float(f64::NEG_INFINITY),
            (ScoreKind::Float64, Objective::Minimize) => Score::Float(f64::INFINITY),
        }
    }

    pub fn kind(self) -> ScoreKind {
        match self {
            Score::Int(_) => ScoreKind::Int32Saturating,
            Score::Float(_) => ScoreKind::Float64,
        }
    }

    /// Multiplies by a small non-negative count (gap lengths in init vectors).
    pub fn times(self, n: usize) -> Score {
        match self {
            Score::Int(v) => {
                let n = i32::try_from(n).unwrap_or(i32::MAX);
                Score::Int(v.saturating_mul(n))
            }
            Score::Float(v) => Score::Float(v * n as f64),
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Score::Int(v) => f64::from(v),
            Score::Float(v) => v,
        }
    }

    pub fn as_i32(self) -> Option<i32> {
        match self {
            Score::Int(v) => Some(v),
            Score::Float(_) => None,
        }
    }

    /// `true` when `self` beats `other` strictly under `objective`.
    #[inline]
    pub fn better_than(self, other: Score, objective: Objective) -> bool {
        match objective {
            Objective::Maximize => self > other,
            Objective::Minimize => self < other,
        }
    }

    /// Exact equality for integers, `rel_tol`-relative equality for floats.
    /// Infinities of the same sign compare equal.
    pub fn approx_eq(self, other: Score, rel_tol: f64) -> bool {
        match (self, other) {
            (Score::Int(a), Score::Int(b)) => a == b,
            (Score::Float(a), Score::Float(b)) => {
                if a == b {
                    return true;
                }
                if !a.is_finite() || !b.is_finite() {
                    return false;
                }
                (a - b).abs() <= rel_tol * a.abs().max(b.abs()).max(1.0)
            }
            _ => false,
        }
    }
}

impl Add for Score {
    type Output = Score;

    #[inline]
    fn add(self, rhs: Score) -> Score {
        match (self, rhs) {
            (Score::Int(a), Score::Int(b)) => Score::Int(a.saturating_add(b)),
            (Score::Float(a), Score::Float(b)) => Score::Float(a + b),
            (a, b) => panic!("mixed score kinds: {a:?} + {b:?}"),
        }
    }
}

impl Neg for Score {
    type Output = Score;

    fn neg(self) -> Score {
        match self {
            Score::Int(v) => Score::Int(v.saturating_neg()),
            Score::Float(v) => Score::Float(-v),
        }
    }
}

impl PartialEq for Score {
    fn eq(&self, other: &Score) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Score {
    fn partial_cmp(&self, other: &Score) -> Option<Ordering> {
        match (self, other) {
            (Score::Int(a), Score::Int(b)) => Some(a.cmp(b)),
            (Score::Float(a), Score::Float(b)) => a.partial_cmp(b),
            _ => None,
        }
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Score::Int(v) => write!(f, "{v}"),
            // `{:?}` on f64 prints the shortest round-tripping representation.
            Score::Float(v) => write!(f, "{v:?}"),
        }
    }
}
