//! Runtime scoring parameters shared by all kernels.

use std::fmt;
use std::str::FromStr;

use crate::score::{Score, ScoreKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParamName {
    Match,
    Mismatch,
    LinearGap,
    GapOpen,
    GapExtend,
    GapOpen2,
    GapExtend2,
    LogMu,
    LogLambda,
    SubstitutionMatrix,
    Emission,
    DistanceMetric,
}

impl ParamName {
    pub const ALL: [ParamName; 12] = [
        ParamName::Match,
        ParamName::Mismatch,
        ParamName::LinearGap,
        ParamName::GapOpen,
        ParamName::GapExtend,
        ParamName::GapOpen2,
        ParamName::GapExtend2,
        ParamName::LogMu,
        ParamName::LogLambda,
        ParamName::SubstitutionMatrix,
        ParamName::Emission,
        ParamName::DistanceMetric,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ParamName::Match => "match",
            ParamName::Mismatch => "mismatch",
            ParamName::LinearGap => "linear_gap",
            ParamName::GapOpen => "gap_open",
            ParamName::GapExtend => "gap_extend",
            ParamName::GapOpen2 => "gap_open2",
            ParamName::GapExtend2 => "gap_extend2",
            ParamName::LogMu => "log_mu",
            ParamName::LogLambda => "log_lambda",
            ParamName::SubstitutionMatrix => "substitution_matrix",
            ParamName::Emission => "emission",
            ParamName::DistanceMetric => "distance_metric",
        }
    }

    /// Scalar parameters hold a single [`Score`].
    pub fn is_scalar(self) -> bool {
        !matches!(
            self,
            ParamName::SubstitutionMatrix | ParamName::Emission | ParamName::DistanceMetric
        )
    }
}

impl fmt::Display for ParamName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ParamName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ParamName::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| format!("unknown parameter `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DistanceMetric {
    #[default]
    Manhattan,
    Euclidean,
    AbsDiff,
}

impl FromStr for DistanceMetric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "manhattan" => Ok(DistanceMetric::Manhattan),
            "euclidean" => Ok(DistanceMetric::Euclidean),
            "absdiff" | "abs_diff" | "abs" => Ok(DistanceMetric::AbsDiff),
            _ => Err(format!("unknown distance metric `{s}`")),
        }
    }
}

/// Square score matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SubMatrix {
    size: usize,
    cells: Vec<Score>,
}

impl SubMatrix {
    pub fn new(size: usize, cells: Vec<Score>) -> Option<Self> {
        (cells.len() == size * size).then_some(SubMatrix { size, cells })
    }

    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> Score) -> Self {
        let cells = (0..size * size).map(|k| f(k / size, k % size)).collect();
        SubMatrix { size, cells }
    }

    /// `match` on the diagonal, `mismatch` elsewhere.
    pub fn match_mismatch(size: usize, matched: Score, mismatched: Score) -> Self {
        SubMatrix::from_fn(size, |a, b| if a == b { matched } else { mismatched })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Score {
        self.cells[row * self.size + col]
    }

    pub fn kind(&self) -> Option<ScoreKind> {
        self.cells.first().map(|s| s.kind())
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Score]> {
        self.cells.chunks(self.size)
    }
}

/// Named parameter set. Every field is optional; each kernel declares which
/// ones it requires and validation rejects a spec whose required fields are
/// absent.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScoringParams {
    pub match_score: Option<Score>,
    pub mismatch: Option<Score>,
    pub linear_gap: Option<Score>,
    pub gap_open: Option<Score>,
    pub gap_extend: Option<Score>,
    pub gap_open2: Option<Score>,
    pub gap_extend2: Option<Score>,
    pub log_mu: Option<Score>,
    pub log_lambda: Option<Score>,
    pub substitution_matrix: Option<SubMatrix>,
    pub emission: Option<SubMatrix>,
    pub distance_metric: Option<DistanceMetric>,
}

impl ScoringParams {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn linear(matched: i32, mismatched: i32, gap: i32) -> Self {
        ScoringParams::new()
            .with(ParamName::Match, Score::Int(matched))
            .with(ParamName::Mismatch, Score::Int(mismatched))
            .with(ParamName::LinearGap, Score::Int(gap))
    }

    pub fn affine(matched: i32, mismatched: i32, open: i32, extend: i32) -> Self {
        ScoringParams::new()
            .with(ParamName::Match, Score::Int(matched))
            .with(ParamName::Mismatch, Score::Int(mismatched))
            .with(ParamName::GapOpen, Score::Int(open))
            .with(ParamName::GapExtend, Score::Int(extend))
    }

    pub fn two_piece(
        matched: i32,
        mismatched: i32,
        (open, extend): (i32, i32),
        (open2, extend2): (i32, i32),
    ) -> Self {
        ScoringParams::affine(matched, mismatched, open, extend)
            .with(ParamName::GapOpen2, Score::Int(open2))
            .with(ParamName::GapExtend2, Score::Int(extend2))
    }

    /// Sets a scalar parameter. Non-scalar names are ignored; use the
    /// dedicated fields for matrices and the distance metric.
    pub fn with(mut self, name: ParamName, value: Score) -> Self {
        if let Some(slot) = self.scalar_slot(name) {
            *slot = Some(value);
        }
        self
    }

    pub fn with_substitution_matrix(mut self, m: SubMatrix) -> Self {
        self.substitution_matrix = Some(m);
        self
    }

    pub fn with_emission(mut self, m: SubMatrix) -> Self {
        self.emission = Some(m);
        self
    }

    pub fn with_metric(mut self, metric: DistanceMetric) -> Self {
        self.distance_metric = Some(metric);
        self
    }

    fn scalar_slot(&mut self, name: ParamName) -> Option<&mut Option<Score>> {
        Some(match name {
            ParamName::Match => &mut self.match_score,
            ParamName::Mismatch => &mut self.mismatch,
            ParamName::LinearGap => &mut self.linear_gap,
            ParamName::GapOpen => &mut self.gap_open,
            ParamName::GapExtend => &mut self.gap_extend,
            ParamName::GapOpen2 => &mut self.gap_open2,
            ParamName::GapExtend2 => &mut self.gap_extend2,
            ParamName::LogMu => &mut self.log_mu,
            ParamName::LogLambda => &mut self.log_lambda,
            _ => return None,
        })
    }

    pub fn scalar(&self, name: ParamName) -> Option<Score> {
        match name {
            ParamName::Match => self.match_score,
            ParamName::Mismatch => self.mismatch,
            ParamName::LinearGap => self.linear_gap,
            ParamName::GapOpen => self.gap_open,
            ParamName::GapExtend => self.gap_extend,
            ParamName::GapOpen2 => self.gap_open2,
            ParamName::GapExtend2 => self.gap_extend2,
            ParamName::LogMu => self.log_mu,
            ParamName::LogLambda => self.log_lambda,
            _ => None,
        }
    }

    pub fn has(&self, name: ParamName) -> bool {
        match name {
            ParamName::SubstitutionMatrix => self.substitution_matrix.is_some(),
            ParamName::Emission => self.emission.is_some(),
            ParamName::DistanceMetric => self.distance_metric.is_some(),
            scalar => self.scalar(scalar).is_some(),
        }
    }

    /// Reads a scalar that validation guaranteed to be present.
    #[inline]
    pub(crate) fn req(&self, name: ParamName) -> Score {
        self.scalar(name)
            .unwrap_or_else(|| panic!("parameter `{name}` missing from a validated spec"))
    }

    #[inline]
    pub(crate) fn req_sub(&self) -> &SubMatrix {
        self.substitution_matrix
            .as_ref()
            .expect("substitution_matrix missing from a validated spec")
    }

    #[inline]
    pub(crate) fn req_emission(&self) -> &SubMatrix {
        self.emission
            .as_ref()
            .expect("emission missing from a validated spec")
    }
}
