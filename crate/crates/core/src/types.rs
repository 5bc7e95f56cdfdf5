//! Cell scores, traceback vocabulary, execution configuration and results.

use std::fmt;

use crate::score::{Objective, Score, ScoreKind};

pub const MAX_LAYERS: usize = 5;

/// The per-cell score layers (H, or H/I/D, or H/I1/D1/I2/D2).
#[derive(Clone, Copy, PartialEq)]
pub struct CellScores {
    layers: [Score; MAX_LAYERS],
    len: u8,
}

impl CellScores {
    pub fn filled(n_layers: usize, value: Score) -> Self {
        assert!(
            (1..=MAX_LAYERS).contains(&n_layers),
            "n_layers {n_layers} out of range"
        );
        CellScores {
            layers: [value; MAX_LAYERS],
            len: n_layers as u8,
        }
    }

    pub fn from_slice(values: &[Score]) -> Self {
        let mut cell = CellScores::filled(values.len(), values[0]);
        cell.layers[..values.len()].copy_from_slice(values);
        cell
    }

    #[inline]
    pub fn len(&self) -> usize {
        usize::from(self.len)
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, layer: usize) -> Score {
        self.as_slice()[layer]
    }

    #[inline]
    pub fn set(&mut self, layer: usize, value: Score) {
        self.layers[..usize::from(self.len)][layer] = value;
    }

    #[inline]
    pub fn as_slice(&self) -> &[Score] {
        &self.layers[..usize::from(self.len)]
    }

    /// Layer-wise comparison, exact for integers and `rel_tol` for floats.
    pub fn approx_eq(&self, other: &CellScores, rel_tol: f64) -> bool {
        self.len == other.len
            && self
                .as_slice()
                .iter()
                .zip(other.as_slice())
                .all(|(a, b)| a.approx_eq(*b, rel_tol))
    }
}

impl fmt::Debug for CellScores {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.as_slice()).finish()
    }
}

/// Kernel-encoded traceback pointer; at most 7 bits wide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct TracebackPointer(pub u8);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TracebackState {
    Mm,
    Ins,
    Del,
    LongIns,
    LongDel,
}

impl TracebackState {
    pub const ALL: [TracebackState; 5] = [
        TracebackState::Mm,
        TracebackState::Ins,
        TracebackState::Del,
        TracebackState::LongIns,
        TracebackState::LongDel,
    ];

    /// The state set a kernel with `n_layers` score layers must declare.
    pub fn set_for_layers(n_layers: usize) -> &'static [TracebackState] {
        match n_layers {
            1 => &Self::ALL[..1],
            3 => &Self::ALL[..3],
            _ => &Self::ALL[..],
        }
    }
}

/// One traceback step. `Ins` consumes a query symbol (moves up one row),
/// `Del` consumes a reference symbol (moves left one column).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TracebackMove {
    Mmi,
    Ins,
    Del,
    End,
}

impl TracebackMove {
    /// `(query, reference)` symbols consumed.
    pub fn consumes(self) -> (usize, usize) {
        match self {
            TracebackMove::Mmi => (1, 1),
            TracebackMove::Ins => (1, 0),
            TracebackMove::Del => (0, 1),
            TracebackMove::End => (0, 0),
        }
    }

    pub fn cigar_op(self) -> Option<char> {
        match self {
            TracebackMove::Mmi => Some('M'),
            TracebackMove::Ins => Some('I'),
            TracebackMove::Del => Some('D'),
            TracebackMove::End => None,
        }
    }
}

/// Where the optimal path starts (its bottom-right end) and where it may stop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Bottom-right corner to origin.
    Global,
    /// Best cell anywhere to the first END pointer.
    Local,
    /// Best cell of the bottom row to the top row.
    SemiGlobal,
    /// Best cell of the bottom row or rightmost column to the top row or
    /// leftmost column.
    Overlap,
    /// No traceback; the score is read at the bottom-right corner.
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StartRegion {
    Corner,
    Anywhere,
    LastRow,
    LastRowOrColumn,
}

impl StartRegion {
    /// Whether 0-based cell `(i, j)` of a `q_len × r_len` matrix is eligible.
    #[inline]
    pub fn contains(self, i: usize, j: usize, q_len: usize, r_len: usize) -> bool {
        match self {
            StartRegion::Corner => i + 1 == q_len && j + 1 == r_len,
            StartRegion::Anywhere => true,
            StartRegion::LastRow => i + 1 == q_len,
            StartRegion::LastRowOrColumn => i + 1 == q_len || j + 1 == r_len,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TracebackPolicy {
    pub strategy: Strategy,
    pub objective: Objective,
    /// Score-only kernels keep the strategy that defines their result cell
    /// but emit no moves.
    pub score_only: bool,
}

impl TracebackPolicy {
    pub fn new(strategy: Strategy, objective: Objective) -> Self {
        TracebackPolicy {
            strategy,
            objective,
            score_only: strategy == Strategy::None,
        }
    }

    pub fn score_only(strategy: Strategy, objective: Objective) -> Self {
        TracebackPolicy {
            strategy,
            objective,
            score_only: true,
        }
    }

    pub fn emits_traceback(&self) -> bool {
        !self.score_only && self.strategy != Strategy::None
    }

    pub fn start_region(&self) -> StartRegion {
        match self.strategy {
            Strategy::Global | Strategy::None => StartRegion::Corner,
            Strategy::Local => StartRegion::Anywhere,
            Strategy::SemiGlobal => StartRegion::LastRow,
            Strategy::Overlap => StartRegion::LastRowOrColumn,
        }
    }
}

/// Execution and performance-model parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct EngineConfig {
    pub n_pe: usize,
    pub n_b: usize,
    pub n_k: usize,
    pub ii: usize,
    pub max_reference_length: usize,
    pub max_query_length: usize,
    pub band_width: Option<usize>,
    pub clock_mhz: f64,
    pub pipeline_depth: u64,
    pub fixed_overhead_cycles: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            n_pe: 32,
            n_b: 1,
            n_k: 1,
            ii: 1,
            max_reference_length: 512,
            max_query_length: 512,
            band_width: None,
            clock_mhz: 250.0,
            pipeline_depth: 0,
            fixed_overhead_cycles: 500,
        }
    }
}

impl EngineConfig {
    pub fn with_max_lengths(mut self, query: usize, reference: usize) -> Self {
        self.max_query_length = query;
        self.max_reference_length = reference;
        self
    }

    pub fn with_n_pe(mut self, n_pe: usize) -> Self {
        self.n_pe = n_pe;
        self
    }

    pub fn with_band(mut self, band: Option<usize>) -> Self {
        self.band_width = band;
        self
    }

    /// Checks the structural invariants; returns a description per violation.
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        for (name, value) in [
            ("n_pe", self.n_pe),
            ("n_b", self.n_b),
            ("n_k", self.n_k),
            ("ii", self.ii),
            ("max_reference_length", self.max_reference_length),
            ("max_query_length", self.max_query_length),
        ] {
            if value == 0 {
                v.push(format!("{name} must be positive"));
            }
        }
        if let Some(w) = self.band_width {
            let longest = self.max_reference_length.max(self.max_query_length);
            if w == 0 || w > longest {
                v.push(format!("band_width {w} outside 1..={longest}"));
            }
        }
        if !(self.clock_mhz.is_finite() && self.clock_mhz > 0.0) {
            v.push(format!("clock_mhz {} must be positive", self.clock_mhz));
        }
        v
    }
}

/// Matrix coordinate in boundary-inclusive form: `row` query symbols and
/// `col` reference symbols lie before (or at) this point. Row 0 and column 0
/// are the initialization boundary; 0-based cell `(i, j)` sits at
/// `(i + 1, j + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coord {
    pub row: usize,
    pub col: usize,
}

impl Coord {
    pub fn new(row: usize, col: usize) -> Self {
        Coord { row, col }
    }

    pub fn of_cell(i: usize, j: usize) -> Self {
        Coord { row: i + 1, col: j + 1 }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.row, self.col)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlignmentResult {
    pub score: Score,
    /// Bottom-right end of the path: where traceback started.
    pub end_coord: Coord,
    /// Top-left end of the path: where traceback stopped.
    pub start_coord: Coord,
    /// Moves in traceback order (end towards start), terminated by a single
    /// [`TracebackMove::End`]. Empty for score-only kernels.
    pub moves: Vec<TracebackMove>,
    pub layers_at_end: CellScores,
}

impl AlignmentResult {
    /// The path from `start_coord` to `end_coord`, without the END marker.
    pub fn forward_path(&self) -> Vec<TracebackMove> {
        self.moves
            .iter()
            .rev()
            .copied()
            .filter(|m| *m != TracebackMove::End)
            .collect()
    }

    /// Run-length encoded path, e.g. `4M2I3M`; `*` for an empty path.
    pub fn cigar(&self) -> String {
        cigar_string(&self.forward_path())
    }

    pub fn score_kind(&self) -> ScoreKind {
        self.score.kind()
    }
}

/// Run-length encodes forward-order moves. END markers are skipped.
pub fn cigar_string(moves: &[TracebackMove]) -> String {
    let mut out = String::new();
    let mut iter = moves.iter().filter_map(|m| m.cigar_op()).peekable();
    while let Some(op) = iter.next() {
        let mut n = 1;
        while iter.peek() == Some(&op) {
            iter.next();
            n += 1;
        }
        out.push_str(&n.to_string());
        out.push(op);
    }
    if out.is_empty() {
        out.push('*');
    }
    out
}

/// Inverse of [`cigar_string`].
pub fn parse_cigar(cigar: &str) -> Option<Vec<TracebackMove>> {
    if cigar == "*" {
        return Some(Vec::new());
    }
    let mut moves = Vec::new();
    let mut count = String::new();
    for c in cigar.chars() {
        if c.is_ascii_digit() {
            count.push(c);
            continue;
        }
        let n: usize = count.parse().ok().filter(|&n| n > 0)?;
        count.clear();
        let m = match c {
            'M' => TracebackMove::Mmi,
            'I' => TracebackMove::Ins,
            'D' => TracebackMove::Del,
            _ => return None,
        };
        moves.extend(std::iter::repeat_n(m, n));
    }
    (count.is_empty() && !moves.is_empty()).then_some(moves)
}
