//! The fifteen shipped kernels.
//!
//! Each constructor returns a [`KernelSpec`] with empty parameters; attach
//! values with [`KernelSpec::with_params`] or start from
//! [`default_params`]. Validation rejects a spec whose required parameters
//! are missing.
//!
//! | #  | name                      | alphabet   | layers | strategy            |
//! |----|---------------------------|------------|--------|---------------------|
//! | 1  | `global_linear`           | DNA        | 1      | global              |
//! | 2  | `global_affine`           | DNA        | 3      | global              |
//! | 3  | `local_linear`            | DNA        | 1      | local               |
//! | 4  | `local_affine`            | DNA        | 3      | local               |
//! | 5  | `global_two_piece`        | DNA        | 5      | global              |
//! | 6  | `overlap`                 | DNA        | 1      | overlap             |
//! | 7  | `semiglobal`              | DNA        | 1      | semi-global         |
//! | 8  | `profile`                 | profiles   | 3      | global              |
//! | 9  | `dtw`                     | complex    | 1      | global, min         |
//! | 10 | `viterbi`                 | DNA        | 3      | score only          |
//! | 11 | `banded_global_linear`    | DNA        | 1      | global, banded      |
//! | 12 | `banded_local_affine`     | DNA        | 3      | score only, banded  |
//! | 13 | `banded_global_two_piece` | DNA        | 5      | global, banded      |
//! | 14 | `sdtw`                    | integers   | 1      | score only, min     |
//! | 15 | `protein_local`           | amino acid | 1      | local               |

mod affine;
pub mod blosum;
mod dtw;
mod linear;
mod profile;
mod two_piece;
mod viterbi;

use std::collections::BTreeMap;

pub use dtw::{complex_distance, int_distance, sample_distance};
pub use profile::sum_of_pairs;

use crate::params::{DistanceMetric, ParamName, ScoringParams, SubMatrix};
use crate::score::{Objective, Score, ScoreKind};
use crate::spec::{InitFn, KernelSpec, PeFn, ResultLayer, TbFn};
use crate::symbol::SymbolKind;
use crate::types::{Strategy, TracebackPolicy, TracebackState};

/// Band half-width the banded kernels ship with.
pub const DEFAULT_BAND: usize = 32;

pub mod pointers {
    //! Pointer codes shared by the single-layer kernels.
    pub use super::linear::{TB_DIAG, TB_END, TB_LEFT, TB_UP};
}

struct Decl {
    id: u8,
    name: &'static str,
    symbol_kind: SymbolKind,
    score_kind: ScoreKind,
    n_layers: usize,
    required: &'static [ParamName],
    policy: TracebackPolicy,
    band: Option<usize>,
    result_layer: ResultLayer,
    init: InitFn,
    pe: PeFn,
    tb: TbFn,
}

impl Decl {
    fn build(self) -> KernelSpec {
        KernelSpec {
            id: self.id,
            name: self.name.to_string(),
            symbol_kind: self.symbol_kind,
            score_kind: self.score_kind,
            n_layers: self.n_layers,
            pointer_width: KernelSpec::min_pointer_width(self.n_layers),
            states: TracebackState::set_for_layers(self.n_layers).to_vec(),
            required_params: self.required.to_vec(),
            params: ScoringParams::default(),
            policy: self.policy,
            band: self.band,
            result_layer: self.result_layer,
            init: self.init,
            pe: self.pe,
            tb_transition: self.tb,
        }
    }
}

const LINEAR: &[ParamName] = &[ParamName::Match, ParamName::Mismatch, ParamName::LinearGap];
const AFFINE: &[ParamName] = &[
    ParamName::Match,
    ParamName::Mismatch,
    ParamName::GapOpen,
    ParamName::GapExtend,
];
const TWO_PIECE: &[ParamName] = &[
    ParamName::Match,
    ParamName::Mismatch,
    ParamName::GapOpen,
    ParamName::GapExtend,
    ParamName::GapOpen2,
    ParamName::GapExtend2,
];

fn maximize(strategy: Strategy) -> TracebackPolicy {
    TracebackPolicy::new(strategy, Objective::Maximize)
}

fn dna(id: u8, name: &'static str, n_layers: usize, required: &'static [ParamName]) -> Decl {
    Decl {
        id,
        name,
        symbol_kind: SymbolKind::Nucleotide,
        score_kind: ScoreKind::Int32Saturating,
        n_layers,
        required,
        policy: maximize(Strategy::Global),
        band: None,
        result_layer: ResultLayer::Primary,
        init: linear::init_global,
        pe: linear::pe_global,
        tb: linear::tb,
    }
}

/// #1, Needleman-Wunsch.
pub fn kernel_global_linear() -> KernelSpec {
    dna(1, "global_linear", 1, LINEAR).build()
}

/// #2, Gotoh.
pub fn kernel_global_affine() -> KernelSpec {
    Decl {
        init: affine::init_global,
        pe: affine::pe_global,
        tb: affine::tb,
        ..dna(2, "global_affine", 3, AFFINE)
    }
    .build()
}

/// #3, Smith-Waterman.
pub fn kernel_local_linear() -> KernelSpec {
    Decl {
        policy: maximize(Strategy::Local),
        init: linear::init_zero,
        pe: linear::pe_local,
        ..dna(3, "local_linear", 1, LINEAR)
    }
    .build()
}

/// #4, Smith-Waterman-Gotoh.
pub fn kernel_local_affine() -> KernelSpec {
    Decl {
        policy: maximize(Strategy::Local),
        init: affine::init_local,
        pe: affine::pe_local,
        tb: affine::tb,
        ..dna(4, "local_affine", 3, AFFINE)
    }
    .build()
}

/// #5, two-piece affine gaps.
pub fn kernel_global_two_piece() -> KernelSpec {
    Decl {
        init: two_piece::init_global,
        pe: two_piece::pe_global,
        tb: two_piece::tb,
        ..dna(5, "global_two_piece", 5, TWO_PIECE)
    }
    .build()
}

/// #6
pub fn kernel_overlap() -> KernelSpec {
    Decl {
        policy: maximize(Strategy::Overlap),
        init: linear::init_zero,
        ..dna(6, "overlap", 1, LINEAR)
    }
    .build()
}

/// #7
pub fn kernel_semiglobal() -> KernelSpec {
    Decl {
        policy: maximize(Strategy::SemiGlobal),
        init: linear::init_semiglobal,
        ..dna(7, "semiglobal", 1, LINEAR)
    }
    .build()
}

/// #8, profile alignment with sum-of-pairs column scores.
pub fn kernel_profile() -> KernelSpec {
    Decl {
        symbol_kind: SymbolKind::ProfileColumn,
        score_kind: ScoreKind::Float64,
        init: affine::init_global,
        pe: profile::pe_global,
        tb: affine::tb,
        ..dna(
            8,
            "profile",
            3,
            &[
                ParamName::SubstitutionMatrix,
                ParamName::GapOpen,
                ParamName::GapExtend,
            ],
        )
    }
    .build()
}

/// #9
pub fn kernel_dtw() -> KernelSpec {
    Decl {
        symbol_kind: SymbolKind::ComplexSample,
        score_kind: ScoreKind::Float64,
        policy: TracebackPolicy::new(Strategy::Global, Objective::Minimize),
        init: dtw::init_dtw,
        pe: dtw::pe_dtw,
        ..dna(9, "dtw", 1, &[ParamName::DistanceMetric])
    }
    .build()
}

/// #10, score only.
pub fn kernel_viterbi() -> KernelSpec {
    Decl {
        score_kind: ScoreKind::Float64,
        policy: TracebackPolicy::score_only(Strategy::Global, Objective::Maximize),
        result_layer: ResultLayer::Best,
        init: viterbi::init,
        pe: viterbi::pe,
        tb: viterbi::tb,
        ..dna(
            10,
            "viterbi",
            3,
            &[ParamName::LogMu, ParamName::LogLambda, ParamName::Emission],
        )
    }
    .build()
}

/// #11
pub fn kernel_banded_global_linear() -> KernelSpec {
    Decl {
        band: Some(DEFAULT_BAND),
        ..dna(11, "banded_global_linear", 1, LINEAR)
    }
    .build()
}

/// #12, score only: best local score and its cell.
pub fn kernel_banded_local_affine() -> KernelSpec {
    Decl {
        band: Some(DEFAULT_BAND),
        policy: TracebackPolicy::score_only(Strategy::Local, Objective::Maximize),
        init: affine::init_local,
        pe: affine::pe_local,
        tb: affine::tb,
        ..dna(12, "banded_local_affine", 3, AFFINE)
    }
    .build()
}

/// #13
pub fn kernel_banded_global_two_piece() -> KernelSpec {
    Decl {
        band: Some(DEFAULT_BAND),
        init: two_piece::init_global,
        pe: two_piece::pe_global,
        tb: two_piece::tb,
        ..dna(13, "banded_global_two_piece", 5, TWO_PIECE)
    }
    .build()
}

/// #14, score only by default; attach a traceback-emitting policy with
/// [`KernelSpec::with_policy`] to recover the warping path.
pub fn kernel_sdtw() -> KernelSpec {
    Decl {
        symbol_kind: SymbolKind::IntSample,
        policy: TracebackPolicy::score_only(Strategy::SemiGlobal, Objective::Minimize),
        init: dtw::init_sdtw,
        pe: dtw::pe_sdtw,
        ..dna(14, "sdtw", 1, &[])
    }
    .build()
}

/// #15
pub fn kernel_protein_local() -> KernelSpec {
    Decl {
        symbol_kind: SymbolKind::AminoAcid,
        policy: maximize(Strategy::Local),
        init: linear::init_zero,
        pe: linear::pe_protein_local,
        ..dna(
            15,
            "protein_local",
            1,
            &[ParamName::SubstitutionMatrix, ParamName::LinearGap],
        )
    }
    .build()
}

/// All fifteen kernels keyed by catalog number.
#[derive(Debug, Clone)]
pub struct KernelCatalog {
    kernels: BTreeMap<u8, KernelSpec>,
}

impl KernelCatalog {
    pub fn new() -> Self {
        let kernels = [
            kernel_global_linear(),
            kernel_global_affine(),
            kernel_local_linear(),
            kernel_local_affine(),
            kernel_global_two_piece(),
            kernel_overlap(),
            kernel_semiglobal(),
            kernel_profile(),
            kernel_dtw(),
            kernel_viterbi(),
            kernel_banded_global_linear(),
            kernel_banded_local_affine(),
            kernel_banded_global_two_piece(),
            kernel_sdtw(),
            kernel_protein_local(),
        ]
        .into_iter()
        .map(|k| (k.id, k))
        .collect();
        KernelCatalog { kernels }
    }

    pub fn len(&self) -> usize {
        self.kernels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kernels.is_empty()
    }

    pub fn get(&self, id: u8) -> Option<&KernelSpec> {
        self.kernels.get(&id)
    }

    /// Looks a kernel up by number (`"3"`, `"#3"`) or name.
    pub fn lookup(&self, key: &str) -> Option<&KernelSpec> {
        let key = key.trim().trim_start_matches('#');
        match key.parse::<u8>() {
            Ok(id) => self.get(id),
            Err(_) => self.kernels.values().find(|k| k.name == key),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &KernelSpec> {
        self.kernels.values()
    }
}

impl Default for KernelCatalog {
    fn default() -> Self {
        Self::new()
    }
}

pub fn blosum62() -> SubMatrix {
    SubMatrix::from_fn(20, |a, b| Score::Int(blosum::BLOSUM62[a][b]))
}

/// Emission log-probabilities for the Viterbi kernel: `p_match` on the
/// diagonal of the nucleotide block, the remaining mass spread over
/// mismatches, and uniform gap emissions.
pub fn viterbi_emission(p_match: f64) -> SubMatrix {
    let mismatch = (1.0 - p_match) / 3.0;
    SubMatrix::from_fn(5, |a, b| {
        let p = match (a, b) {
            (4, 4) => 1.0,
            (4, _) | (_, 4) => 0.25,
            _ if a == b => p_match,
            _ => mismatch,
        };
        Score::Float(p.ln())
    })
}

/// A reasonable parameter set for each catalog kernel.
pub fn default_params(id: u8) -> ScoringParams {
    match id {
        1 | 3 | 6 | 7 | 11 => ScoringParams::linear(1, -1, -1),
        2 | 4 | 12 => ScoringParams::affine(1, -1, -2, -1),
        5 | 13 => ScoringParams::two_piece(2, -4, (-4, -2), (-24, -1)),
        8 => ScoringParams::new()
            .with(ParamName::GapOpen, Score::Float(-2.0))
            .with(ParamName::GapExtend, Score::Float(-1.0))
            .with_substitution_matrix(SubMatrix::match_mismatch(
                5,
                Score::Float(1.0),
                Score::Float(-1.0),
            )),
        9 => ScoringParams::new().with_metric(DistanceMetric::Manhattan),
        10 => ScoringParams::new()
            .with(ParamName::LogMu, Score::Float(0.1f64.ln()))
            .with(ParamName::LogLambda, Score::Float(0.5f64.ln()))
            .with_emission(viterbi_emission(0.85)),
        15 => ScoringParams::new()
            .with(ParamName::LinearGap, Score::Int(-4))
            .with_substitution_matrix(blosum62()),
        _ => ScoringParams::new(),
    }
}
