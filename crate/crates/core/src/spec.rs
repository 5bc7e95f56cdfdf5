//! The kernel specification contract: everything the engine needs to run a
//! 2-D DP kernel, and the validation that gates it.

use std::fmt;

use thiserror::Error;

use crate::params::{ParamName, ScoringParams};
use crate::score::{Objective, Score, ScoreKind};
use crate::symbol::{Symbol, SymbolKind};
use crate::types::{
    CellScores, EngineConfig, TracebackMove, TracebackPointer, TracebackPolicy, TracebackState,
};

/// Boundary scores handed to the engine before matrix fill.
///
/// `row[j]` sits above reference position `j` (boundary coordinate
/// `(0, j + 1)`), `col[i]` left of query position `i` (`(i + 1, 0)`), and
/// `origin` at `(0, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct InitVectors {
    pub row: Vec<CellScores>,
    pub col: Vec<CellScores>,
    pub origin: CellScores,
}

/// Arguments of one cell update. `cell` is the 0-based `(query, reference)`
/// position being computed.
#[derive(Debug, Clone, Copy)]
pub struct PeInput<'a> {
    pub up: &'a CellScores,
    pub diag: &'a CellScores,
    pub left: &'a CellScores,
    pub query: &'a Symbol,
    pub reference: &'a Symbol,
    pub params: &'a ScoringParams,
    pub cell: (usize, usize),
}

pub type InitFn = fn(&ScoringParams, usize, usize) -> InitVectors;
pub type PeFn = fn(&PeInput<'_>) -> (CellScores, TracebackPointer);
pub type TbFn = fn(TracebackState, TracebackPointer) -> (TracebackState, TracebackMove);

/// Which value of the result cell is reported as the alignment score.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResultLayer {
    /// Layer 0 (H).
    Primary,
    /// Best layer under the kernel objective (Viterbi: max of M, I, D).
    Best,
}

/// Complete declaration of one kernel. Behavioral members are plain function
/// pointers, so a spec is `Send + Sync` and pure by construction.
#[derive(Clone)]
pub struct KernelSpec {
    /// Catalog number 1..=15; 0 for user-defined kernels.
    pub id: u8,
    pub name: String,
    pub symbol_kind: SymbolKind,
    pub score_kind: ScoreKind,
    pub n_layers: usize,
    pub pointer_width: u8,
    pub states: Vec<TracebackState>,
    pub required_params: Vec<ParamName>,
    pub params: ScoringParams,
    pub policy: TracebackPolicy,
    /// Fixed band half-width `W`: cells with `|i - j| > W` are pruned.
    pub band: Option<usize>,
    pub result_layer: ResultLayer,
    pub init: InitFn,
    pub pe: PeFn,
    pub tb_transition: TbFn,
}

impl fmt::Debug for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KernelSpec")
            .field("id", &self.id)
            .field("name", &self.name)
            .field("symbol_kind", &self.symbol_kind)
            .field("score_kind", &self.score_kind)
            .field("n_layers", &self.n_layers)
            .field("pointer_width", &self.pointer_width)
            .field("policy", &self.policy)
            .field("band", &self.band)
            .finish_non_exhaustive()
    }
}

impl KernelSpec {
    pub fn with_params(mut self, params: ScoringParams) -> Self {
        self.params = params;
        self
    }

    pub fn with_band(mut self, band: Option<usize>) -> Self {
        self.band = band;
        self
    }

    pub fn with_policy(mut self, policy: TracebackPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn objective(&self) -> Objective {
        self.policy.objective
    }

    /// The forbidden-cell value under this kernel's score kind and objective.
    pub fn worst(&self) -> Score {
        Score::worst(self.score_kind, self.policy.objective)
    }

    pub fn worst_cell(&self) -> CellScores {
        CellScores::filled(self.n_layers, self.worst())
    }

    /// Band in effect for `config`: the config's width overrides the spec's.
    pub fn effective_band(&self, config: &EngineConfig) -> Option<usize> {
        config.band_width.or(self.band)
    }

    /// Reported score of a result cell.
    pub fn result_score(&self, cell: &CellScores) -> Score {
        match self.result_layer {
            ResultLayer::Primary => cell.get(0),
            ResultLayer::Best => {
                let objective = self.policy.objective;
                cell.as_slice()
                    .iter()
                    .copied()
                    .fold(cell.get(0), |best, s| if s.better_than(best, objective) { s } else { best })
            }
        }
    }

    /// Minimum pointer width for the declared layer count.
    pub fn min_pointer_width(n_layers: usize) -> u8 {
        match n_layers {
            1 => 2,
            3 => 4,
            _ => 7,
        }
    }

    /// Init vectors with entries outside `band` replaced by the worst value.
    pub fn banded_init(&self, max_ref: usize, max_qry: usize, band: Option<usize>) -> InitVectors {
        let mut init = (self.init)(&self.params, max_ref, max_qry);
        if let Some(w) = band {
            let worst = self.worst_cell();
            // row[j] lives at boundary column j + 1, col[i] at row i + 1
            for cell in init.row.iter_mut().skip(w) {
                *cell = worst;
            }
            for cell in init.col.iter_mut().skip(w) {
                *cell = worst;
            }
        }
        init
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecViolation {
    #[error("missing parameter `{0}`")]
    MissingParam(ParamName),
    #[error("parameter `{0}` has the wrong score kind")]
    ParamKindMismatch(ParamName),
    #[error("matrix `{name}` is {found}x{found}, expected {expected}x{expected}")]
    MatrixShape {
        name: ParamName,
        found: usize,
        expected: usize,
    },
    #[error("n_layers = {n_layers} is inconsistent with state set {states:?}")]
    InconsistentLayers {
        n_layers: usize,
        states: Vec<TracebackState>,
    },
    #[error("pointer width {width} below the {required} bits needed")]
    PointerWidthTooSmall { width: u8, required: u8 },
    #[error("invalid engine configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("kernel spec `{name}` rejected: {}", violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
pub struct SpecError {
    pub name: String,
    pub violations: Vec<SpecViolation>,
}

fn expected_matrix_size(kind: SymbolKind) -> Option<usize> {
    match kind {
        SymbolKind::ProfileColumn => Some(5),
        other => other.alphabet_size(),
    }
}

/// Checks that `spec` is internally consistent, carries every parameter it
/// requires, and that `config` is usable.
pub fn validate_spec<'a>(
    spec: &'a KernelSpec,
    config: &EngineConfig,
) -> Result<&'a KernelSpec, SpecError> {
    let mut violations = Vec::new();

    if !matches!(spec.n_layers, 1 | 3 | 5)
        || spec.states.as_slice() != TracebackState::set_for_layers(spec.n_layers)
    {
        violations.push(SpecViolation::InconsistentLayers {
            n_layers: spec.n_layers,
            states: spec.states.clone(),
        });
    }
    let required = KernelSpec::min_pointer_width(spec.n_layers);
    if spec.pointer_width < required || spec.pointer_width > 7 {
        violations.push(SpecViolation::PointerWidthTooSmall {
            width: spec.pointer_width,
            required,
        });
    }

    for &name in &spec.required_params {
        if !spec.params.has(name) {
            violations.push(SpecViolation::MissingParam(name));
            continue;
        }
        match name {
            ParamName::SubstitutionMatrix | ParamName::Emission => {
                let m = if name == ParamName::Emission {
                    spec.params.emission.as_ref()
                } else {
                    spec.params.substitution_matrix.as_ref()
                };
                let m = m.expect("presence checked above");
                let expected = if name == ParamName::Emission {
                    Some(5)
                } else {
                    expected_matrix_size(spec.symbol_kind)
                };
                if let Some(expected) = expected.filter(|&e| e != m.size()) {
                    violations.push(SpecViolation::MatrixShape {
                        name,
                        found: m.size(),
                        expected,
                    });
                }
                if m.kind().is_some_and(|k| k != spec.score_kind) {
                    violations.push(SpecViolation::ParamKindMismatch(name));
                }
            }
            ParamName::DistanceMetric => {}
            scalar => {
                if spec.params.scalar(scalar).map(Score::kind) != Some(spec.score_kind) {
                    violations.push(SpecViolation::ParamKindMismatch(scalar));
                }
            }
        }
    }
    if let Some(m) = &spec.params.substitution_matrix {
        if !matches!(m.size(), 4 | 5 | 20) && !spec.required_params.contains(&ParamName::SubstitutionMatrix) {
            violations.push(SpecViolation::MatrixShape {
                name: ParamName::SubstitutionMatrix,
                found: m.size(),
                expected: 4,
            });
        }
    }

    violations.extend(config.violations().into_iter().map(SpecViolation::InvalidConfig));
    if let Some(w) = spec.band {
        if w == 0 {
            violations.push(SpecViolation::InvalidConfig("band width must be positive".into()));
        }
    }

    if violations.is_empty() {
        Ok(spec)
    } else {
        Err(SpecError {
            name: spec.name.clone(),
            violations,
        })
    }
}
