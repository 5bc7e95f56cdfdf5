//! A generic 2-D dynamic-programming alignment engine.
//!
//! Kernels are declared as [`KernelSpec`] values (alphabet, score layers,
//! initialization, per-cell recurrence, traceback state machine, banding)
//! and executed by a wavefront engine that walks anti-diagonals inside row
//! chunks the way a linear systolic array would. Alongside the engine sit a
//! naive row-major oracle, an exhaustive path enumerator and an analytic
//! cycle model.
//!
//! ```
//! use dphls_core::kernels::{default_params, kernel_global_linear};
//! use dphls_core::symbol::{encode_sequence, SymbolKind};
//! use dphls_core::{align, EngineConfig, Score};
//!
//! let spec = kernel_global_linear().with_params(default_params(1));
//! let q = encode_sequence(b"ACGT", SymbolKind::Nucleotide).unwrap();
//! let r = encode_sequence(b"ACGT", SymbolKind::Nucleotide).unwrap();
//! let res = align(&spec, &EngineConfig::default(), &q, &r).unwrap();
//! assert_eq!(res.score, Score::Int(4));
//! assert_eq!(res.cigar(), "4M");
//! ```

pub mod engine;
pub mod kernels;
pub mod oracle;
pub mod params;
pub mod perf;
pub mod score;
pub mod spec;
pub mod symbol;
pub mod testkit;
pub mod types;
pub mod verify;

pub use engine::{align, align_batch, BatchItem, EngineError};
pub use kernels::{default_params, KernelCatalog};
pub use params::{DistanceMetric, ParamName, ScoringParams, SubMatrix};
pub use score::{Objective, Score, ScoreKind};
pub use spec::{validate_spec, KernelSpec};
pub use symbol::{Symbol, SymbolKind};
pub use types::{
    AlignmentResult, CellScores, Coord, EngineConfig, Strategy, TracebackMove, TracebackPolicy,
    TracebackState,
};
