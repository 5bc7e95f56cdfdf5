//! Seeded generators for sequences and parameter sets.
//!
//! Parameter ranges keep match/extension scores non-positive where the
//! recurrences assume it, so every generated spec is a well-posed kernel:
//!
//! | family             | ranges                                                  |
//! |--------------------|---------------------------------------------------------|
//! | linear             | match 1..=5, mismatch -5..=-1, gap -5..=-1              |
//! | affine             | match 1..=5, mismatch -5..=-1, open -8..=-1, ext -3..=-1 |
//! | two-piece          | short (-6..=-2, -4..=-2), long (-30..=-10, -2..=-1)      |
//! | profile            | matrix entries U(-2, 2), open U(-3, -0.5), ext U(-2, -0.1) |
//! | dtw                | Manhattan or Euclidean                                  |
//! | viterbi            | mu U(0.01, 0.3), lambda U(0.05, 0.6), emissions from Dirichlet-like draws |
//! | protein            | BLOSUM62, gap -10..=-1                                  |

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::{in_band, in_band_coord, FillProbe};
use crate::kernels::{blosum62, default_params, KernelCatalog};
use crate::params::{DistanceMetric, ParamName, ScoringParams, SubMatrix};
use crate::score::Score;
use crate::spec::{KernelSpec, PeInput};
use crate::symbol::{Symbol, SymbolKind};
use crate::types::CellScores;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_symbol(rng: &mut impl Rng, kind: SymbolKind) -> Symbol {
    match kind {
        SymbolKind::Nucleotide => Symbol::Nucleotide(rng.gen_range(0..4)),
        SymbolKind::AmbiguousNucleotide => Symbol::AmbiguousNucleotide(rng.gen_range(0..5)),
        SymbolKind::AminoAcid => Symbol::AminoAcid(rng.gen_range(0..20)),
        SymbolKind::ProfileColumn => {
            let counts = [(); 5].map(|_| rng.gen_range(0.0..1.0));
            Symbol::normalized_profile(counts)
        }
        SymbolKind::ComplexSample => Symbol::ComplexSample {
            re: rng.gen_range(-2.0..2.0),
            im: rng.gen_range(-2.0..2.0),
        },
        SymbolKind::IntSample => Symbol::IntSample(rng.gen_range(-100..=100)),
    }
}

pub fn random_sequence(rng: &mut impl Rng, kind: SymbolKind, len: usize) -> Vec<Symbol> {
    (0..len).map(|_| random_symbol(rng, kind)).collect()
}

/// A pair with independent lengths drawn from `lens`.
pub fn random_pair(
    rng: &mut impl Rng,
    kind: SymbolKind,
    lens: std::ops::RangeInclusive<usize>,
) -> (Vec<Symbol>, Vec<Symbol>) {
    let q = rng.gen_range(lens.clone());
    let r = rng.gen_range(lens);
    (random_sequence(rng, kind, q), random_sequence(rng, kind, r))
}

/// Pair whose reference is a mutated copy of the query, so alignments have
/// long diagonal runs as well as gaps.
pub fn related_pair(
    rng: &mut impl Rng,
    kind: SymbolKind,
    lens: std::ops::RangeInclusive<usize>,
    edit_rate: f64,
) -> (Vec<Symbol>, Vec<Symbol>) {
    let n = rng.gen_range(lens.clone());
    let q = random_sequence(rng, kind, n);
    let mut r = mutate(rng, &q, edit_rate, |rng| random_symbol(rng, kind));
    if r.is_empty() {
        r.push(random_symbol(rng, kind));
    }
    r.truncate(*lens.end());
    (q, r)
}

/// Applies substitutions, insertions and deletions, each with probability
/// `rate / 3` per position.
pub fn mutate<T: Clone, R: Rng>(
    rng: &mut R,
    seq: &[T],
    rate: f64,
    mut fresh: impl FnMut(&mut R) -> T,
) -> Vec<T> {
    let mut out = Vec::with_capacity(seq.len() + seq.len() / 8);
    for s in seq {
        let u: f64 = rng.gen();
        if u < rate / 3.0 {
            out.push(fresh(rng));
        } else if u < 2.0 * rate / 3.0 {
            out.push(s.clone());
            out.push(fresh(rng));
        } else if u >= rate {
            out.push(s.clone());
        }
    }
    out
}

fn symmetric(rng: &mut impl Rng, size: usize, mut draw: impl FnMut(&mut dyn rand::RngCore) -> Score) -> SubMatrix {
    let mut cells = vec![Score::Int(0); size * size];
    for a in 0..size {
        for b in a..size {
            let v = draw(rng);
            cells[a * size + b] = v;
            cells[b * size + a] = v;
        }
    }
    SubMatrix::new(size, cells).expect("square")
}

fn emission(rng: &mut impl Rng) -> SubMatrix {
    let mut weights = [[0.0f64; 5]; 5];
    for row in weights.iter_mut() {
        for w in row.iter_mut() {
            *w = rng.gen_range(0.05..1.0);
        }
    }
    let total: f64 = weights.iter().flatten().sum();
    SubMatrix::from_fn(5, |a, b| Score::Float((weights[a][b] / total).ln()))
}

/// Random parameters for catalog kernel `id`, within the ranges above.
pub fn random_params(rng: &mut impl Rng, id: u8) -> ScoringParams {
    let m = rng.gen_range(1..=5);
    let x = rng.gen_range(-5..=-1);
    match id {
        1 | 3 | 6 | 7 | 11 => ScoringParams::linear(m, x, rng.gen_range(-5..=-1)),
        2 | 4 | 12 => ScoringParams::affine(m, x, rng.gen_range(-8..=-1), rng.gen_range(-3..=-1)),
        5 | 13 => ScoringParams::two_piece(
            m,
            x,
            (rng.gen_range(-6..=-2), rng.gen_range(-4..=-2)),
            (rng.gen_range(-30..=-10), rng.gen_range(-2..=-1)),
        ),
        8 => ScoringParams::new()
            .with(ParamName::GapOpen, Score::Float(rng.gen_range(-3.0..-0.5)))
            .with(ParamName::GapExtend, Score::Float(rng.gen_range(-2.0..-0.1)))
            .with_substitution_matrix(symmetric(rng, 5, |r| Score::Float(r.gen_range(-2.0..2.0)))),
        9 => ScoringParams::new().with_metric(
            *[DistanceMetric::Manhattan, DistanceMetric::Euclidean]
                .choose(rng)
                .expect("non-empty"),
        ),
        10 => ScoringParams::new()
            .with(ParamName::LogMu, Score::Float(rng.gen_range(0.01f64..0.3).ln()))
            .with(ParamName::LogLambda, Score::Float(rng.gen_range(0.05f64..0.6).ln()))
            .with_emission(emission(rng)),
        15 => ScoringParams::new()
            .with(ParamName::LinearGap, Score::Int(rng.gen_range(-10..=-1)))
            .with_substitution_matrix(blosum62()),
        other => default_params(other),
    }
}

/// Catalog kernel `id` carrying random parameters.
pub fn random_spec(rng: &mut impl Rng, id: u8) -> KernelSpec {
    let spec = KernelCatalog::new()
        .get(id)
        .unwrap_or_else(|| panic!("no catalog kernel #{id}"))
        .clone();
    let params = random_params(rng, id);
    spec.with_params(params)
}

/// DNA text of length `n` over `ACGT`.
pub fn random_dna(rng: &mut impl Rng, n: usize) -> Vec<u8> {
    (0..n).map(|_| b"ACGT"[rng.gen_range(0..4)]).collect()
}

/// Checks traceback memory access during a fill: within a wavefront no bank
/// is written twice, every write of wavefront `w` in a chunk lands at the
/// chunk's base address plus `w`, and each chunk starts where the previous
/// one ended.
#[derive(Debug, Default)]
pub struct TbDiscipline {
    chunk: Option<usize>,
    base: usize,
    wavefronts: usize,
    banks: Vec<usize>,
    pub writes: usize,
    pub violations: Vec<String>,
}

impl TbDiscipline {
    fn enter(&mut self, chunk: usize, w: usize) {
        if self.chunk != Some(chunk) {
            if self.chunk.is_some() {
                self.base += self.wavefronts;
            }
            self.chunk = Some(chunk);
            self.wavefronts = 0;
        }
        self.wavefronts = self.wavefronts.max(w + 1);
    }
}

impl FillProbe for TbDiscipline {
    fn on_tb_write(&mut self, chunk: usize, w: usize, bank: usize, addr: usize) {
        self.enter(chunk, w);
        self.writes += 1;
        if self.banks.contains(&bank) {
            self.violations
                .push(format!("chunk {chunk} wavefront {w}: bank {bank} written twice"));
        }
        self.banks.push(bank);
        if addr != self.base + w {
            self.violations.push(format!(
                "chunk {chunk} wavefront {w}: address {addr}, expected {}",
                self.base + w
            ));
        }
    }

    fn on_wavefront_end(&mut self, chunk: usize, w: usize) {
        self.enter(chunk, w);
        self.banks.clear();
    }
}

/// Checks that a fill computes only in-band cells and that every input
/// taken from outside the band is the kernel's worst value.
#[derive(Debug)]
pub struct BandSafety {
    band: Option<usize>,
    worst: CellScores,
    pub cells: usize,
    pub violations: Vec<String>,
}

impl BandSafety {
    pub fn new(spec: &KernelSpec, band: Option<usize>) -> Self {
        BandSafety {
            band,
            worst: spec.worst_cell(),
            cells: 0,
            violations: Vec::new(),
        }
    }
}

impl FillProbe for BandSafety {
    fn on_pe(&mut self, input: &PeInput<'_>) {
        let (i, j) = input.cell;
        self.cells += 1;
        if !in_band(self.band, i, j) {
            self.violations.push(format!("cell ({i}, {j}) computed outside the band"));
        }
        // boundary-inclusive coordinates of the three neighbours
        let reads = [("up", i, j + 1, input.up), ("diag", i, j, input.diag), ("left", i + 1, j, input.left)];
        for (name, row, col, value) in reads {
            if !in_band_coord(self.band, row, col) && *value != self.worst {
                self.violations
                    .push(format!("cell ({i}, {j}) read a live {name} value from outside the band"));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::validate_spec;
    use crate::types::EngineConfig;

    #[test]
    fn random_specs_validate() {
        let mut r = rng(7);
        for id in 1..=15 {
            for _ in 0..20 {
                let spec = random_spec(&mut r, id);
                validate_spec(&spec, &EngineConfig::default()).unwrap();
            }
        }
    }

    #[test]
    fn generators_are_seeded() {
        let a = random_dna(&mut rng(3), 50);
        let b = random_dna(&mut rng(3), 50);
        assert_eq!(a, b);
    }

    #[test]
    fn mutate_rate_zero_is_identity() {
        let mut r = rng(1);
        let s = random_dna(&mut r, 100);
        assert_eq!(mutate(&mut r, &s, 0.0, |_| b'A'), s);
    }
}
