use dphls_core::engine::{align, NoProbe};
use dphls_core::kernels::*;
use dphls_core::oracle::{closed_form, enumerate_paths, oracle_align};
use dphls_core::symbol::encode_sequence;
use dphls_core::testkit;
use dphls_core::types::{AlignmentResult, Coord, TracebackMove, TracebackState};
use dphls_core::verify::verify_pair;
use dphls_core::*;
use rand::Rng;

use TracebackMove::{Del, End, Ins, Mmi};

fn dna(s: &str) -> Vec<Symbol> {
    encode_sequence(s.as_bytes(), SymbolKind::Nucleotide).unwrap()
}

fn protein(s: &str) -> Vec<Symbol> {
    encode_sequence(s.as_bytes(), SymbolKind::AminoAcid).unwrap()
}

fn run(spec: &KernelSpec, q: &[Symbol], r: &[Symbol]) -> AlignmentResult {
    align(spec, &EngineConfig::default(), q, r).unwrap()
}

fn int(s: Score) -> i32 {
    s.as_i32().unwrap()
}

fn gap_runs(moves: &[TracebackMove]) -> usize {
    let mut n = 0;
    let mut in_gap = false;
    for m in moves {
        let g = matches!(m, Ins | Del);
        if g && !in_gap {
            n += 1;
        }
        in_gap = g;
    }
    n
}

#[test]
fn global_linear() {
    let spec = kernel_global_linear().with_params(ScoringParams::linear(1, -1, -1));
    let res = run(&spec, &dna("ACGT"), &dna("ACGT"));
    assert_eq!(res.score, Score::Int(4));
    assert_eq!(res.moves, vec![Mmi, Mmi, Mmi, Mmi, End]);

    assert_eq!(run(&spec, &dna("A"), &dna("AAA")).score, Score::Int(-1));

    let expected = 0;
    assert_eq!(closed_form::needleman_wunsch(b"GATTACA", b"GCATGCT", 1, -1, -1), expected);
    assert_eq!(int(run(&spec, &dna("GATTACA"), &dna("GCATGCT")).score), expected);
}

#[test]
fn global_affine() {
    let spec = kernel_global_affine().with_params(ScoringParams::affine(1, -1, -2, -1));
    let res = run(&spec, &dna("GATTACA"), &dna("GATTACA"));
    assert_eq!(res.score, Score::Int(7));
    assert!(res.moves[..7].iter().all(|m| *m == Mmi));

    let expected = -2;
    assert_eq!(closed_form::gotoh(b"AAAA", b"AA", 1, -1, -2, -1), expected as i64);
    assert_eq!(int(run(&spec, &dna("AAAA"), &dna("AA")).score), expected);

    // the linear optimum scatters the four deletions, a costly open keeps
    // them together
    let (q, r) = (dna("ATTAGC"), dna("ATATGCACGT"));
    let linear = kernel_global_linear().with_params(ScoringParams::linear(1, -1, -1));
    let affine = kernel_global_affine().with_params(ScoringParams::affine(1, -1, -6, -1));
    let lin = run(&linear, &q, &r);
    let aff = run(&affine, &q, &r);
    assert!(gap_runs(&lin.moves) > 1);
    assert_eq!(gap_runs(&aff.moves), 1);
    assert_eq!(aff.cigar(), "6M4D");
    assert_eq!(closed_form::gotoh(b"ATTAGC", b"ATATGCACGT", 1, -1, -6, -1), -8);
    assert_eq!(aff.score, Score::Int(-8));
}

#[test]
fn local_linear() {
    let spec = kernel_local_linear().with_params(ScoringParams::linear(1, -1, -1));
    let res = run(&spec, &dna("AAAA"), &dna("CCCC"));
    assert_eq!(res.score, Score::Int(0));
    assert_eq!(res.moves, vec![End]);

    let spec = kernel_local_linear().with_params(ScoringParams::linear(3, -3, -2));
    let (q, r) = (dna("TGTTACGG"), dna("GGTTGACTA"));
    let expected = 13;
    assert_eq!(closed_form::smith_waterman(b"TGTTACGG", b"GGTTGACTA", 3, -3, -2), expected);
    let res = run(&spec, &q, &r);
    assert_eq!(int(res.score), expected);
    assert_eq!(res, oracle_align(&spec, &q, &r).unwrap().0);

    let spec = kernel_local_linear().with_params(ScoringParams::linear(2, -1, -1));
    let res = run(&spec, &dna("GATTA"), &dna("CCCGATTACCC"));
    assert_eq!(res.score, Score::Int(10));
    assert_eq!(res.start_coord, Coord::new(0, 3));
    assert_eq!(res.end_coord, Coord::new(5, 8));
}

#[test]
fn local_affine() {
    let spec = kernel_local_affine().with_params(default_params(4));
    assert_eq!(run(&spec, &dna("AAAA"), &dna("CCCC")).score, Score::Int(0));

    let cases = [
        (ScoringParams::affine(3, -3, -5, -2), "TGTTACG", "GGTTGAC", 9),
        (ScoringParams::affine(2, -1, -3, -1), "ACACACTA", "AGCACACA", 10),
    ];
    for (params, q, r, expected) in cases {
        let spec = kernel_local_affine().with_params(params);
        let (q, r) = (dna(q), dna(r));
        assert_eq!(enumerate_paths(&spec, &q, &r).unwrap(), Score::Int(expected));
        assert_eq!(run(&spec, &q, &r).score, Score::Int(expected));
    }
}

/// Traceback states visited from the corner, read from the oracle matrix.
fn states_on_path(spec: &KernelSpec, q: &[Symbol], r: &[Symbol]) -> Vec<TracebackState> {
    let (_, m) = oracle_align(spec, q, r).unwrap();
    let (mut row, mut col) = (q.len(), r.len());
    let mut state = TracebackState::Mm;
    let mut seen = vec![state];
    while row > 0 && col > 0 {
        let (next, mv) = (spec.tb_transition)(state, m.pointer(row - 1, col - 1).unwrap());
        let (dq, dr) = mv.consumes();
        row -= dq;
        col -= dr;
        state = next;
        seen.push(state);
    }
    seen
}

#[test]
fn two_piece_gap_cost_and_crossover() {
    let (o1, e1, o2, e2) = (-4, -2, -24, -1);
    let spec = kernel_global_two_piece().with_params(ScoringParams::two_piece(2, -4, (o1, e1), (o2, e2)));
    // below k = 20 the short piece is cheaper, above it the long piece
    let crossover = 20;
    for k in 1..=30 {
        let r = format!("A{}A", "C".repeat(k));
        let res = run(&spec, &dna("AA"), &dna(&r));
        let cost = (o1 + k as i32 * e1).max(o2 + k as i32 * e2);
        assert_eq!(res.score, Score::Int(4 + cost), "k = {k}");
        let long = states_on_path(&spec, &dna("AA"), &dna(&r)).contains(&TracebackState::LongDel);
        assert_eq!(long, k > crossover, "k = {k}");
        assert_eq!(res.cigar(), format!("1M{k}D1M"));
    }
    let res = run(&spec, &dna("ACGTTGCA"), &dna("ACGTTGCA"));
    assert_eq!(res.score, Score::Int(16));
}

#[test]
fn overlap() {
    let spec = kernel_overlap().with_params(ScoringParams::linear(1, -1, -1));
    // query suffix ACGTA is the reference prefix
    let res = run(&spec, &dna("TTTACGTA"), &dna("ACGTAGGGG"));
    assert_eq!(res.score, Score::Int(5));
    assert_eq!(res.start_coord, Coord::new(3, 0));
    assert_eq!(res.end_coord, Coord::new(8, 5));

    // every path costs something when nothing matches: the best is a single step
    let (q, r) = (dna("AAAA"), dna("CCCC"));
    assert_eq!(enumerate_paths(&spec, &q, &r).unwrap(), Score::Int(-1));
    let res = run(&spec, &q, &r);
    assert_eq!(res.score, Score::Int(-1));
    assert_eq!(res.moves.len(), 2);

    let (q, r) = (dna("CGTA"), dna("TTCGTAGG"));
    let semi = kernel_semiglobal().with_params(ScoringParams::linear(1, -1, -1));
    assert_eq!(enumerate_paths(&spec, &q, &r).unwrap(), Score::Int(4));
    assert_eq!(run(&spec, &q, &r).score, run(&semi, &q, &r).score);
}

#[test]
fn semiglobal() {
    let spec = kernel_semiglobal().with_params(ScoringParams::linear(1, -1, -1));
    let res = run(&spec, &dna("GATTA"), &dna("CCGATTACC"));
    assert_eq!(res.score, Score::Int(5));
    assert_eq!(res.start_coord, Coord::new(0, 2));

    let (q, r) = (dna("ACGTACGTA"), dna("ACGTA"));
    assert_eq!(enumerate_paths(&spec, &q, &r).unwrap(), Score::Int(1));
    assert_eq!(run(&spec, &q, &r).score, Score::Int(1));

    let global = kernel_global_linear().with_params(ScoringParams::linear(1, -1, -1));
    let mut rng = testkit::rng(7);
    for _ in 0..20 {
        let n = rng.gen_range(1..30);
        let q = testkit::random_sequence(&mut rng, SymbolKind::Nucleotide, n);
        assert_eq!(run(&spec, &q, &q).score, run(&global, &q, &q).score);
    }
}

#[test]
fn profile() {
    let affine = ScoringParams::affine(1, -1, -2, -1);
    let spec8 = kernel_profile().with_params(
        ScoringParams::new()
            .with(ParamName::GapOpen, Score::Float(-2.0))
            .with(ParamName::GapExtend, Score::Float(-1.0))
            .with_substitution_matrix(SubMatrix::match_mismatch(5, Score::Float(1.0), Score::Float(-1.0))),
    );
    let spec2 = kernel_global_affine().with_params(affine);
    let mut rng = testkit::rng(8);
    for _ in 0..20 {
        let (q, r) = testkit::random_pair(&mut rng, SymbolKind::Nucleotide, 1..=24);
        let hot = |s: &[Symbol]| s.iter().map(|x| Symbol::one_hot(x.code())).collect::<Vec<_>>();
        let a = run(&spec8, &hot(&q), &hot(&r)).score.as_f64();
        let b = run(&spec2, &q, &r).score.as_f64();
        assert_eq!(a, b);
    }

    // a uniform column scores the mean of the matrix row
    let m = SubMatrix::from_fn(5, |a, b| Score::Float((a * 5 + b) as f64));
    let spec = kernel_profile().with_params(default_params(8).with_substitution_matrix(m.clone()));
    let uniform = Symbol::normalized_profile([1.0; 5]);
    for b in 0..5 {
        let res = run(&spec, &[uniform], &[Symbol::one_hot(b)]);
        let mean = (0..5).map(|a| m.get(a, b).as_f64()).sum::<f64>() / 5.0;
        assert!((res.score.as_f64() - mean).abs() < 1e-12);
    }
    // a pure gap column scores the gap row of the matrix
    let col = Symbol::normalized_profile([0.2, 0.3, 0.1, 0.4, 0.0]);
    let res = run(&spec, &[Symbol::one_hot(4)], &[col]);
    let Symbol::ProfileColumn(f) = col else { unreachable!() };
    let want: f64 = (0..5).map(|b| f[b] * m.get(4, b).as_f64()).sum();
    assert!((res.score.as_f64() - want).abs() < 1e-12);
}

fn complex(v: &[(f64, f64)]) -> Vec<Symbol> {
    v.iter().map(|&(re, im)| Symbol::ComplexSample { re, im }).collect()
}

#[test]
fn dtw() {
    let spec = kernel_dtw().with_params(default_params(9));
    let sig = complex(&[(0.5, 1.0), (-1.0, 0.25), (2.0, 2.0), (0.0, -1.5)]);
    let res = run(&spec, &sig, &sig);
    assert_eq!(res.score, Score::Float(0.0));
    assert_eq!(res.cigar(), "4M");

    let flat = complex(&[(1.0, 0.0); 6]);
    let shifted = complex(&[(1.75, 0.0); 6]);
    assert_eq!(run(&spec, &flat, &shifted).score, Score::Float(6.0 * 0.75));

    let mut rng = testkit::rng(9);
    for metric in [DistanceMetric::Manhattan, DistanceMetric::Euclidean] {
        let spec = kernel_dtw().with_params(ScoringParams::new().with_metric(metric));
        for _ in 0..30 {
            let (q, r) = testkit::random_pair(&mut rng, SymbolKind::ComplexSample, 1..=8);
            let got = run(&spec, &q, &r).score;
            let all = enumerate_paths(&spec, &q, &r).unwrap();
            let pairs = |s: &[Symbol]| {
                s.iter()
                    .map(|x| match x {
                        Symbol::ComplexSample { re, im } => (*re, *im),
                        _ => unreachable!(),
                    })
                    .collect::<Vec<_>>()
            };
            let textbook = closed_form::dtw(&pairs(&q), &pairs(&r), metric);
            assert!(got.approx_eq(all, 1e-9), "{got} vs {all}");
            assert!(got.approx_eq(Score::Float(textbook), 1e-9), "{got} vs {textbook}");
        }
    }
}

#[test]
fn viterbi() {
    let zero = ScoringParams::new()
        .with(ParamName::LogMu, Score::Float(0.0))
        .with(ParamName::LogLambda, Score::Float(0.0))
        .with_emission(SubMatrix::match_mismatch(5, Score::Float(0.0), Score::Float(0.0)));
    let spec = kernel_viterbi().with_params(zero);
    assert_eq!(run(&spec, &dna("ACGT"), &dna("GGA")).score, Score::Float(0.0));

    let params = default_params(10);
    let spec = kernel_viterbi().with_params(params.clone());
    for a in 0..4 {
        for b in 0..4 {
            let res = run(&spec, &[Symbol::Nucleotide(a)], &[Symbol::Nucleotide(b)]);
            let e = params.emission.as_ref().unwrap().get(a as usize, b as usize);
            assert_eq!(res.score, e);
        }
    }

    let mut rng = testkit::rng(10);
    for _ in 0..30 {
        let spec = testkit::random_spec(&mut rng, 10);
        let q = testkit::random_sequence(&mut rng, SymbolKind::Nucleotide, 6);
        let r = testkit::random_sequence(&mut rng, SymbolKind::Nucleotide, 6);
        let cfg = EngineConfig::default().with_n_pe(4);
        assert_eq!(verify_pair(&spec, &cfg, &q, &r, &mut NoProbe).unwrap(), None);
        let got = run(&spec, &q, &r).score;
        assert!(got.approx_eq(enumerate_paths(&spec, &q, &r).unwrap(), 1e-9));
    }
}

#[test]
fn banded_kernels() {
    let wide = Some(64);
    let mut rng = testkit::rng(12);
    for (banded, plain) in [(11, 1), (12, 4), (13, 5)] {
        let b = testkit::random_spec(&mut rng, banded);
        let p = catalog_spec(plain).with_params(b.params.clone());
        let b = b.with_band(wide);
        for _ in 0..10 {
            let (q, r) = testkit::random_pair(&mut rng, SymbolKind::Nucleotide, 1..=48);
            let x = run(&b, &q, &r);
            let y = run(&p, &q, &r);
            assert_eq!(x.score, y.score);
            assert_eq!(x.end_coord, y.end_coord);
        }
        let narrow = b.clone().with_band(Some(1));
        let q = testkit::random_sequence(&mut rng, SymbolKind::Nucleotide, 20);
        let res = run(&narrow, &q, &q);
        assert_eq!(res.score, run(&p, &q, &q).score);
    }

    // the unbanded optimum drops two leading bases, outside a band of one
    let (q, r) = (dna("AACGTACG"), dna("CGTACGTT"));
    for (banded, plain, inside, outside) in [(11, 1, -8, 2), (12, 4, 0, 6), (13, 5, -32, -4)] {
        let b = catalog_spec(banded).with_params(default_params(banded)).with_band(Some(1));
        let p = catalog_spec(plain).with_params(default_params(plain));
        assert_eq!(enumerate_paths(&b, &q, &r).unwrap(), Score::Int(inside));
        assert_eq!(enumerate_paths(&p, &q, &r).unwrap(), Score::Int(outside));
        assert_eq!(run(&b, &q, &r).score, Score::Int(inside));
        assert_eq!(run(&p, &q, &r).score, Score::Int(outside));
        assert!(inside <= outside);
    }
}

fn catalog_spec(id: u8) -> KernelSpec {
    KernelCatalog::new().get(id).unwrap().clone()
}

#[test]
fn sdtw() {
    let spec = kernel_sdtw();
    let ints = |v: &[i32]| v.iter().map(|&x| Symbol::IntSample(x)).collect::<Vec<_>>();
    let r = ints(&[5, -3, 8, 12, 0, 7, 7, -20]);
    assert_eq!(run(&spec, &ints(&[8, 12, 0]), &r).score, Score::Int(0));
    let res = run(&spec, &ints(&[10]), &r);
    assert_eq!(res.score, Score::Int(2));
    // 8 and 12 tie, the earlier column wins
    assert_eq!(res.end_coord, Coord::new(1, 3));

    let mut rng = testkit::rng(14);
    for _ in 0..50 {
        let (q, r) = testkit::random_pair(&mut rng, SymbolKind::IntSample, 1..=8);
        let got = run(&spec, &q, &r).score;
        assert_eq!(got, enumerate_paths(&spec, &q, &r).unwrap());
    }
}

#[test]
fn protein_local() {
    let spec = kernel_protein_local().with_params(ScoringParams::new().with(ParamName::LinearGap, Score::Int(-8)).with_substitution_matrix(blosum62()));
    let pep = protein("MKWVTFISLL");
    let diagonal: i32 = pep.iter().map(|s| blosum::BLOSUM62[s.code()][s.code()]).sum();
    let res = run(&spec, &pep, &pep);
    assert_eq!(res.score, Score::Int(diagonal));
    assert_eq!(res.cigar(), "10M");

    // frozen from a matrix Smith-Waterman written for this test
    let expected = 20;
    let (q, r) = (protein("HEAGAWGHEE"), protein("PAWHEAE"));
    assert_eq!(matrix_smith_waterman(&q, &r, -8), expected);
    assert_eq!(run(&spec, &q, &r).score, Score::Int(expected));

    // W/P and W/G both score below zero
    assert_eq!(run(&spec, &protein("WWW"), &protein("PGP")).score, Score::Int(0));
}

fn matrix_smith_waterman(q: &[Symbol], r: &[Symbol], gap: i32) -> i32 {
    let mut prev = vec![0; r.len() + 1];
    let mut best = 0;
    for a in q {
        let mut cur = vec![0; r.len() + 1];
        for (j, b) in r.iter().enumerate() {
            let s = blosum::BLOSUM62[a.code()][b.code()];
            cur[j + 1] = 0.max(prev[j] + s).max(prev[j + 1] + gap).max(cur[j] + gap);
            best = best.max(cur[j + 1]);
        }
        prev = cur;
    }
    best
}
