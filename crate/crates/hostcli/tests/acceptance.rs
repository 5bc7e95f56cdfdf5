//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use dphls_core::engine::{align, align_probed, NoProbe};
use dphls_core::kernels::KernelCatalog;
use dphls_core::oracle::{enumerate_paths, oracle_align, rescore, ENUMERATION_LIMIT};
use dphls_core::perf::*;
use dphls_core::symbol::encode_sequence;
use dphls_core::testkit::{self, TbDiscipline};
use dphls_core::verify::{verify_pair, FLOAT_TOL};
use dphls_core::{default_params, EngineConfig, Score, SymbolKind};
use dphls_hostcli::batch::{run_batch, SeqRecord};
use dphls_hostcli::fasta::{parse_fasta, read_fasta, write_fasta};
use dphls_hostcli::matrix::{parse_matrix, write_matrix};
use dphls_hostcli::signal::{parse_signal, write_signal};
use dphls_hostcli::tiling::{run_tiled_alignment, TilingPlan};
use proptest::test_runner::{Config as PropConfig, TestCaseError, TestRunner};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn config(n_pe: usize) -> EngineConfig {
    EngineConfig::default().with_max_lengths(256, 256).with_n_pe(n_pe)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = testkit::rng(0xacc1);
    let mut pairs = 0;
    for kernel in KernelCatalog::new().iter() {
        for case in 0..200 {
            let spec = testkit::random_spec(&mut rng, kernel.id);
            let (q, r) = testkit::random_pair(&mut rng, spec.symbol_kind, 1..=64);
            let n_pe = rng.gen_range(1..=64);
            let d = verify_pair(&spec, &config(n_pe), &q, &r, &mut NoProbe).map_err(|e| e.to_string())?;
            if let Some(d) = d {
                return Err(format!("kernel {} case {case} ({}x{}, n_pe {n_pe}): {d}", spec.name, q.len(), r.len()));
            }
            pairs += 1;
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!("{pairs} pairs in {:.1}s", took.as_secs_f64()))
}

fn dual_oracle() -> Outcome {
    let mut rng = testkit::rng(0xacc2);
    let mut n = 0;
    for kernel in KernelCatalog::new().iter() {
        for case in 0..60 {
            let spec = testkit::random_spec(&mut rng, kernel.id);
            let ql = rng.gen_range(1..ENUMERATION_LIMIT);
            let rl = rng.gen_range(1..=ENUMERATION_LIMIT - ql);
            let q = testkit::random_sequence(&mut rng, spec.symbol_kind, ql);
            let r = testkit::random_sequence(&mut rng, spec.symbol_kind, rl);
            let (res, _) = oracle_align(&spec, &q, &r).map_err(|e| e.to_string())?;
            let best = enumerate_paths(&spec, &q, &r).map_err(|e| e.to_string())?;
            ensure(res.score.approx_eq(best, FLOAT_TOL), || {
                format!("kernel {} case {case}: matrix {} vs paths {best}", spec.name, res.score)
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} instances, Q+R <= {ENUMERATION_LIMIT}"))
}

fn chunk_invariance() -> Outcome {
    let mut rng = testkit::rng(0xacc3);
    let mut n = 0;
    for kernel in KernelCatalog::new().iter() {
        for case in 0..50 {
            let spec = testkit::random_spec(&mut rng, kernel.id);
            let (q, r) = testkit::random_pair(&mut rng, spec.symbol_kind, 1..=100);
            let base = align(&spec, &config(1), &q, &r);
            for n_pe in [2, 3, 8, 32, 64] {
                ensure(align(&spec, &config(n_pe), &q, &r) == base, || {
                    format!("kernel {} case {case}: n_pe {n_pe} differs from n_pe 1", spec.name)
                })?;
            }
            n += 1;
        }
    }
    Ok(format!("{n} pairs x 6 PE counts"))
}

fn banded_equals_unbanded() -> Outcome {
    let catalog = KernelCatalog::new();
    let mut rng = testkit::rng(0xacc4);
    for (banded, plain) in [(11, 1), (12, 4), (13, 5)] {
        for case in 0..100 {
            let b = testkit::random_spec(&mut rng, banded);
            let (q, r) = testkit::random_pair(&mut rng, SymbolKind::Nucleotide, 1..=64);
            let w = q.len().max(r.len()) + rng.gen_range(0..4);
            let b = b.with_band(Some(w));
            let p = catalog.get(plain).unwrap().clone().with_params(b.params.clone());
            let x = align(&b, &config(8), &q, &r).map_err(|e| e.to_string())?;
            let y = align(&p, &config(8), &q, &r).map_err(|e| e.to_string())?;
            // score-only kernels report no path and no start
            let same = if b.policy.emits_traceback() {
                x == y
            } else {
                (x.score, x.end_coord, &x.layers_at_end) == (y.score, y.end_coord, &y.layers_at_end)
            };
            ensure(same, || format!("#{banded} vs #{plain} case {case} (W {w})"))?;
        }
    }
    Ok("3 x 100 pairs".into())
}

fn traceback_rescoring() -> Outcome {
    let mut rng = testkit::rng(0xacc5);
    let mut paths = 0;
    for kernel in KernelCatalog::new().iter().filter(|k| k.policy.emits_traceback()) {
        for case in 0..200 {
            let spec = testkit::random_spec(&mut rng, kernel.id);
            let (q, r) = testkit::random_pair(&mut rng, spec.symbol_kind, 1..=64);
            // a global corner outside the band emits no path
            let Ok(res) = align(&spec, &config(rng.gen_range(1..=64)), &q, &r) else {
                continue;
            };
            let s = rescore(&spec, &q, &r, &res).map_err(|e| format!("kernel {} case {case}: {e}", spec.name))?;
            ensure(s.approx_eq(res.score, FLOAT_TOL), || {
                format!("kernel {} case {case}: rescored {s} vs {}", spec.name, res.score)
            })?;
            paths += 1;
        }
    }
    Ok(format!("{paths} paths"))
}

fn tiling_accuracy() -> Outcome {
    let start = Instant::now();
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let qs = read_fasta(&dir.join("tiling_query.fa")).map_err(|e| e.to_string())?;
    let rs = read_fasta(&dir.join("tiling_reference.fa")).map_err(|e| e.to_string())?;
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("tiling_scores.json")).unwrap()).unwrap();
    let params: Vec<i64> = ["match", "mismatch", "gap_open", "gap_extend"]
        .iter()
        .map(|k| json[k].as_i64().unwrap())
        .collect();
    ensure(params == [1, -1, -2, -1], || format!("fixture params {params:?}"))?;
    let expected: Vec<i64> = json["scores"].as_array().unwrap().iter().map(|v| v.as_i64().unwrap()).collect();
    ensure(qs.len() == 20 && rs.len() == 20 && expected.len() == 20, || "fixture needs 20 pairs".into())?;

    let spec = KernelCatalog::new().get(2).unwrap().clone().with_params(default_params(2));
    let plan = TilingPlan { tile_size: 256, overlap: 32 };
    let cfg = EngineConfig::default();
    let mut worst = f64::INFINITY;
    for (k, ((q, r), full)) in qs.iter().zip(&rs).zip(&expected).enumerate() {
        let q = encode_sequence(&q.seq, SymbolKind::Nucleotide).unwrap();
        let r = encode_sequence(&r.seq, SymbolKind::Nucleotide).unwrap();
        let tiled = run_tiled_alignment(&spec, &cfg, &q, &r, plan).map_err(|e| format!("pair {k}: {e}"))?;
        let Score::Int(s) = tiled.result.score else {
            return Err("non-integer score".into());
        };
        let ratio = s as f64 / *full as f64;
        worst = worst.min(ratio);
        ensure(ratio >= 0.95, || format!("pair {k}: stitched {s} vs full {full}"))?;
    }

    let mut rng = testkit::rng(0xacc6);
    let same = encode_sequence(&testkit::random_dna(&mut rng, 10_000), SymbolKind::Nucleotide).unwrap();
    let tiled = run_tiled_alignment(&spec, &cfg, &same, &same, plan).map_err(|e| e.to_string())?;
    ensure(tiled.result.score == Score::Int(10_000), || format!("identical pair scored {}", tiled.result.score))?;
    ensure(tiled.result.cigar() == "10000M", || "identical pair left the diagonal".into())?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(300), || format!("took {took:?}"))?;
    Ok(format!("min stitched/full {worst:.4}, identical 10000, {:.1}s", took.as_secs_f64()))
}

fn cycle_model() -> Outcome {
    let grid_cfg = |n_pe, ii| EngineConfig { ii, ..config(n_pe).with_max_lengths(1024, 1024) };
    let mut points = 0;
    for q in [16, 64, 256, 1024] {
        for r in [16, 64, 256, 1024] {
            for n_pe in [1, 8, 32, 64] {
                for ii in [1, 2, 4] {
                    let c = grid_cfg(n_pe, ii);
                    let sim = simulate_schedule(&c, q, r).map_err(|e| e.to_string())?;
                    let analytic = fill_cycles(&c, q, r);
                    ensure(analytic == sim.fill_cycles, || {
                        format!("{q}x{r} n_pe {n_pe} ii {ii}: analytic {analytic} vs sim {}", sim.fill_cycles)
                    })?;
                    points += 1;
                }
            }
        }
    }
    let nb = scaling_sweep(&grid_cfg(32, 1), &[32], &[1, 2, 4, 8, 16, 32], 256, 256).map_err(|e| e.to_string())?;
    let xy: Vec<(f64, f64)> = nb.iter().map(|p| (p.config.n_b as f64, p.report.alignments_per_second)).collect();
    let slope = loglog_slope(&xy);
    ensure((slope - 1.0).abs() <= 0.01, || format!("n_b slope {slope}"))?;
    let pe = scaling_sweep(&grid_cfg(1, 1), &[1, 2, 4, 8, 16, 32, 64], &[1], 256, 256).map_err(|e| e.to_string())?;
    let xy: Vec<(f64, f64)> = pe.iter().map(|p| (p.config.n_pe as f64, p.report.alignments_per_second)).collect();
    ensure(strictly_concave(&xy), || format!("n_pe slopes {:?}", segment_slopes(&xy)))?;
    let speedup = xy[6].1 / xy[0].1;
    ensure(speedup < 64.0, || format!("speedup(64) {speedup}"))?;
    Ok(format!("{points} grid points exact, n_b slope {slope:.4}, speedup(64) {speedup:.1}"))
}

fn table_calibration() -> Outcome {
    let overhead = calibrate_overhead(&REFERENCE_POINTS, 256);
    let mut parts = Vec::new();
    for p in &REFERENCE_POINTS {
        let ratio = p.ratio(overhead, 256);
        ensure((1.0 / 3.0..=3.0).contains(&ratio), || format!("#{}: model/measured {ratio:.3}", p.kernel))?;
        parts.push(format!("#{} {ratio:.2}", p.kernel));
    }
    Ok(format!("overhead {overhead} cycles; model/measured {}", parts.join(", ")))
}

fn tb_discipline() -> Outcome {
    let kernels: Vec<u8> = KernelCatalog::new()
        .iter()
        .filter(|k| k.policy.emits_traceback())
        .map(|k| k.id)
        .collect();
    let mut rng = testkit::rng(0xacc9);
    let mut writes = 0;
    for fill in 0..1000 {
        let spec = testkit::random_spec(&mut rng, kernels[fill % kernels.len()]);
        let (q, r) = testkit::random_pair(&mut rng, spec.symbol_kind, 1..=96);
        let mut probe = TbDiscipline::default();
        let _ = align_probed(&spec, &config(rng.gen_range(1..=64)), &q, &r, &mut probe);
        ensure(probe.violations.is_empty(), || format!("fill {fill} ({}): {:?}", spec.name, probe.violations))?;
        ensure(probe.writes > 0, || format!("fill {fill}: no traceback writes"))?;
        writes += probe.writes;
    }
    Ok(format!("1000 fills, {writes} pointer writes, no conflicts"))
}

fn cli_round_trips() -> Outcome {
    let mut runner = TestRunner::new(PropConfig { cases: 256, failure_persistence: None, ..PropConfig::default() });
    runner
        .run(&common::fasta_records(), |(recs, width)| {
            let text = write_fasta(&recs, width);
            let back = parse_fasta(&text).map_err(|e| TestCaseError::fail(e.to_string()))?;
            proptest::prop_assert_eq!(&back, &recs);
            proptest::prop_assert_eq!(write_fasta(&back, width), text);
            Ok(())
        })
        .map_err(|e| format!("fasta: {e}"))?;
    runner
        .run(&common::matrices(), |(m, kind)| {
            let text = write_matrix(&m, kind);
            let back = parse_matrix(&text, kind).map_err(|e| TestCaseError::fail(e.to_string()))?;
            proptest::prop_assert_eq!(&back, &m);
            proptest::prop_assert_eq!(write_matrix(&back, kind), text);
            Ok(())
        })
        .map_err(|e| format!("matrix: {e}"))?;
    runner
        .run(&common::signals(), |(s, kind)| {
            let text = write_signal(&s);
            let back = parse_signal(&text, kind).map_err(|e| TestCaseError::fail(e.to_string()))?;
            proptest::prop_assert_eq!(&back, &s);
            proptest::prop_assert_eq!(write_signal(&back), text);
            Ok(())
        })
        .map_err(|e| format!("signal: {e}"))?;

    let mut rng = testkit::rng(0xacca);
    for kernel in KernelCatalog::new().iter() {
        let spec = testkit::random_spec(&mut rng, kernel.id);
        let (mut qs, mut rs) = (Vec::new(), Vec::new());
        for k in 0..30 {
            let (q, r) = testkit::random_pair(&mut rng, spec.symbol_kind, 1..=80);
            qs.push(SeqRecord { id: format!("q{k}"), symbols: q });
            rs.push(SeqRecord { id: format!("r{k}"), symbols: r });
        }
        let one = run_batch(&spec, &EngineConfig { n_k: 1, ..config(16) }, &qs, &rs).map_err(|e| e.to_string())?;
        let four = run_batch(&spec, &EngineConfig { n_k: 4, ..config(16) }, &qs, &rs).map_err(|e| e.to_string())?;
        ensure(one == four, || format!("batch output differs for {}", spec.name))?;
    }
    Ok("3 x 256 fuzzed round trips, 15 kernels x 30 pairs batch n_k 1 == 4".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("oracle equivalence", oracle_equivalence),
        ("dual-oracle consistency", dual_oracle),
        ("chunk invariance", chunk_invariance),
        ("banded/unbanded equality", banded_equals_unbanded),
        ("traceback re-scoring", traceback_rescoring),
        ("tiling accuracy", tiling_accuracy),
        ("cycle-model fidelity", cycle_model),
        ("throughput calibration", table_calibration),
        ("TB memory discipline", tb_discipline),
        ("CLI round-trips", cli_round_trips),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
