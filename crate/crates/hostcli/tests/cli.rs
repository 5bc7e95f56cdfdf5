mod common;

use std::path::Path;
use std::process::Command;

use dphls_core::kernels::KernelCatalog;
use dphls_core::oracle::closed_form::smith_waterman;
use dphls_core::symbol::encode_sequence;
use dphls_core::testkit;
use dphls_core::{default_params, EngineConfig, SymbolKind};
use dphls_hostcli::app::AppError;
use dphls_hostcli::batch::{parse_rows, run_batch, SeqRecord, HEADER};
use dphls_hostcli::fasta::{parse_fasta, write_fasta, Record};
use dphls_hostcli::matrix::{parse_matrix, write_matrix};
use dphls_hostcli::signal::{parse_signal, write_signal};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #[test]
    fn fasta_round_trip((recs, width) in common::fasta_records()) {
        let text = write_fasta(&recs, width);
        let back = parse_fasta(&text).unwrap();
        prop_assert_eq!(&back, &recs);
        prop_assert_eq!(write_fasta(&back, width), text);
    }

    #[test]
    fn matrix_round_trip((m, kind) in common::matrices()) {
        let text = write_matrix(&m, kind);
        let back = parse_matrix(&text, kind).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(write_matrix(&back, kind), text);
    }

    #[test]
    fn signal_round_trip((s, kind) in common::signals()) {
        let text = write_signal(&s);
        let back = parse_signal(&text, kind).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(write_signal(&back), text);
    }
}

fn seq_records(rng: &mut impl Rng, prefix: &str, n: usize, max: usize) -> Vec<SeqRecord> {
    (0..n)
        .map(|k| {
            let len = rng.gen_range(1..=max);
            let text = testkit::random_dna(rng, len);
            SeqRecord {
                id: format!("{prefix}{k}"),
                symbols: encode_sequence(&text, SymbolKind::Nucleotide).unwrap(),
            }
        })
        .collect()
}

#[test]
fn batch_output_is_independent_of_channels() {
    let mut rng = testkit::rng(0xba7c);
    let catalog = KernelCatalog::new();
    for id in [1, 2, 3, 5, 6, 7, 11, 12] {
        let spec = catalog.get(id).unwrap().clone().with_params(default_params(id));
        let q = seq_records(&mut rng, "q", 40, 90);
        let r = seq_records(&mut rng, "r", 40, 90);
        let cfg = EngineConfig::default().with_max_lengths(128, 128);
        let one = run_batch(&spec, &EngineConfig { n_k: 1, ..cfg.clone() }, &q, &r).unwrap();
        let four = run_batch(&spec, &EngineConfig { n_k: 4, ..cfg }, &q, &r).unwrap();
        assert_eq!(one, four, "kernel {id}");
    }
}

#[test]
fn local_batch_matches_the_oracle() {
    let mut rng = testkit::rng(0x10ca1);
    let spec = KernelCatalog::new().get(3).unwrap().clone().with_params(default_params(3));
    let mut texts = Vec::new();
    let (mut q, mut r) = (Vec::new(), Vec::new());
    for k in 0..1000 {
        let (a, b) = (rng.gen_range(1..=120), rng.gen_range(1..=120));
        let (ta, tb) = (testkit::random_dna(&mut rng, a), testkit::random_dna(&mut rng, b));
        q.push(SeqRecord { id: format!("q{k}"), symbols: encode_sequence(&ta, SymbolKind::Nucleotide).unwrap() });
        r.push(SeqRecord { id: format!("r{k}"), symbols: encode_sequence(&tb, SymbolKind::Nucleotide).unwrap() });
        texts.push((ta, tb));
    }
    let cfg = EngineConfig { n_k: 4, ..EngineConfig::default().with_max_lengths(128, 128) };
    let rows = parse_rows(&run_batch(&spec, &cfg, &q, &r).unwrap()).unwrap();
    assert_eq!(rows.len(), 1000);
    for (row, (ta, tb)) in rows.iter().zip(&texts) {
        assert_eq!(row.status, "OK");
        let expect = smith_waterman(ta, tb, 1, -1, -1);
        assert_eq!(row.score, expect.to_string(), "{}", row.id_q);
    }
}

fn dphls(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dphls")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let q = write(dir.path(), "q.fa", ">a\nACGTTAGC\n>b\nGGATC\n");
    let r = write(dir.path(), "r.fa", ">x\nACGTAGC\n>y\nGATTC\n");
    let bad = write(dir.path(), "bad.fa", "ACGT\n>late\nAC\n");
    let one = write(dir.path(), "one.fa", ">x\nACGT\n");
    let missing = dir.path().join("missing.fa").display().to_string();

    let (code, out, _) = dphls(&["batch", "--kernel", "2", "--query", &q, "--reference", &r]);
    assert_eq!(code, 0);
    assert!(out.starts_with(HEADER));
    assert_eq!(parse_rows(&out).unwrap()[0].score, "4");

    let (code, out, _) = dphls(&["verify", "--kernel", "global_affine", "--query", &q, "--reference", &r]);
    assert_eq!((code, out.lines().last()), (0, Some("MATCH")));

    assert_eq!(dphls(&["batch", "--kernel", "2", "--query", &missing, "--reference", &r]).0, 2);
    assert_eq!(dphls(&["batch", "--kernel", "2", "--query", &bad, "--reference", &r]).0, 2);
    assert_eq!(dphls(&["batch", "--kernel", "2", "--query", &q, "--reference", &one]).0, 2);
    assert_eq!(dphls(&["batch", "--kernel", "42", "--query", &q, "--reference", &r]).0, 1);
    assert_eq!(dphls(&["batch", "--kernel", "2", "--query", &q]).0, 1);
    assert_eq!(dphls(&["frobnicate"]).0, 1);
    assert_eq!(dphls(&["batch", "--kernel", "2", "--npe", "0", "--query", &q, "--reference", &r]).0, 1);
    assert_eq!(AppError::Mismatch(1).exit_code(), 3);
}

#[test]
fn config_file_flags_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "q.fa", ">a\nACGTACGT\n");
    write(dir.path(), "r.fa", ">x\nACGTACGT\n");
    let cfg = write(
        dir.path(),
        "run.json",
        r#"{"mode": "align", "kernel": "1", "query": "q.fa", "reference": "r.fa",
            "params": {"match": "3"}, "engine": {"n_pe": 4}}"#,
    );
    let (code, out, _) = dphls(&["align", "--config", &cfg]);
    assert_eq!(code, 0);
    assert_eq!(parse_rows(&out).unwrap()[0].score, "24");

    let out_path = dir.path().join("out.tsv");
    let out_arg = out_path.display().to_string();
    let (code, stdout, _) = dphls(&["align", "--config", &cfg, "--params", "match=2", "--out", &out_arg]);
    assert_eq!((code, stdout.as_str()), (0, ""));
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(parse_rows(&text).unwrap()[0].score, "16");
}

#[test]
fn perf_and_tile_modes() {
    let (code, out, _) = dphls(&["perf", "--npe", "32", "--nb", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 2);
    let (code, out, _) = dphls(&["perf", "--npe", "8", "--nb", "2", "--sweep"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 1 + 4 * 2);

    let dir = tempfile::tempdir().unwrap();
    let mut rng = testkit::rng(7);
    let text = testkit::random_dna(&mut rng, 700);
    let rec = [Record::new("s", text)];
    let q = write(dir.path(), "q.fa", &write_fasta(&rec, 60));
    let (code, out, _) = dphls(&["tile", "--kernel", "2", "--query", &q, "--reference", &q, "--tile", "128", "--overlap", "16"]);
    assert_eq!(code, 0);
    let row = &parse_rows(&out).unwrap()[0];
    assert_eq!((row.score.as_str(), row.cigar.as_str()), ("700", "700M"));
    assert_eq!(dphls(&["tile", "--kernel", "3", "--query", &q, "--reference", &q]).0, 1);
}

#[test]
fn emitted_cigars_parse_back_to_the_moves() {
    use dphls_core::types::{parse_cigar, TracebackMove};
    let mut rng = testkit::rng(0xc1a);
    for kernel in KernelCatalog::new().iter().filter(|k| k.policy.emits_traceback()) {
        let spec = testkit::random_spec(&mut rng, kernel.id);
        let (mut qs, mut rs) = (Vec::new(), Vec::new());
        for k in 0..20 {
            let (q, r) = testkit::random_pair(&mut rng, spec.symbol_kind, 1..=60);
            qs.push(SeqRecord { id: format!("q{k}"), symbols: q });
            rs.push(SeqRecord { id: format!("r{k}"), symbols: r });
        }
        let cfg = EngineConfig::default().with_max_lengths(64, 64);
        let rows = parse_rows(&run_batch(&spec, &cfg, &qs, &rs).unwrap()).unwrap();
        for (row, (q, r)) in rows.iter().zip(qs.iter().zip(&rs)) {
            let Ok(res) = dphls_core::align(&spec, &cfg, &q.symbols, &r.symbols) else {
                continue;
            };
            let mut moves: Vec<TracebackMove> = parse_cigar(&row.cigar).unwrap().into_iter().rev().collect();
            moves.push(TracebackMove::End);
            assert_eq!(moves, res.moves, "{} {}", spec.name, row.id_q);
        }
    }
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = testkit::rng(0xdede);
    let recs = |rng: &mut _, p: &str| -> Vec<Record> {
        (0..50).map(|k| Record::new(format!("{p}{k}"), testkit::random_dna(rng, 1 + k * 3))).collect()
    };
    let q = write(dir.path(), "q.fa", &write_fasta(&recs(&mut rng, "q"), 70));
    let r = write(dir.path(), "r.fa", &write_fasta(&recs(&mut rng, "r"), 70));
    let run = |nk: &str, out: &str| {
        let out = dir.path().join(out).display().to_string();
        let args = ["batch", "--kernel", "4", "--query", &q, "--reference", &r, "--nk", nk, "--out", &out];
        assert_eq!(dphls(&args).0, 0);
        std::fs::read(&out).unwrap()
    };
    let a = run("1", "a.tsv");
    assert_eq!(a, run("1", "b.tsv"));
    assert_eq!(a, run("4", "c.tsv"));
}
