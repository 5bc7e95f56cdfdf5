//! Writes the long-read tiling fixture: seeded 10 kb reference/query pairs
//! with up to 5% edits, plus their full-matrix global affine scores.
//!
//! cargo run --release -p dphls-hostcli --example gen_tiling_fixture

use std::path::Path;

use dphls_core::oracle::closed_form::gotoh;
use dphls_hostcli::fasta::{write_fasta, Record};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PAIRS: usize = 20;
const LEN: usize = 10_000;
const SEED: u64 = 0x7113_0010;
const BASES: &[u8; 4] = b"ACGT";

fn mutate(rng: &mut ChaCha8Rng, src: &[u8]) -> Vec<u8> {
    let edits = rng.gen_range(0..=src.len() / 20);
    let mut out = src.to_vec();
    for _ in 0..edits {
        let pos = rng.gen_range(0..out.len());
        match rng.gen_range(0..3) {
            0 => out[pos] = BASES[rng.gen_range(0..4)],
            1 => out.insert(pos, BASES[rng.gen_range(0..4)]),
            _ => {
                out.remove(pos);
            }
        }
    }
    out
}

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    std::fs::create_dir_all(&dir).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut qs, mut rs, mut scores) = (Vec::new(), Vec::new(), Vec::new());
    for k in 0..PAIRS {
        let r: Vec<u8> = (0..LEN).map(|_| BASES[rng.gen_range(0..4)]).collect();
        let q = mutate(&mut rng, &r);
        let s = gotoh(&q, &r, 1, -1, -2, -1);
        eprintln!("pair {k}: {} x {} -> {s}", q.len(), r.len());
        qs.push(Record::new(format!("q{k}"), q));
        rs.push(Record::new(format!("r{k}"), r));
        scores.push(s);
    }
    std::fs::write(dir.join("tiling_query.fa"), write_fasta(&qs, 80)).unwrap();
    std::fs::write(dir.join("tiling_reference.fa"), write_fasta(&rs, 80)).unwrap();
    let json = serde_json::json!({
        "match": 1, "mismatch": -1, "gap_open": -2, "gap_extend": -1,
        "scores": scores,
    });
    std::fs::write(dir.join("tiling_scores.json"), serde_json::to_string_pretty(&json).unwrap()).unwrap();
}
