#![allow(dead_code)]

use dphls_core::{Score, SubMatrix, Symbol, SymbolKind};
use dphls_hostcli::fasta::Record;
use proptest::prelude::*;

pub fn fasta_records() -> impl Strategy<Value = (Vec<Record>, usize)> {
    let record = ("[A-Za-z0-9_.|:-]{1,16}", "[ACGTNacgtn]{0,300}")
        .prop_map(|(id, seq)| Record::new(id, seq.into_bytes()));
    (prop::collection::vec(record, 1..8), 0usize..120)
}

pub fn matrices() -> impl Strategy<Value = (SubMatrix, SymbolKind)> {
    let shape = prop_oneof![
        Just((SymbolKind::Nucleotide, 4usize)),
        Just((SymbolKind::AmbiguousNucleotide, 5)),
        Just((SymbolKind::AminoAcid, 20)),
    ];
    (shape, any::<bool>()).prop_flat_map(|((kind, n), float)| {
        let cell = if float {
            (-1.0e6f64..1.0e6).prop_map(Score::Float).boxed()
        } else {
            (-1000i32..1000).prop_map(Score::Int).boxed()
        };
        prop::collection::vec(cell, n * n)
            .prop_map(move |v| (SubMatrix::from_fn(n, |a, b| v[a * n + b]), kind))
    })
}

fn finite() -> impl Strategy<Value = f64> {
    prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO
}

pub fn signals() -> impl Strategy<Value = (Vec<Symbol>, SymbolKind)> {
    let complex = prop::collection::vec(
        (finite(), finite()).prop_map(|(re, im)| Symbol::ComplexSample { re, im }),
        1..100,
    )
    .prop_map(|v| (v, SymbolKind::ComplexSample));
    let ints = prop::collection::vec(any::<i32>().prop_map(Symbol::IntSample), 1..100)
        .prop_map(|v| (v, SymbolKind::IntSample));
    let profile = prop::collection::vec(
        prop::array::uniform5(0.0f64..1.0).prop_map(Symbol::ProfileColumn),
        1..100,
    )
    .prop_map(|v| (v, SymbolKind::ProfileColumn));
    prop_oneof![complex, ints, profile]
}
