//! Tallies k-median numbers over a seeded random corpus.
//!
//! cargo run --release --example corpus [n] [p] [count]

use std::collections::BTreeMap;

use medico::generators::{random_corpus, FamilySpec};
use medico::Metric;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n = args.first().and_then(|s| s.parse().ok()).unwrap_or(8);
    let p = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(0.35);
    let count = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1000);
    let spec = FamilySpec::RandomBipartiteConnected { n, p };
    let mut by_k: BTreeMap<usize, usize> = BTreeMap::new();
    for g in random_corpus(&spec, count, 1) {
        *by_k.entry(Metric::new(g.unwrap()).k_median_number()).or_default() += 1;
    }
    println!("{spec}, {count} graphs");
    for (k, c) in by_k {
        println!("  k={k:<3} {c}");
    }
}
