//! Counterexample searches over random connected bipartite graphs.
//!
//! cargo run --release --example open_problems [count]

use medico::generators::{random_corpus, FamilySpec};
use medico::verify::{search, Problem, SearchOptions};

fn main() {
    let count: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2000);
    let opts = SearchOptions::default();
    for problem in [Problem::P1, Problem::P2, Problem::P3] {
        for n in [7, 9] {
            let spec = FamilySpec::RandomBipartiteConnected { n, p: 0.35 };
            let mut shown = 0;
            let summary = search(problem, random_corpus(&spec, count, n as u64), &opts, |h| {
                if shown < 2 {
                    println!("  {}", serde_json::to_string(h).unwrap());
                    shown += 1;
                }
            })
            .unwrap();
            println!("{problem} n={n}: {summary}");
        }
    }
}
