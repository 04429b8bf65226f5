//! Per-vertex conditions C0, C1, C2 and mu-meshedness, plus graph-level
//! modularity and meshedness.
//!
//! cargo run --example conditions

use medico::conditions::{self, condition_reports};
use medico::generators::{generate, FamilySpec};
use medico::Metric;

fn main() {
    for spec in [FamilySpec::CompleteBipartite(2, 3), FamilySpec::Cycle(6), FamilySpec::HypercubeMinus(3)] {
        let m = Metric::new(generate(&spec, 0).unwrap());
        println!("{spec}: modular={} meshed={:?}", conditions::is_modular(&m), conditions::is_meshed(&m).ok());
        for r in condition_reports(&m) {
            println!("  v{}: c0={:?} c1={} c2={} mu_meshed={:?}", r.mu, r.c0, r.c1, r.c2, r.mu_meshed);
            if let Some(w) = r.witnesses.first() {
                println!("       first witness {w:?}");
            }
        }
        if let Some(t) = conditions::modular_witness(&m) {
            println!("  triple without a median: {t:?}");
        }
    }

    // Distance-static quartets of C6 seen from vertex 0, and whether each closes.
    let m = Metric::new(generate(&FamilySpec::Cycle(6), 0).unwrap());
    for q in conditions::enumerate_quartets(&m, 0) {
        println!("quartet {q:?} quadrangle={:?}", conditions::quadrangle(&m, &q));
    }
}
