//! Runs every cross-check of the characterizations on a handful of graphs.
//!
//! cargo run --example theorem_suite

use medico::generators::{generate, FamilySpec};
use medico::verify::{run_theorem_suite, SuiteOptions, TheoremId};

fn main() {
    let opts = SuiteOptions::default();
    for spec in [FamilySpec::HypercubeMinus(3), FamilySpec::CompleteBipartite(2, 3), FamilySpec::Grid(3, 4)] {
        println!("== {spec}");
        for check in run_theorem_suite(&generate(&spec, 0).unwrap(), TheoremId::ALL, &opts) {
            println!("{check}");
        }
    }
}
