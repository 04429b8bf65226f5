//! Medico vertices and k-median numbers of a few small graphs.
//!
//! cargo run --example medico_vertices

use medico::generators::{generate, FamilySpec};
use medico::metric::MedicoWitness;
use medico::Metric;

fn main() {
    let specs = [
        FamilySpec::CompleteBipartite(2, 3),
        FamilySpec::HypercubeMinus(3),
        FamilySpec::CompleteBipartite(3, 3),
        FamilySpec::Cycle(6),
        FamilySpec::Grid(2, 3),
    ];
    for spec in specs {
        let m = Metric::new(generate(&spec, 0).unwrap());
        println!(
            "{spec:<24} k={:<2} medico={:?} median={}",
            m.k_median_number(),
            m.medico_set().to_vec(),
            m.is_median_graph()
        );
    }

    // Why vertex 2 of K2,3 is not medico: the triple has two medians.
    let m = Metric::new(generate(&FamilySpec::CompleteBipartite(2, 3), 0).unwrap());
    if let Some(MedicoWitness::Triple { v, w, median_set }) = m.medico_witness(2) {
        println!("I(2,{v},{w}) = {:?}", median_set.to_vec());
    }
    let r = m.median_set(2, 3, 4).unwrap();
    println!("median of (2,3,4): unique={} set={:?}", r.unique, r.median_set.to_vec());
}
