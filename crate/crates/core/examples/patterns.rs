//! Induced pattern search, induced cycles and distance profiles of C6.
//!
//! cargo run --example patterns

use medico::generators::{generate, FamilySpec};
use medico::patterns::{self, classify_profile, delta_profile, Pattern};
use medico::Metric;

fn main() {
    let g = generate(&FamilySpec::HypercubeMinus(3), 0).unwrap();
    for p in [Pattern::K23, Pattern::K33, Pattern::Q3Minus, Pattern::C4, Pattern::C6] {
        match patterns::find_induced(&g, p) {
            Some(e) => println!("Q3-: {p} at {:?}", e.vertices),
            None => println!("Q3-: no induced {p}"),
        }
    }

    let q3 = generate(&FamilySpec::Hypercube(3), 0).unwrap();
    let all = patterns::find_all_induced(&q3, Pattern::C6, patterns::DEFAULT_CAP);
    println!("Q3 has {} induced C6 (complete={})", all.embeddings.len(), all.complete);

    let m = Metric::new(g.clone());
    let cycles = patterns::induced_cycles(&m, 8).unwrap();
    println!("Q3- has {} induced cycles of length <= 8", cycles.len());
    let c6 = patterns::find_induced(&g, Pattern::C6).unwrap();
    for mu in g.vertices() {
        let p = delta_profile(&m, &c6, mu).unwrap();
        println!("  from {mu}: profile {p:?} -> {:?}", classify_profile(&p));
    }

    // Edges that lie on a cycle but on no induced C4.
    let c6 = generate(&FamilySpec::Cycle(6), 0).unwrap();
    let lonely: Vec<_> = c6
        .edges()
        .filter(|&(a, b)| patterns::edge_on_cycle(&c6, a, b).unwrap() && patterns::edge_on_induced_c4(&c6, a, b).unwrap().is_none())
        .collect();
    println!("C6 cycle edges outside any induced C4: {lonely:?}");
}
