//! Convex hulls, v-convex closures and interval monotonicity.
//!
//! cargo run --example convexity

use medico::generators::{generate, FamilySpec};
use medico::{Metric, VertexSet};

fn main() {
    let g = generate(&FamilySpec::Grid(3, 3), 0).unwrap();
    let m = Metric::new(g);
    let corners = VertexSet::from_vertices(9, [0, 4]);
    println!("grid 3x3: hull of {{0,4}} = {:?}", m.convex_hull(&corners).unwrap().to_vec());
    println!("grid 3x3: 0-convex closure of {{5}} = {:?}", m.v_convex_closure(0, &VertexSet::singleton(9, 5)).unwrap().to_vec());
    println!("grid 3x3 interval monotone: {}", m.is_interval_monotone().unwrap());

    let k23 = Metric::new(generate(&FamilySpec::CompleteBipartite(2, 3), 0).unwrap());
    let w = k23.interval_monotone_witness().unwrap().unwrap();
    println!(
        "K2,3: x={} y={} lie in I({},{}) = {:?} but I(x,y) also holds {}",
        w.x,
        w.y,
        w.u,
        w.v,
        k23.interval(w.u, w.v).unwrap().to_vec(),
        w.outside
    );

    // Intervals from a medico vertex are isometric subgraphs.
    let q3m = Metric::new(generate(&FamilySpec::HypercubeMinus(3), 0).unwrap());
    for mu in &q3m.medico_set() {
        let ok = q3m.graph().vertices().all(|v| q3m.is_isometric(&q3m.interval(mu, v).unwrap()));
        println!("Q3-: every I({mu}, v) isometric: {ok}");
    }
}
