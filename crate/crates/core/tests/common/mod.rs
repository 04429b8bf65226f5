#![allow(dead_code)]

use medico::generators::{generate, random_bipartite_connected, FamilySpec, RESAMPLE_CAP};
use medico::rng::SplitMix64;
use medico::Graph;
use proptest::prelude::*;

/// Any simple graph on `0..=max_n` vertices.
pub fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// Connected bipartite graph from the library generator, seeded by proptest.
pub fn bipartite_connected(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n, 0.15f64..0.85, any::<u64>()).prop_map(|(n, p, seed)| {
        random_bipartite_connected(n, p, &mut SplitMix64::new(seed), RESAMPLE_CAP).unwrap()
    })
}

pub fn family(spec: FamilySpec) -> Graph {
    generate(&spec, 0).unwrap()
}

/// All-pairs distances by Floyd-Warshall, `None` when unreachable.
pub fn floyd(g: &Graph) -> Vec<Vec<Option<u32>>> {
    let n = g.order();
    let mut d = vec![vec![None; n]; n];
    for (u, row) in d.iter_mut().enumerate() {
        row[u] = Some(0);
        for v in g.neighbors(u) {
            row[v] = Some(1);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}
