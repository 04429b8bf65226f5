mod common;

use common::{any_graph, floyd};
use medico::format::{graph6_stream, parse_edgelist, parse_graph6, to_edgelist, to_graph6};
use medico::graph::Bipartition;
use medico::{parse_graph, DistanceMatrix, Format, Graph, VertexSet};
use proptest::prelude::*;

proptest! {
    #[test]
    fn graph6_round_trip(g in any_graph(40)) {
        let text = to_graph6(&g).unwrap();
        prop_assert_eq!(parse_graph6(text.as_bytes()).unwrap(), g);
    }

    #[test]
    fn edgelist_round_trip(g in any_graph(20)) {
        let text = to_edgelist(&g);
        prop_assert_eq!(parse_edgelist(&text).unwrap(), g.clone());
        prop_assert_eq!(parse_graph(text.as_bytes(), Format::EdgeList).unwrap(), g);
    }

    #[test]
    fn distances_match_floyd(g in any_graph(12)) {
        let d = DistanceMatrix::new(&g);
        let f = floyd(&g);
        for u in g.vertices() {
            for v in g.vertices() {
                prop_assert_eq!(d.get(u, v), f[u][v]);
            }
        }
    }

    #[test]
    fn components_partition_vertices(g in any_graph(14)) {
        let comps = g.components();
        let mut seen = VertexSet::new(g.order());
        for c in &comps {
            prop_assert!(seen.is_disjoint(c));
            prop_assert!(g.induces_connected(c));
            seen.union_with(c);
        }
        prop_assert_eq!(seen.len(), g.order());
        prop_assert_eq!(g.is_connected(), comps.len() <= 1);
    }

    #[test]
    fn bipartition_is_certified(g in any_graph(14)) {
        match g.bipartition() {
            Bipartition::Coloring(side) => {
                prop_assert!(g.is_bipartite());
                for (a, b) in g.edges() {
                    prop_assert_ne!(side[a], side[b]);
                }
            }
            Bipartition::OddCycle(walk) => {
                prop_assert!(!g.is_bipartite());
                prop_assert_eq!(walk.len() % 2, 1);
                for i in 0..walk.len() {
                    prop_assert!(g.has_edge(walk[i], walk[(i + 1) % walk.len()]));
                }
            }
        }
    }

    // Across an edge distances from any vertex differ by at most one, and a
    // connected graph is bipartite exactly when they never tie.
    #[test]
    fn edge_distance_difference(g in any_graph(12)) {
        let d = DistanceMatrix::new(&g);
        let mut tie = false;
        for x in g.vertices() {
            for (a, b) in g.edges() {
                if let (Some(p), Some(q)) = (d.get(x, a), d.get(x, b)) {
                    prop_assert!(p.abs_diff(q) <= 1);
                    tie |= p == q;
                }
            }
        }
        if g.is_connected() {
            prop_assert_eq!(g.is_bipartite(), !tie);
        }
    }

    #[test]
    fn induced_subgraph_keeps_adjacency(g in any_graph(12), mask in any::<u16>()) {
        let keep = VertexSet::from_vertices(g.order(), g.vertices().filter(|&v| mask >> v & 1 == 1));
        let (h, map) = g.induced_subgraph(&keep);
        prop_assert_eq!(map.clone(), keep.to_vec());
        for a in h.vertices() {
            for b in h.vertices() {
                prop_assert_eq!(h.has_edge(a, b), g.has_edge(map[a], map[b]));
            }
        }
    }
}

#[test]
fn graph6_known_strings() {
    let k23 = Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
    assert_eq!(to_graph6(&k23).unwrap(), "D]o");
    assert_eq!(parse_graph6(b"@").unwrap().order(), 1);
    assert_eq!(parse_graph6(b"?").unwrap().order(), 0);
    assert!(parse_graph6(b"D?").is_err());
    assert!(to_graph6(&Graph::empty(63)).is_err());
}

#[test]
fn edgelist_errors() {
    assert!(parse_edgelist("0 0\n").is_err());
    assert!(parse_edgelist("0 x\n").is_err());
    let g = parse_edgelist("# comment\nn=4\n0 1\n\n2 3\n").unwrap();
    assert_eq!((g.order(), g.size()), (4, 2));
}

#[test]
fn stream_reports_line_numbers() {
    let items: Vec<_> = graph6_stream(&b"A_\n\n# note\n!!bad\nBw\n"[..]).collect();
    assert_eq!(items[0].as_ref().unwrap().order(), 2);
    assert_eq!(items[1].as_ref().unwrap_err().line, 4);
}
