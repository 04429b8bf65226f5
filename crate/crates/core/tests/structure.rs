mod common;

use common::{any_graph, bipartite_connected, family};
use medico::conditions::{self, Condition};
use medico::generators::{generate, random_corpus, standard_families, FamilySpec};
use medico::patterns::{self, classify_profile, delta_profile, DeltaForm, Pattern};
use medico::verify::oracle;
use medico::{Graph, Metric, VertexSet};
use proptest::prelude::*;

/// Vertex sets of size >= 3 that induce a cycle, by checking every subset.
fn induced_cycle_sets(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        if mask.count_ones() < 3 {
            continue;
        }
        let set = VertexSet::from_vertices(n, (0..n).filter(|&v| mask >> v & 1 == 1));
        let (h, _) = g.induced_subgraph(&set);
        if h.is_connected() && h.vertices().all(|v| h.degree(v) == 2) {
            out.push(set.to_vec());
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn pattern_search_matches_exhaustive(g in any_graph(8)) {
        for p in [Pattern::C4, Pattern::K23, Pattern::Q3Minus, Pattern::C6] {
            let found = patterns::find_induced(&g, p);
            prop_assert_eq!(found.is_some(), oracle::has_induced(&g, &p.graph()));
            if let Some(e) = found {
                prop_assert!(e.is_induced_in(&g));
            }
        }
    }

    #[test]
    fn induced_cycles_match_subsets(g in any_graph(8)) {
        let m = Metric::new(g.clone());
        let mut got: Vec<Vec<usize>> = patterns::induced_cycles(&m, 8).unwrap().iter().map(|e| {
            let mut v = e.vertices.clone();
            v.sort_unstable();
            v
        }).collect();
        got.sort();
        let mut want = induced_cycle_sets(&g);
        want.sort();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn medico_vertices_satisfy_all_conditions(g in bipartite_connected(2, 10)) {
        let m = Metric::new(g.clone());
        for mu in &m.medico_set() {
            prop_assert!(conditions::check_c0(&m, mu).unwrap());
            prop_assert!(conditions::check_c1(&m, mu));
            prop_assert!(conditions::check_c2(&m, mu));
            prop_assert!(conditions::is_mu_meshed(&m, mu).unwrap());
        }
    }

    #[test]
    fn c1_characterizes_medico(g in any_graph(8)) {
        let m = Metric::new(g.clone());
        for mu in g.vertices() {
            let c1 = conditions::check_c1(&m, mu);
            prop_assert_eq!(c1, m.is_medico(mu));
            if let Some(w) = conditions::c1_witness(&m, mu) {
                prop_assert_eq!(w.condition, Condition::C1);
            }
        }
    }

    #[test]
    fn quartets_close_under_meshedness(g in bipartite_connected(3, 9)) {
        let m = Metric::new(g.clone());
        let meshed = conditions::is_meshed(&m).unwrap();
        let mut all_close = true;
        for w in g.vertices() {
            for q in conditions::enumerate_quartets(&m, w) {
                let d = m.distances();
                prop_assert!(g.has_edge(q.x, q.y) && g.has_edge(q.z, q.y) && !g.has_edge(q.x, q.z));
                prop_assert_eq!(d.get(w, q.x), Some(q.level));
                prop_assert_eq!(d.get(w, q.z), Some(q.level));
                match conditions::quadrangle(&m, &q) {
                    Some(c) => {
                        prop_assert!(g.has_edge(c, q.x) && g.has_edge(c, q.z));
                        prop_assert_eq!(d.get(w, c), Some(q.level - 1));
                    }
                    None => all_close = false,
                }
            }
        }
        prop_assert_eq!(meshed, all_close);
    }
}

#[test]
fn c6_delta_profiles() {
    let c6 = family(FamilySpec::Cycle(6));
    let m = Metric::new(c6.clone());
    let cycle = patterns::find_induced(&c6, Pattern::C6).unwrap();
    for mu in c6.vertices() {
        let p = delta_profile(&m, &cycle, mu).unwrap();
        assert_eq!(classify_profile(&p), Some((DeltaForm::D4, 1)));
    }
}

#[test]
fn q3_minus_cycle_is_seen_as_d1_from_the_outside() {
    let g = family(FamilySpec::HypercubeMinus(3));
    let m = Metric::new(g.clone());
    let cycle = patterns::find_induced(&g, Pattern::C6).unwrap();
    let outside = g.vertices().find(|v| !cycle.vertices.contains(v)).unwrap();
    let (form, _) = classify_profile(&delta_profile(&m, &cycle, outside).unwrap()).unwrap();
    assert_eq!(form, DeltaForm::D1);
}

#[test]
fn k23_is_the_c2_obstruction() {
    let m = Metric::new(family(FamilySpec::CompleteBipartite(2, 3)));
    assert!(conditions::check_c2(&m, 0));
    assert!(!conditions::check_c2(&m, 2));
    assert!(conditions::check_c0(&m, 2).unwrap());
    assert!(conditions::is_modular(&m));
    assert!(conditions::charmodmed_check(&m, 0).unwrap());
}

#[test]
fn every_family_generates_and_reparses() {
    for spec in standard_families() {
        let g = generate(&spec, 0).unwrap();
        let text = spec.to_string();
        let mut words = text.split(' ');
        let name = words.next().unwrap();
        let params: Vec<&str> = words.collect();
        let again = FamilySpec::parse(name, &params).unwrap();
        assert_eq!(generate(&again, 0).unwrap(), g, "{spec}");
    }
}

#[test]
fn random_corpus_is_reproducible() {
    let spec = FamilySpec::RandomBipartiteConnected { n: 9, p: 0.3 };
    let a: Vec<Graph> = random_corpus(&spec, 50, 7).map(Result::unwrap).collect();
    let b: Vec<Graph> = random_corpus(&spec, 50, 7).map(Result::unwrap).collect();
    assert_eq!(a, b);
    assert!(a.iter().all(|g| g.order() == 9 && g.is_connected() && g.is_bipartite()));
    let c: Vec<Graph> = random_corpus(&spec, 50, 8).map(Result::unwrap).collect();
    assert_ne!(a, c);
    for g in random_corpus(&FamilySpec::RandomTree(30), 20, 1).map(Result::unwrap) {
        assert!(g.is_connected() && g.size() == 29);
        assert!(Metric::new(g).is_median_graph());
    }
}
