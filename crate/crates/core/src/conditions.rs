//! Per-vertex conditions C0, C1 and C2, distance-ℓ-static quartets,
//! meshedness and modularity.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bitset::{intersection3_len_capped, VertexSet};
use crate::metric::Metric;
use crate::patterns::{find_all_induced, Pattern, DEFAULT_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConditionError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not modular")]
    NotModular,
    #[error("induced K2,3 enumeration hit its cap; refusing to answer from partial data")]
    Incomplete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Condition {
    C0,
    C1,
    C2,
}

/// A pair `(v, w)` violating a condition with respect to `mu`.
///
/// For C0, `set` is `I(mu, w)`, which misses `v` although
/// `I(mu, v) ∩ I(v, w) = {v}`. For C1 and C2 it is `I(mu, v, w)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionWitness {
    pub condition: Condition,
    pub mu: usize,
    pub v: usize,
    pub w: usize,
    pub set: VertexSet,
}

/// First `(v, w)` in lexicographic order breaking C0 at `mu`.
pub fn c0_witness(m: &Metric, mu: usize) -> Result<Option<ConditionWitness>, ConditionError> {
    if !m.is_connected() {
        return Err(ConditionError::Disconnected);
    }
    let n = m.order();
    let rmu = m.row(mu);
    for v in 0..n {
        let rv = m.row(v);
        let base = &rmu[v];
        for w in 0..n {
            if base.intersection_len(&rv[w]) == 1 && !rmu[w].contains(v) {
                return Ok(Some(ConditionWitness {
                    condition: Condition::C0,
                    mu,
                    v,
                    w,
                    set: rmu[w].clone(),
                }));
            }
        }
    }
    Ok(None)
}

pub fn check_c0(m: &Metric, mu: usize) -> Result<bool, ConditionError> {
    Ok(c0_witness(m, mu)?.is_none())
}

/// Scans pairs `v <= w` (degenerate ones included, so a disconnected graph
/// fails C1 through an empty set) and returns the first set rejected by `bad`.
fn triple_scan(
    m: &Metric,
    mu: usize,
    condition: Condition,
    bad: impl Fn(&VertexSet, usize) -> bool,
) -> Option<ConditionWitness> {
    let n = m.order();
    let rmu = m.row(mu);
    let mut set = VertexSet::new(n);
    for v in 0..n {
        let rv = m.row(v);
        for w in v..n {
            let size = intersection3_len_capped(&rmu[v], &rmu[w], &rv[w], 1);
            if size == 1 && condition != Condition::C1 {
                continue;
            }
            set.assign_intersection3(&rmu[v], &rmu[w], &rv[w]);
            if bad(&set, size) {
                return Some(ConditionWitness { condition, mu, v, w, set });
            }
        }
    }
    None
}

/// First pair whose `G[I(mu, v, w)]` is empty or disconnected.
pub fn c1_witness(m: &Metric, mu: usize) -> Option<ConditionWitness> {
    let g = m.graph();
    triple_scan(m, mu, Condition::C1, |set, size| match size {
        0 => true,
        1 => false,
        _ => !g.induces_connected(set),
    })
}

pub fn check_c1(m: &Metric, mu: usize) -> bool {
    c1_witness(m, mu).is_none()
}

/// First pair whose `I(mu, v, w)` has several vertices but induces no edge.
pub fn c2_witness(m: &Metric, mu: usize) -> Option<ConditionWitness> {
    let g = m.graph();
    triple_scan(m, mu, Condition::C2, |set, size| size > 1 && !g.induces_edge(set))
}

pub fn check_c2(m: &Metric, mu: usize) -> bool {
    c2_witness(m, mu).is_none()
}

/// A distance-ℓ-static quartet `(x, z, y, w)`: `y` is a common neighbour
/// of the non-adjacent `x` and `z`, and `d(x,w) = d(z,w) = ℓ = d(y,w) - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Quartet {
    pub x: usize,
    pub z: usize,
    pub y: usize,
    pub w: usize,
    pub level: u32,
}

/// Induced paths `x - y - z` as `(y, x, z)` with `x < z`, ordered by centre.
pub fn induced_p3s(m: &Metric) -> Vec<(usize, usize, usize)> {
    let g = m.graph();
    let mut out = Vec::new();
    for y in g.vertices() {
        let nb = g.neighbors(y).to_vec();
        for (i, &x) in nb.iter().enumerate() {
            for &z in &nb[i + 1..] {
                if !g.has_edge(x, z) {
                    out.push((y, x, z));
                }
            }
        }
    }
    out
}

fn quartets_from(m: &Metric, p3s: &[(usize, usize, usize)], w: usize) -> Vec<Quartet> {
    let d = m.distances();
    p3s.iter()
        .filter_map(|&(y, x, z)| {
            let level = d.get(x, w)?;
            (d.get(z, w) == Some(level) && d.get(y, w) == Some(level + 1)).then_some(Quartet { x, z, y, w, level })
        })
        .collect()
}

/// All distance-ℓ-static quartets with reference vertex `w`, listed once
/// per unordered `{x, z}` (as `x < z`), ordered by centre `y`, then `(x, z)`.
pub fn enumerate_quartets(m: &Metric, w: usize) -> Vec<Quartet> {
    quartets_from(m, &induced_p3s(m), w)
}

/// Some common neighbour `u` of `x` and `z` with `d(u, w) = ℓ - 1`.
pub fn quadrangle(m: &Metric, q: &Quartet) -> Option<usize> {
    let g = m.graph();
    g.neighbors(q.x)
        .intersection(g.neighbors(q.z))
        .iter()
        .find(|&u| m.distances().get(u, q.w) == Some(q.level - 1))
}

fn meshed_failure(m: &Metric, p3s: &[(usize, usize, usize)], mu: usize) -> Option<Quartet> {
    quartets_from(m, p3s, mu).into_iter().find(|q| quadrangle(m, q).is_none())
}

/// First quartet with reference `mu` lacking the quadrangle property.
pub fn mu_meshed_witness(m: &Metric, mu: usize) -> Result<Option<Quartet>, ConditionError> {
    if !m.is_connected() {
        return Err(ConditionError::Disconnected);
    }
    Ok(meshed_failure(m, &induced_p3s(m), mu))
}

pub fn is_mu_meshed(m: &Metric, mu: usize) -> Result<bool, ConditionError> {
    Ok(mu_meshed_witness(m, mu)?.is_none())
}

pub fn meshed_witness(m: &Metric) -> Result<Option<Quartet>, ConditionError> {
    if !m.is_connected() {
        return Err(ConditionError::Disconnected);
    }
    let p3s = induced_p3s(m);
    Ok((0..m.order()).find_map(|w| meshed_failure(m, &p3s, w)))
}

pub fn is_meshed(m: &Metric) -> Result<bool, ConditionError> {
    Ok(meshed_witness(m)?.is_none())
}

/// First triple `u <= v <= w` with empty `I(u, v, w)`. Disconnected graphs
/// always have one; the empty graph has none.
pub fn modular_witness(m: &Metric) -> Option<(usize, usize, usize)> {
    let n = m.order();
    for u in 0..n {
        let ru = m.row(u);
        for v in u..n {
            let rv = m.row(v);
            for w in v..n {
                if intersection3_len_capped(&ru[v], &ru[w], &rv[w], 0) == 0 {
                    return Some((u, v, w));
                }
            }
        }
    }
    None
}

pub fn is_modular(m: &Metric) -> bool {
    modular_witness(m).is_none()
}

/// On modular graphs: for every induced K2,3 with degree-3 vertices `u, v`,
/// `u ∈ I(mu, v)` or `v ∈ I(mu, u)`.
pub fn charmodmed_check(m: &Metric, mu: usize) -> Result<bool, ConditionError> {
    charmodmed_check_capped(m, mu, DEFAULT_CAP)
}

pub fn charmodmed_check_capped(m: &Metric, mu: usize, cap: usize) -> Result<bool, ConditionError> {
    if !is_modular(m) {
        return Err(ConditionError::NotModular);
    }
    let found = find_all_induced(m.graph(), Pattern::K23, cap);
    if !found.complete {
        return Err(ConditionError::Incomplete);
    }
    Ok(found.embeddings.iter().all(|e| {
        let (u, v) = (e.vertices[0], e.vertices[1]);
        m.iv(mu, v).contains(u) || m.iv(mu, u).contains(v)
    }))
}

/// Condition outcomes for one vertex. `c0` and `mu_meshed` are `None` on
/// disconnected graphs, where they are undefined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub mu: usize,
    pub c0: Option<bool>,
    pub c1: bool,
    pub c2: bool,
    pub mu_meshed: Option<bool>,
    pub witnesses: Vec<ConditionWitness>,
}

pub fn condition_report(m: &Metric, mu: usize) -> ConditionReport {
    report_with(m, mu, &induced_p3s(m))
}

fn report_with(m: &Metric, mu: usize, p3s: &[(usize, usize, usize)]) -> ConditionReport {
    let c0 = c0_witness(m, mu).ok();
    let c1 = c1_witness(m, mu);
    let c2 = c2_witness(m, mu);
    let mu_meshed = m.is_connected().then(|| meshed_failure(m, p3s, mu).is_none());
    let report = ConditionReport {
        mu,
        c0: c0.as_ref().map(Option::is_none),
        c1: c1.is_none(),
        c2: c2.is_none(),
        mu_meshed,
        witnesses: Vec::new(),
    };
    ConditionReport {
        witnesses: [c0.flatten(), c1, c2].into_iter().flatten().collect(),
        ..report
    }
}

/// Reports for every vertex in ascending order.
pub fn condition_reports(m: &Metric) -> Vec<ConditionReport> {
    let p3s = induced_p3s(m);
    if m.order() >= 32 {
        (0..m.order()).into_par_iter().map(|mu| report_with(m, mu, &p3s)).collect()
    } else {
        (0..m.order()).map(|mu| report_with(m, mu, &p3s)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn ring(n: usize) -> Metric {
        Metric::new(Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap())
    }

    fn k23() -> Metric {
        Metric::new(Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap())
    }

    fn q3_minus() -> Metric {
        let edges = (0..7usize)
            .flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b))))
            .filter(|&(a, b)| a < b && b < 7);
        Metric::new(Graph::from_edges(7, edges).unwrap())
    }

    #[test]
    fn c0_on_six_cycle() {
        let w = c0_witness(&ring(6), 0).unwrap().unwrap();
        assert_eq!((w.v, w.w), (2, 4));
        assert_eq!(w.set.to_vec(), vec![0, 4, 5]);
        assert_eq!(check_c0(&Metric::new(Graph::empty(2)), 0), Err(ConditionError::Disconnected));
    }

    #[test]
    fn c1_and_c2() {
        let w = c1_witness(&ring(6), 0).unwrap();
        assert_eq!((w.v, w.w), (2, 4));
        assert!(w.set.is_empty());
        assert!((0..6).all(|mu| check_c2(&ring(6), mu)));
        let k = k23();
        assert!(check_c1(&k, 0) && check_c1(&k, 1));
        let w = c2_witness(&k, 2).unwrap();
        assert_eq!((w.v, w.w), (3, 4));
        assert_eq!(w.set.to_vec(), vec![0, 1]);
        let k1 = Metric::new(Graph::empty(1));
        assert!(check_c1(&k1, 0) && check_c2(&k1, 0));
        assert!(!check_c1(&Metric::new(Graph::empty(2)), 0));
    }

    #[test]
    fn quartets_on_cycles() {
        let c6 = ring(6);
        let qs = enumerate_quartets(&c6, 0);
        let q = Quartet { x: 2, z: 4, y: 3, w: 0, level: 2 };
        assert!(qs.contains(&q));
        assert_eq!(quadrangle(&c6, &q), None);
        assert!((0..6).all(|mu| !is_mu_meshed(&c6, mu).unwrap()));
        let c4 = ring(4);
        let q = Quartet { x: 1, z: 3, y: 2, w: 0, level: 1 };
        assert_eq!(enumerate_quartets(&c4, 0), vec![q]);
        assert_eq!(quadrangle(&c4, &q), Some(0));
        assert!(is_meshed(&c4).unwrap());
    }

    #[test]
    fn modularity() {
        assert_eq!(modular_witness(&q3_minus()), Some((3, 5, 6)));
        assert!(!is_meshed(&q3_minus()).unwrap());
        assert!(is_modular(&k23()));
        assert!(!is_modular(&ring(6)));
        assert!(!is_modular(&Metric::new(Graph::empty(2))));
        assert!(is_modular(&Metric::new(Graph::empty(0))));
    }

    #[test]
    fn charmodmed() {
        let k = k23();
        assert_eq!(charmodmed_check(&k, 0), Ok(true));
        assert_eq!(charmodmed_check(&k, 2), Ok(false));
        assert_eq!(charmodmed_check(&ring(6), 0), Err(ConditionError::NotModular));
        assert_eq!(charmodmed_check_capped(&k, 0, 0), Err(ConditionError::Incomplete));
    }

    #[test]
    fn reports() {
        let rs = condition_reports(&k23());
        assert_eq!(rs.len(), 5);
        assert!(rs[0].c0 == Some(true) && rs[0].c1 && rs[0].c2 && rs[0].witnesses.is_empty());
        assert!(!rs[2].c2 && !rs[2].witnesses.is_empty());
        let d = condition_report(&Metric::new(Graph::empty(2)), 0);
        assert_eq!((d.c0, d.mu_meshed), (None, None));
    }
}
