//! Geodesic intervals, medians, medico vertices and convexity operators.
//!
//! A [`Metric`] owns a graph together with its distance matrix and, for
//! graphs up to [`DEFAULT_TABLE_THRESHOLD`] vertices, a precomputed
//! [`IntervalTable`]. Above the threshold intervals are rebuilt per source
//! row on demand; results are identical on both paths.

use std::borrow::Cow;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bitset::{intersection3_len_capped, VertexSet};
use crate::distance::DistanceMatrix;
use crate::graph::Graph;

/// Orders above this use on-demand interval rows instead of a full table.
pub const DEFAULT_TABLE_THRESHOLD: usize = 1024;

/// Per-vertex loops switch to rayon at this order.
const PARALLEL_ORDER: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricError {
    #[error("vertices {0} and {1} lie in different components")]
    DifferentComponents(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
}

/// `I(u, v)` for every ordered pair, stored row by row.
#[derive(Clone)]
pub struct IntervalTable {
    n: usize,
    cells: Vec<VertexSet>,
}

impl IntervalTable {
    pub fn new(g: &Graph, dist: &DistanceMatrix) -> Self {
        let n = g.order();
        let rows: Vec<Vec<VertexSet>> = if n >= PARALLEL_ORDER {
            (0..n).into_par_iter().map(|u| interval_row(g, dist, u)).collect()
        } else {
            (0..n).map(|u| interval_row(g, dist, u)).collect()
        };
        IntervalTable {
            n,
            cells: rows.into_iter().flatten().collect(),
        }
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> &VertexSet {
        &self.cells[u * self.n + v]
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[VertexSet] {
        &self.cells[u * self.n..(u + 1) * self.n]
    }
}

/// All intervals `I(u, ·)` at once: processing vertices by increasing
/// distance from `u`, `I(u,v)` is `{v}` plus the intervals of the
/// neighbours of `v` one step closer to `u`. Unreachable targets get `∅`.
pub fn interval_row(g: &Graph, dist: &DistanceMatrix, u: usize) -> Vec<VertexSet> {
    let n = g.order();
    let mut row = vec![VertexSet::new(n); n];
    let mut order: Vec<usize> = (0..n).filter(|&v| dist.reachable(u, v)).collect();
    order.sort_by_key(|&v| dist.get(u, v));
    for v in order {
        let dv = dist.get(u, v).unwrap();
        let mut acc = VertexSet::singleton(n, v);
        if dv > 0 {
            for w in g.neighbors(v) {
                if dist.get(u, w) == Some(dv - 1) {
                    acc.union_with(&row[w]);
                }
            }
        }
        row[v] = acc;
    }
    row
}

/// Outcome of a median query for `(u, v, w)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MedianResult {
    pub triple: (usize, usize, usize),
    pub median_set: VertexSet,
    pub unique: bool,
    pub median: Option<usize>,
}

/// Why a vertex fails to be medico.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum MedicoWitness {
    Disconnected,
    /// `I(μ, v, w)` is empty or has more than one vertex.
    Triple { v: usize, w: usize, median_set: VertexSet },
}

/// Subgraph given by a vertex set and an explicit edge list (`u < v`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Subgraph {
    pub vertices: VertexSet,
    pub edges: Vec<(usize, usize)>,
}

impl Subgraph {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Connectivity using only the listed edges.
    pub fn is_connected(&self) -> bool {
        let verts = self.vertices.to_vec();
        if verts.len() <= 1 {
            return true;
        }
        let n = self.vertices.universe();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut components = verts.len();
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                components -= 1;
            }
        }
        components == 1
    }
}

/// Witness that some interval is not convex: `x, y ∈ I(u,v)` but
/// `outside ∈ I(x,y) ∖ I(u,v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MonotoneWitness {
    pub u: usize,
    pub v: usize,
    pub x: usize,
    pub y: usize,
    pub outside: usize,
}

/// A graph with its distances and intervals.
#[derive(Clone)]
pub struct Metric {
    graph: Graph,
    dist: DistanceMatrix,
    table: Option<IntervalTable>,
    connected: bool,
    bipartite: bool,
}

impl Metric {
    pub fn new(graph: Graph) -> Self {
        Self::with_threshold(graph, DEFAULT_TABLE_THRESHOLD)
    }

    /// Precomputes the interval table only when `graph.order() <= threshold`.
    pub fn with_threshold(graph: Graph, threshold: usize) -> Self {
        let dist = DistanceMatrix::new(&graph);
        let table = (graph.order() <= threshold).then(|| IntervalTable::new(&graph, &dist));
        let connected = graph.is_connected();
        let bipartite = graph.is_bipartite();
        Metric {
            graph,
            dist,
            table,
            connected,
            bipartite,
        }
    }

    #[inline]
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    #[inline]
    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartite
    }

    pub fn has_interval_table(&self) -> bool {
        self.table.is_some()
    }

    /// The v-convex subgraph on a given vertex set is unique (and induced)
    /// exactly when the graph is bipartite; otherwise closures returned by
    /// [`Metric::v_convex_closure`] are the induced representative.
    pub fn v_convex_subgraph_unique(&self) -> bool {
        self.bipartite
    }

    fn check_vertex(&self, v: usize) -> Result<(), MetricError> {
        if v < self.order() {
            Ok(())
        } else {
            Err(MetricError::VertexOutOfRange(v))
        }
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(), MetricError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if self.dist.reachable(u, v) {
            Ok(())
        } else {
            Err(MetricError::DifferentComponents(u, v))
        }
    }

    /// `I(u, v)`, empty when `u` and `v` are in different components.
    #[inline]
    pub(crate) fn iv(&self, u: usize, v: usize) -> Cow<'_, VertexSet> {
        match &self.table {
            Some(t) => Cow::Borrowed(t.get(u, v)),
            None => {
                let mut s = VertexSet::new(self.order());
                if self.dist.reachable(u, v) {
                    for x in 0..self.order() {
                        if self.dist.between(u, x, v) {
                            s.insert(x);
                        }
                    }
                }
                Cow::Owned(s)
            }
        }
    }

    /// The row `I(u, ·)`.
    pub(crate) fn row(&self, u: usize) -> Cow<'_, [VertexSet]> {
        match &self.table {
            Some(t) => Cow::Borrowed(t.row(u)),
            None => Cow::Owned(interval_row(&self.graph, &self.dist, u)),
        }
    }

    pub fn interval(&self, u: usize, v: usize) -> Result<VertexSet, MetricError> {
        self.check_pair(u, v)?;
        Ok(self.iv(u, v).into_owned())
    }

    /// `I(u,v,w) = I(u,v) ∩ I(u,w) ∩ I(v,w)`; empty across components.
    pub(crate) fn triple_set(&self, u: usize, v: usize, w: usize) -> VertexSet {
        let mut out = VertexSet::new(self.order());
        out.assign_intersection3(&self.iv(u, v), &self.iv(u, w), &self.iv(v, w));
        out
    }

    pub fn median_set(&self, u: usize, v: usize, w: usize) -> Result<MedianResult, MetricError> {
        self.check_pair(u, v)?;
        self.check_pair(u, w)?;
        let median_set = self.triple_set(u, v, w);
        let unique = median_set.len() == 1;
        Ok(MedianResult {
            triple: (u, v, w),
            median: if unique { median_set.first() } else { None },
            unique,
            median_set,
        })
    }

    /// First failing pair `(v, w)`, `v < w`, both distinct from `mu`, in
    /// lexicographic order; `None` when `mu` is medico.
    pub fn medico_witness(&self, mu: usize) -> Option<MedicoWitness> {
        assert!(mu < self.order(), "vertex {mu} out of range");
        if !self.connected {
            return Some(MedicoWitness::Disconnected);
        }
        let n = self.order();
        let rmu = self.row(mu);
        for v in (0..n).filter(|&v| v != mu) {
            let rv = self.row(v);
            for w in (v + 1..n).filter(|&w| w != mu) {
                if intersection3_len_capped(&rmu[v], &rmu[w], &rv[w], 1) != 1 {
                    let mut median_set = VertexSet::new(n);
                    median_set.assign_intersection3(&rmu[v], &rmu[w], &rv[w]);
                    return Some(MedicoWitness::Triple { v, w, median_set });
                }
            }
        }
        None
    }

    pub fn is_medico(&self, mu: usize) -> bool {
        self.medico_witness(mu).is_none()
    }

    /// Medico vertices; computed concurrently for larger graphs.
    pub fn medico_set(&self) -> VertexSet {
        let n = self.order();
        let flags: Vec<bool> = if n >= PARALLEL_ORDER {
            (0..n).into_par_iter().map(|mu| self.is_medico(mu)).collect()
        } else {
            (0..n).map(|mu| self.is_medico(mu)).collect()
        };
        VertexSet::from_vertices(n, flags.iter().enumerate().filter(|(_, &f)| f).map(|(v, _)| v))
    }

    /// Number of medico vertices: the largest `k` for which the graph is a
    /// k-median graph, or 0 if it is none.
    pub fn k_median_number(&self) -> usize {
        self.medico_set().len()
    }

    pub fn is_median_graph(&self) -> bool {
        let n = self.order();
        n >= 1 && self.k_median_number() == n
    }

    /// Exactly `k` medico vertices.
    pub fn is_proper_k_median(&self, k: usize) -> bool {
        k >= 1 && self.k_median_number() == k
    }

    /// Whether `{a, b}` is an edge on some shortest `(u, v)`-path.
    pub(crate) fn geodesic_edge(&self, u: usize, v: usize, a: usize, b: usize) -> bool {
        let d = &self.dist;
        let Some(total) = d.get(u, v) else { return false };
        let on = |x: usize, y: usize| match (d.get(u, x), d.get(y, v)) {
            (Some(p), Some(q)) => p + 1 + q == total,
            _ => false,
        };
        self.graph.has_edge(a, b) && (on(a, b) || on(b, a))
    }

    fn geodesic_edges_within(&self, vertices: &VertexSet, pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for a in vertices {
            for b in self.graph.neighbors(a).iter().filter(|&b| b > a && vertices.contains(b)) {
                if pairs.iter().all(|&(u, v)| self.geodesic_edge(u, v, a, b)) {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    /// `G(u, v)`: the vertices and edges lying on shortest `(u, v)`-paths.
    pub fn interval_subgraph(&self, u: usize, v: usize) -> Result<Subgraph, MetricError> {
        self.check_pair(u, v)?;
        let vertices = self.iv(u, v).into_owned();
        let edges = self.geodesic_edges_within(&vertices, &[(u, v)]);
        Ok(Subgraph { vertices, edges })
    }

    /// `G(u,v,w) = G(u,v) ∩ G(u,w) ∩ G(v,w)`.
    pub fn triple_graph(&self, u: usize, v: usize, w: usize) -> Result<Subgraph, MetricError> {
        self.check_pair(u, v)?;
        self.check_pair(u, w)?;
        Ok(self.triple_graph_unchecked(u, v, w))
    }

    fn triple_graph_unchecked(&self, u: usize, v: usize, w: usize) -> Subgraph {
        let vertices = self.triple_set(u, v, w);
        let edges = if vertices.len() > 1 {
            self.geodesic_edges_within(&vertices, &[(u, v), (u, w), (v, w)])
        } else {
            Vec::new()
        };
        Subgraph { vertices, edges }
    }

    /// First triple `u <= v <= w` whose `G(u,v,w)` is empty or disconnected.
    pub fn imrich_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.order();
        for u in 0..n {
            for v in u..n {
                for w in v..n {
                    let t = self.triple_graph_unchecked(u, v, w);
                    if t.is_empty() || !t.is_connected() {
                        return Some((u, v, w));
                    }
                }
            }
        }
        None
    }

    /// `G(u,v,w)` is non-empty and connected for every triple. The empty
    /// graph is reported as failing, matching the convention that median
    /// graphs have at least one vertex.
    pub fn imrich_condition(&self) -> bool {
        self.order() >= 1 && self.imrich_witness().is_none()
    }

    fn check_same_component(&self, s: &VertexSet, anchor: Option<usize>) -> Result<(), MetricError> {
        let Some(first) = anchor.or_else(|| s.first()) else {
            return Ok(());
        };
        self.check_vertex(first)?;
        for x in s {
            self.check_pair(first, x)?;
        }
        Ok(())
    }

    /// Smallest convex superset of `s`.
    pub fn convex_hull(&self, s: &VertexSet) -> Result<VertexSet, MetricError> {
        self.check_same_component(s, None)?;
        let mut hull = s.clone();
        let mut pending: Vec<usize> = s.to_vec();
        while let Some(x) = pending.pop() {
            let mut grown = hull.clone();
            for y in &hull {
                grown.union_with(&self.iv(x, y));
            }
            let fresh = grown.difference(&hull);
            pending.extend(fresh.iter());
            hull = grown;
        }
        Ok(hull)
    }

    pub fn is_convex(&self, s: &VertexSet) -> Result<bool, MetricError> {
        Ok(self.convex_hull(s)? == *s)
    }

    /// Smallest `T ⊇ s ∪ {v}` with `I(v, x) ⊆ T` for all `x ∈ T`.
    pub fn v_convex_closure(&self, v: usize, s: &VertexSet) -> Result<VertexSet, MetricError> {
        self.check_same_component(s, Some(v))?;
        let mut closure = s.clone();
        closure.insert(v);
        let mut pending = closure.to_vec();
        while let Some(x) = pending.pop() {
            let iv = self.iv(v, x);
            if !iv.is_subset(&closure) {
                let fresh = iv.difference(&closure);
                closure.union_with(&fresh);
                pending.extend(fresh.iter());
            }
        }
        Ok(closure)
    }

    pub fn is_v_convex(&self, v: usize, s: &VertexSet) -> Result<bool, MetricError> {
        Ok(s.contains(v) && self.v_convex_closure(v, s)? == *s)
    }

    /// First non-convex interval in lexicographic order of `(u, v, x, y)`.
    pub fn interval_monotone_witness(&self) -> Result<Option<MonotoneWitness>, MetricError> {
        if !self.connected {
            return Err(MetricError::Disconnected);
        }
        let n = self.order();
        for u in 0..n {
            let ru = self.row(u);
            for v in u + 1..n {
                let s = &ru[v];
                for x in s {
                    let rx = self.row(x);
                    for y in s.iter().filter(|&y| y > x) {
                        let ixy = &rx[y];
                        if !ixy.is_subset(s) {
                            let outside = ixy.difference(s).first().unwrap();
                            return Ok(Some(MonotoneWitness { u, v, x, y, outside }));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_interval_monotone(&self) -> Result<bool, MetricError> {
        Ok(self.interval_monotone_witness()?.is_none())
    }

    /// Distances inside `G[set]` agree with distances in the whole graph.
    pub fn is_isometric(&self, set: &VertexSet) -> bool {
        let (h, map) = self.graph.induced_subgraph(set);
        let dh = DistanceMatrix::new(&h);
        (0..map.len()).all(|i| (i + 1..map.len()).all(|j| dh.get(i, j) == self.dist.get(map[i], map[j])))
    }
}

impl std::fmt::Debug for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Metric")
            .field("graph", &self.graph)
            .field("interval_table", &self.table.is_some())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k23() -> Metric {
        // small side {0, 1}, large side {2, 3, 4}
        Metric::new(Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap())
    }

    fn ring(n: usize) -> Metric {
        Metric::new(Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap())
    }

    fn cube() -> Metric {
        Metric::new(
            Graph::from_edges(8, (0..8usize).flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b)))).filter(|(a, b)| a < b))
                .unwrap(),
        )
    }

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied())
    }

    #[test]
    fn intervals() {
        assert_eq!(k23().interval(2, 3).unwrap().to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(k23().interval(4, 4).unwrap().to_vec(), vec![4]);
        assert_eq!(cube().interval(0, 7).unwrap().len(), 8);
    }

    #[test]
    fn interval_across_components_is_an_error() {
        let m = Metric::new(Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap());
        assert_eq!(m.interval(0, 2), Err(MetricError::DifferentComponents(0, 2)));
        assert_eq!(m.median_set(0, 1, 3).unwrap_err(), MetricError::DifferentComponents(0, 3));
        assert!(matches!(m.interval(0, 9), Err(MetricError::VertexOutOfRange(9))));
    }

    #[test]
    fn medians() {
        let r = ring(6).median_set(0, 2, 4).unwrap();
        assert!(r.median_set.is_empty() && !r.unique && r.median.is_none());
        let r = k23().median_set(2, 3, 4).unwrap();
        assert_eq!(r.median_set.to_vec(), vec![0, 1]);
        assert!(!r.unique);
        let r = cube().median_set(0b011, 0b101, 0b110).unwrap();
        assert_eq!(r.median, Some(0b111));
    }

    #[test]
    fn medico_vertices_of_k23() {
        let m = k23();
        assert!(m.is_medico(0) && m.is_medico(1));
        assert_eq!(
            m.medico_witness(2),
            Some(MedicoWitness::Triple {
                v: 3,
                w: 4,
                median_set: set(5, &[0, 1])
            })
        );
        assert_eq!(m.k_median_number(), 2);
        assert!(m.is_proper_k_median(2) && !m.is_median_graph());
    }

    #[test]
    fn small_conventions() {
        let k1 = Metric::new(Graph::empty(1));
        assert!(k1.is_medico(0) && k1.is_median_graph());
        let empty = Metric::new(Graph::empty(0));
        assert_eq!(empty.k_median_number(), 0);
        assert!(!empty.is_median_graph() && !empty.imrich_condition());
        let two = Metric::new(Graph::empty(2));
        assert_eq!(two.medico_witness(0), Some(MedicoWitness::Disconnected));
        assert_eq!(two.k_median_number(), 0);
    }

    #[test]
    fn k_values_of_small_families() {
        assert_eq!(ring(6).k_median_number(), 0);
        assert_eq!(ring(4).k_median_number(), 4);
        assert_eq!(cube().k_median_number(), 8);
    }

    #[test]
    fn interval_subgraphs() {
        let p3 = Metric::new(Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap());
        assert_eq!(p3.interval_subgraph(0, 2).unwrap().edges, vec![(0, 1), (1, 2)]);
        assert_eq!(ring(4).interval_subgraph(0, 2).unwrap().edges.len(), 4);
        // The edge {1,2} of a triangle-free... C4: edge (0,1) is not on a shortest 0-0 path.
        assert!(ring(4).interval_subgraph(1, 1).unwrap().edges.is_empty());
    }

    #[test]
    fn triple_graphs_and_imrich() {
        assert!(ring(6).triple_graph(0, 2, 4).unwrap().is_empty());
        assert!(!ring(6).imrich_condition());
        assert!(cube().imrich_condition());
        let t = cube().triple_graph(1, 2, 4).unwrap();
        assert_eq!(t.vertices.to_vec(), vec![0]);
    }

    #[test]
    fn hulls_and_closures() {
        let c = cube();
        assert_eq!(c.convex_hull(&set(8, &[0, 7])).unwrap().len(), 8);
        assert_eq!(c.convex_hull(&set(8, &[0, 1])).unwrap().to_vec(), vec![0, 1]);
        assert_eq!(ring(6).convex_hull(&set(6, &[0, 3])).unwrap().len(), 6);
        assert!(c.convex_hull(&VertexSet::new(8)).unwrap().is_empty());
        let k = k23();
        assert_eq!(k.v_convex_closure(2, &set(5, &[2, 3])).unwrap().to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(k.v_convex_closure(2, &set(5, &[2])).unwrap().to_vec(), vec![2]);
        assert!(k.is_v_convex(2, &set(5, &[0, 1, 2, 3])).unwrap());
        assert!(!k.is_convex(&set(5, &[0, 1, 2, 3])).unwrap());
    }

    #[test]
    fn hull_across_components_is_an_error() {
        let m = Metric::new(Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap());
        assert!(m.convex_hull(&set(4, &[0, 3])).is_err());
        assert!(m.v_convex_closure(0, &set(4, &[2])).is_err());
    }

    #[test]
    fn interval_monotonicity() {
        let w = k23().interval_monotone_witness().unwrap().unwrap();
        assert_eq!((w.u, w.v), (2, 3));
        assert!(k23().interval(w.x, w.y).unwrap().contains(w.outside));
        assert!(!k23().interval(w.u, w.v).unwrap().contains(w.outside));
        assert!(cube().is_interval_monotone().unwrap());
        let m = Metric::new(Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap());
        assert_eq!(m.is_interval_monotone(), Err(MetricError::Disconnected));
    }

    #[test]
    fn on_demand_path_matches_table() {
        for m in [k23(), ring(6), cube()] {
            let lazy = Metric::with_threshold(m.graph().clone(), 0);
            assert!(!lazy.has_interval_table());
            for u in 0..m.order() {
                for v in 0..m.order() {
                    assert_eq!(m.interval(u, v), lazy.interval(u, v));
                }
            }
            assert_eq!(m.medico_set(), lazy.medico_set());
            assert_eq!(m.is_interval_monotone(), lazy.is_interval_monotone());
        }
    }

    #[test]
    fn isometry() {
        let c = ring(6);
        assert!(!c.is_isometric(&set(6, &[0, 1, 2, 3, 4])));
        assert!(c.is_isometric(&set(6, &[0, 1, 2, 3])));
    }
}
