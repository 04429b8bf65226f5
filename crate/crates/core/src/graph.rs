//! Immutable simple graphs over the dense vertex range `0..n`.

use std::collections::VecDeque;

use thiserror::Error;

use crate::bitset::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {{{0}, {1}}} references a vertex outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
}

/// Undirected simple graph; `adj[v]` holds the neighbours of `v`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

/// Result of a bipartiteness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    /// `side[v]` is `false` for one colour class and `true` for the other.
    Coloring(Vec<bool>),
    /// Closed walk of odd length, listed without repeating the start vertex.
    OddCycle(Vec<usize>),
}

impl Graph {
    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![VertexSet::new(n); n],
        }
    }

    /// Builds a graph from an edge list. Repeated edges collapse.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![VertexSet::new(n); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { adj })
    }

    /// Builds a graph from neighbourhood sets. Self-loops are rejected and
    /// one-sided rows are symmetrised.
    pub fn from_adjacency(adj: Vec<VertexSet>) -> Result<Self, GraphError> {
        let n = adj.len();
        for (v, row) in adj.iter().enumerate() {
            if row.universe() != n {
                return Err(GraphError::VertexOutOfRange(v, row.universe(), n));
            }
            if row.contains(v) {
                return Err(GraphError::SelfLoop(v));
            }
        }
        let mut sym = adj.clone();
        for (v, row) in adj.iter().enumerate() {
            for u in row {
                sym[u].insert(v);
            }
        }
        Ok(Graph { adj: sym })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].contains(v)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Induced subgraph on `keep`, relabelled to `0..|keep|` in ascending
    /// order. The second component maps new labels back to old ones.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = keep.to_vec();
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let k = map.len();
        let adj = map
            .iter()
            .map(|&v| VertexSet::from_vertices(k, self.adj[v].iter().filter(|&u| keep.contains(u)).map(|u| index[u])))
            .collect();
        (Graph { adj }, map)
    }

    /// Vertices reachable from `start` inside `within` (which must contain `start`).
    pub fn reach_within(&self, start: usize, within: &VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(self.order(), start);
        let mut frontier = seen.clone();
        while !frontier.is_empty() {
            let mut next = VertexSet::new(self.order());
            for v in &frontier {
                next.union_with(&self.adj[v]);
            }
            next.intersect_with(within);
            next.difference_with(&seen);
            seen.union_with(&next);
            frontier = next;
        }
        seen
    }

    /// Whether the induced subgraph on `set` is connected. The empty set is
    /// connected.
    pub fn induces_connected(&self, set: &VertexSet) -> bool {
        match set.first() {
            None => true,
            Some(s) => self.reach_within(s, set).len() == set.len(),
        }
    }

    /// Whether some edge has both endpoints in `set`.
    pub fn induces_edge(&self, set: &VertexSet) -> bool {
        set.iter().any(|v| !self.adj[v].is_disjoint(set))
    }

    /// Connected components as vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let n = self.order();
        let all = VertexSet::full(n);
        let mut left = all.clone();
        let mut out = Vec::new();
        while let Some(s) = left.first() {
            let comp = self.reach_within(s, &all);
            left.difference_with(&comp);
            out.push(comp);
        }
        out
    }

    /// `n = 0` and `n = 1` count as connected.
    pub fn is_connected(&self) -> bool {
        self.order() <= 1 || self.reach_within(0, &VertexSet::full(self.order())).len() == self.order()
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self.bipartition(), Bipartition::Coloring(_))
    }

    /// Two-colouring by breadth-first search, or an odd cycle witness.
    pub fn bipartition(&self) -> Bipartition {
        let n = self.order();
        let mut side: Vec<Option<bool>> = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        for root in 0..n {
            if side[root].is_some() {
                continue;
            }
            side[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for v in &self.adj[u] {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            parent[v] = u;
                            queue.push_back(v);
                        }
                        Some(sv) if sv == su => return Bipartition::OddCycle(odd_cycle(&parent, u, v)),
                        Some(_) => {}
                    }
                }
            }
        }
        Bipartition::Coloring(side.into_iter().map(Option::unwrap).collect())
    }
}

/// Joins the BFS-tree paths of the same-coloured edge `{u, v}` into a cycle.
fn odd_cycle(parent: &[usize], u: usize, v: usize) -> Vec<usize> {
    let path_to_root = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let pu = path_to_root(u);
    let pv = path_to_root(v);
    // Strip the shared tail above the lowest common ancestor.
    let mut i = pu.len();
    let mut j = pv.len();
    while i > 1 && j > 1 && pu[i - 2] == pv[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut cycle: Vec<usize> = pu[..i].to_vec();
    cycle.extend(pv[..j - 1].iter().rev());
    cycle
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}
