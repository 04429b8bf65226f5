//! Induced-subgraph detection for a fixed list of small patterns, induced
//! cycle enumeration and the distance profiles of induced 6-cycles.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::metric::Metric;

/// Default cap on the number of embeddings collected by [`find_all_induced`].
pub const DEFAULT_CAP: usize = 1_000_000;

/// Default upper bound accepted by [`induced_cycles`].
pub const DEFAULT_CYCLE_BOUND: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("unknown pattern {0:?}")]
    UnknownPattern(String),
    #[error("{{{0}, {1}}} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("cycle length {requested} exceeds the bound {bound}")]
    BoundExceeded { requested: usize, bound: usize },
    #[error("embedding is not an induced 6-cycle")]
    NotC6,
    #[error("vertex {0} is not connected to the cycle")]
    Unreachable(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pattern {
    K23,
    K33,
    /// The 3-cube with one vertex removed.
    Q3Minus,
    C4,
    C6,
    /// Chordless cycle of the given length (at least 3).
    Cycle(usize),
}

impl Pattern {
    /// Cycle length, if the pattern is a cycle.
    pub fn cycle_len(self) -> Option<usize> {
        match self {
            Pattern::C4 => Some(4),
            Pattern::C6 => Some(6),
            Pattern::Cycle(l) => Some(l),
            _ => None,
        }
    }

    /// The pattern graph. Complete bipartite patterns list the small side
    /// first. For Q3Minus vertex 0 is the apex, 1..=3 its neighbours and
    /// 4..=6 the rim, with rim vertex `3 + i` not adjacent to `i`.
    pub fn graph(self) -> Graph {
        match self {
            Pattern::K23 => complete_bipartite(2, 3),
            Pattern::K33 => complete_bipartite(3, 3),
            Pattern::Q3Minus => Graph::from_edges(
                7,
                [(0, 1), (0, 2), (0, 3), (4, 2), (4, 3), (5, 1), (5, 3), (6, 1), (6, 2)],
            )
            .unwrap(),
            _ => {
                let l = self.cycle_len().unwrap();
                Graph::from_edges(l, (0..l).map(|i| (i, (i + 1) % l))).unwrap()
            }
        }
    }

    fn role(self, index: usize) -> &'static str {
        match self {
            Pattern::K23 if index < 2 => "small",
            Pattern::K23 => "large",
            Pattern::K33 if index < 3 => "side_a",
            Pattern::K33 => "side_b",
            Pattern::Q3Minus => match index {
                0 => "apex",
                1..=3 => "middle",
                _ => "rim",
            },
            _ => "ring",
        }
    }

    /// Rewrites an embedding into its canonical representative.
    fn canonicalize(self, img: &mut [usize]) {
        match self {
            Pattern::K23 => {
                img[..2].sort_unstable();
                img[2..].sort_unstable();
            }
            Pattern::K33 => {
                img[..3].sort_unstable();
                img[3..].sort_unstable();
                if img[3] < img[0] {
                    let (a, b) = img.split_at_mut(3);
                    a.swap_with_slice(b);
                }
            }
            Pattern::Q3Minus => {
                let mut pairs: Vec<(usize, usize)> = (1..=3).map(|i| (img[i], img[i + 3])).collect();
                pairs.sort_unstable();
                for (i, (mid, rim)) in pairs.into_iter().enumerate() {
                    img[i + 1] = mid;
                    img[i + 4] = rim;
                }
            }
            _ => canonical_ring(img),
        }
    }
}

fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j)))).unwrap()
}

/// Smallest vertex first, then the direction with the smaller successor.
fn canonical_ring(ring: &mut [usize]) {
    let l = ring.len();
    if l == 0 {
        return;
    }
    let start = (0..l).min_by_key(|&i| ring[i]).unwrap();
    ring.rotate_left(start);
    if l > 2 && ring[l - 1] < ring[1] {
        ring[1..].reverse();
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::K23 => f.write_str("K23"),
            Pattern::K33 => f.write_str("K33"),
            Pattern::Q3Minus => f.write_str("Q3minus"),
            Pattern::C4 => f.write_str("C4"),
            Pattern::C6 => f.write_str("C6"),
            Pattern::Cycle(l) => write!(f, "C{l}"),
        }
    }
}

impl FromStr for Pattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || PatternError::UnknownPattern(s.to_string());
        match s.to_ascii_lowercase().as_str() {
            "k23" => Ok(Pattern::K23),
            "k33" => Ok(Pattern::K33),
            "q3minus" | "q3-" => Ok(Pattern::Q3Minus),
            "c4" => Ok(Pattern::C4),
            "c6" => Ok(Pattern::C6),
            other => match other.strip_prefix('c').map(str::parse::<usize>) {
                Some(Ok(l)) if l >= 3 => Ok(Pattern::Cycle(l)),
                _ => Err(unknown()),
            },
        }
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An induced copy of a pattern: `vertices[i]` is the image of pattern
/// vertex `i` and `roles[i]` its role label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Embedding {
    pub pattern: Pattern,
    pub vertices: Vec<usize>,
    pub roles: Vec<&'static str>,
}

impl Embedding {
    fn new(pattern: Pattern, mut vertices: Vec<usize>) -> Self {
        pattern.canonicalize(&mut vertices);
        let roles = (0..vertices.len()).map(|i| pattern.role(i)).collect();
        Embedding { pattern, vertices, roles }
    }

    pub fn vertex_set(&self, n: usize) -> VertexSet {
        VertexSet::from_vertices(n, self.vertices.iter().copied())
    }

    /// Images are distinct and the induced edges are exactly the pattern's.
    pub fn is_induced_in(&self, g: &Graph) -> bool {
        let p = self.pattern.graph();
        let k = self.vertices.len();
        if k != p.order() || self.vertices.iter().any(|&v| v >= g.order()) {
            return false;
        }
        if self.vertex_set(g.order()).len() != k {
            return false;
        }
        (0..k).all(|i| (i + 1..k).all(|j| p.has_edge(i, j) == g.has_edge(self.vertices[i], self.vertices[j])))
    }
}

/// Outcome of a capped enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Embeddings {
    pub embeddings: Vec<Embedding>,
    /// `true` when the search finished before reaching the cap.
    pub complete: bool,
}

struct Matcher<'a> {
    g: &'a Graph,
    p: Graph,
    order: Vec<usize>,
    img: Vec<usize>,
    used: VertexSet,
}

impl<'a> Matcher<'a> {
    fn new(g: &'a Graph, pattern: Pattern) -> Self {
        let p = pattern.graph();
        // Breadth-first order keeps every later vertex attached to a mapped one.
        let mut order = vec![0];
        let mut i = 0;
        while i < order.len() {
            for u in p.neighbors(order[i]) {
                if !order.contains(&u) {
                    order.push(u);
                }
            }
            i += 1;
        }
        Matcher {
            g,
            img: vec![usize::MAX; p.order()],
            order,
            p,
            used: VertexSet::new(g.order()),
        }
    }

    fn candidates(&self, depth: usize) -> VertexSet {
        let pv = self.order[depth];
        let n = self.g.order();
        let mut cand = VertexSet::full(n);
        for &q in &self.order[..depth] {
            if self.p.has_edge(pv, q) {
                cand.intersect_with(self.g.neighbors(self.img[q]));
            } else {
                cand.difference_with(self.g.neighbors(self.img[q]));
            }
        }
        cand.difference_with(&self.used);
        cand
    }

    /// Depth-first search in ascending candidate order; `visit` returns
    /// `false` to stop.
    fn run(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(&self.img);
        }
        let pv = self.order[depth];
        let need = self.p.degree(pv);
        for v in &self.candidates(depth) {
            if self.g.degree(v) < need {
                continue;
            }
            self.img[pv] = v;
            self.used.insert(v);
            let go_on = self.run(depth + 1, visit);
            self.used.remove(v);
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// First induced copy of `pattern`, in canonical form.
pub fn find_induced(g: &Graph, pattern: Pattern) -> Option<Embedding> {
    if pattern.graph().order() > g.order() {
        return None;
    }
    let mut found = None;
    Matcher::new(g, pattern).run(0, &mut |img| {
        found = Some(img.to_vec());
        false
    });
    found.map(|img| Embedding::new(pattern, img))
}

/// Induced copies of `pattern`, one per vertex set (two embeddings with the
/// same image differ by a pattern automorphism), in discovery order.
pub fn find_all_induced(g: &Graph, pattern: Pattern, cap: usize) -> Embeddings {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut embeddings = Vec::new();
    let mut complete = true;
    if pattern.graph().order() <= g.order() {
        Matcher::new(g, pattern).run(0, &mut |img| {
            let mut key = img.to_vec();
            key.sort_unstable();
            if seen.insert(key) {
                if embeddings.len() == cap {
                    complete = false;
                    return false;
                }
                embeddings.push(Embedding::new(pattern, img.to_vec()));
            }
            true
        });
    }
    Embeddings { embeddings, complete }
}

/// An induced 4-cycle `a - b - c - d` through the edge `{a, b}`.
pub fn edge_on_induced_c4(g: &Graph, a: usize, b: usize) -> Result<Option<Embedding>, PatternError> {
    if !g.has_edge(a, b) {
        return Err(PatternError::NotAnEdge(a, b));
    }
    for c in g.neighbors(b).iter().filter(|&c| c != a && !g.has_edge(a, c)) {
        let common = g.neighbors(a).intersection(g.neighbors(c));
        if let Some(d) = common.iter().find(|&d| d != b && !g.has_edge(b, d)) {
            return Ok(Some(Embedding::new(Pattern::C4, vec![a, b, c, d])));
        }
    }
    Ok(None)
}

/// Whether `{a, b}` lies on a cycle, i.e. is not a bridge.
pub fn edge_on_cycle(g: &Graph, a: usize, b: usize) -> Result<bool, PatternError> {
    if !g.has_edge(a, b) {
        return Err(PatternError::NotAnEdge(a, b));
    }
    let mut seen = VertexSet::singleton(g.order(), a);
    let mut stack = vec![a];
    while let Some(u) = stack.pop() {
        for v in g.neighbors(u) {
            if u == a && v == b {
                continue;
            }
            if v == b {
                return Ok(true);
            }
            if seen.insert(v) {
                stack.push(v);
            }
        }
    }
    Ok(false)
}

/// All induced cycles of length at most `max_len`, each once.
pub fn induced_cycles(m: &Metric, max_len: usize) -> Result<Vec<Embedding>, PatternError> {
    induced_cycles_bounded(m, max_len, DEFAULT_CYCLE_BOUND)
}

pub fn induced_cycles_bounded(m: &Metric, max_len: usize, bound: usize) -> Result<Vec<Embedding>, PatternError> {
    if max_len > bound {
        return Err(PatternError::BoundExceeded {
            requested: max_len,
            bound,
        });
    }
    // Bipartite graphs only have even cycles.
    let max_len = if m.is_bipartite() { max_len & !1 } else { max_len };
    let mut out = Vec::new();
    if max_len < 3 {
        return Ok(out);
    }
    let g = m.graph();
    for s in g.vertices() {
        let mut path = vec![s];
        let mut blocked = VertexSet::new(g.order());
        extend_path(m, s, max_len, &mut path, &mut blocked, &mut out);
    }
    Ok(out)
}

/// Extends the chordless path `path` (starting at its minimum `s`).
/// `blocked` holds the neighbours of the interior vertices `path[1..len-1]`.
fn extend_path(
    m: &Metric,
    s: usize,
    max_len: usize,
    path: &mut Vec<usize>,
    blocked: &mut VertexSet,
    out: &mut Vec<Embedding>,
) {
    let g = m.graph();
    let last = *path.last().unwrap();
    let k = path.len();
    let nbrs = g.neighbors(last).clone();
    for v in &nbrs {
        if v <= s || path.contains(&v) || blocked.contains(v) {
            continue;
        }
        if k >= 2 && g.has_edge(v, s) {
            // Closing vertex; count each cycle in one direction only.
            if path[1] < v {
                let mut ring = path.clone();
                ring.push(v);
                let pattern = Pattern::cycle_of(ring.len());
                out.push(Embedding::new(pattern, ring));
            }
            continue;
        }
        // Remaining closing distance must fit.
        let back = m.distances().get(v, s).unwrap_or(u32::MAX) as usize;
        if k + back > max_len {
            continue;
        }
        let added = if k >= 2 { g.neighbors(last).difference(blocked) } else { VertexSet::new(g.order()) };
        if k >= 2 {
            blocked.union_with(&added);
        }
        path.push(v);
        extend_path(m, s, max_len, path, blocked, out);
        path.pop();
        if k >= 2 {
            blocked.difference_with(&added);
        }
    }
}

impl Pattern {
    /// `C4`/`C6` for those lengths, otherwise `Cycle(len)`.
    pub fn cycle_of(len: usize) -> Pattern {
        match len {
            4 => Pattern::C4,
            6 => Pattern::C6,
            l => Pattern::Cycle(l),
        }
    }
}

fn ring_distance(i: usize, j: usize, l: usize) -> u32 {
    let d = i.abs_diff(j);
    d.min(l - d) as u32
}

/// Whether cycle distances agree with graph distances on the ring.
pub fn is_isometric_cycle(m: &Metric, emb: &Embedding) -> bool {
    let r = &emb.vertices;
    let l = r.len();
    (0..l).all(|i| (i + 1..l).all(|j| m.distances().get(r[i], r[j]) == Some(ring_distance(i, j, l))))
}

/// Whether the ring's vertex set is convex.
pub fn is_convex_cycle(m: &Metric, emb: &Embedding) -> bool {
    m.is_convex(&emb.vertex_set(m.order())).unwrap_or(false)
}

/// Distances from `mu` around an induced 6-cycle, rotated to start at a
/// closest vertex; among such rotations and both directions the
/// lexicographically smallest tuple is returned.
pub fn delta_profile(m: &Metric, emb: &Embedding, mu: usize) -> Result<[u32; 6], PatternError> {
    if emb.vertices.len() != 6 || emb.pattern.cycle_len() != Some(6) || !emb.is_induced_in(m.graph()) {
        return Err(PatternError::NotC6);
    }
    let mut raw = [0u32; 6];
    for (i, &v) in emb.vertices.iter().enumerate() {
        raw[i] = m.distances().get(mu, v).ok_or(PatternError::Unreachable(mu))?;
    }
    let mut best: Option<[u32; 6]> = None;
    for start in 0..6 {
        for dir in [1, 5] {
            let cand: [u32; 6] = std::array::from_fn(|i| raw[(start + dir * i) % 6]);
            if best.is_none_or(|b| cand < b) {
                best = Some(cand);
            }
        }
    }
    Ok(best.unwrap())
}

/// The profile shapes of an induced 6-cycle seen from a medico vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DeltaForm {
    D1,
    D2,
    D2Star,
    D3,
    D4,
}

/// Matches `p` literally against the forms with `ℓ = p[0] + 1`.
pub fn classify_profile(p: &[u32; 6]) -> Option<(DeltaForm, u32)> {
    let l = p[0] + 1;
    let forms = [
        (DeltaForm::D1, [l - 1, l, l - 1, l, l - 1, l]),
        (DeltaForm::D2, [l - 1, l, l - 1, l, l + 1, l]),
        (DeltaForm::D2Star, [l - 1, l, l + 1, l, l - 1, l]),
        (DeltaForm::D3, [l - 1, l, l + 1, l, l + 1, l]),
        (DeltaForm::D4, [l - 1, l, l + 1, l + 2, l + 1, l]),
    ];
    forms.into_iter().find(|(_, f)| f == p).map(|(form, _)| (form, l))
}
