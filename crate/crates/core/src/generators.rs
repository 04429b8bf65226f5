//! Named graph families and seeded random corpora.
//!
//! Labelings: paths and cycles follow ring order; `complete_bipartite`
//! puts the smaller side first; hypercube vertices are their binary
//! coordinates, and `hypercube_minus` drops the all-ones vertex; grid
//! vertex `(i, j)` is `i * cols + j`; stars have centre 0.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use thiserror::Error;

use crate::graph::Graph;
use crate::rng::SplitMix64;

/// Attempts before `random_bipartite_connected` gives up.
pub const RESAMPLE_CAP: usize = 10_000;

/// Largest hypercube dimension accepted.
pub const MAX_DIMENSION: usize = 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("invalid family spec: {0}")]
    InvalidSpec(String),
    #[error("no connected sample after {0} attempts")]
    ResampleCapExceeded(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    CompleteBipartite(usize, usize),
    Hypercube(usize),
    HypercubeMinus(usize),
    Grid(usize, usize),
    /// Star with the given number of leaves.
    Star(usize),
    RandomTree(usize),
    RandomBipartiteConnected { n: usize, p: f64 },
}

fn invalid(msg: impl Into<String>) -> GenError {
    GenError::InvalidSpec(msg.into())
}

impl FamilySpec {
    /// Parses a family name and its positional parameters, as on the
    /// command line: `hypercube 3`, `complete_bipartite 2 3`,
    /// `random_bipartite_connected 8 0.4`.
    pub fn parse(name: &str, params: &[&str]) -> Result<Self, GenError> {
        let int = |i: usize| -> Result<usize, GenError> {
            let s = params.get(i).ok_or_else(|| invalid(format!("{name}: missing parameter {}", i + 1)))?;
            s.parse().map_err(|_| invalid(format!("{name}: {s:?} is not a non-negative integer")))
        };
        let arity = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(invalid(format!("{name} takes {k} parameter(s), got {}", params.len())))
            }
        };
        let spec = match name {
            "path" => FamilySpec::Path(int(0)?),
            "cycle" => FamilySpec::Cycle(int(0)?),
            "complete_bipartite" => FamilySpec::CompleteBipartite(int(0)?, int(1)?),
            "hypercube" => FamilySpec::Hypercube(int(0)?),
            "hypercube_minus" => FamilySpec::HypercubeMinus(int(0)?),
            "grid" => FamilySpec::Grid(int(0)?, int(1)?),
            "star" => FamilySpec::Star(int(0)?),
            "random_tree" => FamilySpec::RandomTree(int(0)?),
            "random_bipartite_connected" => {
                let s = params.get(1).ok_or_else(|| invalid(format!("{name}: missing probability")))?;
                let p = s.parse().map_err(|_| invalid(format!("{name}: {s:?} is not a probability")))?;
                FamilySpec::RandomBipartiteConnected { n: int(0)?, p }
            }
            other => return Err(invalid(format!("unknown family {other:?}"))),
        };
        arity(spec.arity())?;
        spec.validate()?;
        Ok(spec)
    }

    fn arity(&self) -> usize {
        match self {
            FamilySpec::CompleteBipartite(..) | FamilySpec::Grid(..) | FamilySpec::RandomBipartiteConnected { .. } => 2,
            _ => 1,
        }
    }

    pub fn validate(&self) -> Result<(), GenError> {
        match *self {
            FamilySpec::Path(0) => Err(invalid("path needs at least one vertex")),
            FamilySpec::Cycle(n) if n < 3 => Err(invalid("cycle length must be at least 3")),
            FamilySpec::CompleteBipartite(a, b) if a == 0 || b == 0 => Err(invalid("complete_bipartite sides must be nonempty")),
            FamilySpec::Hypercube(d) | FamilySpec::HypercubeMinus(d) if d > MAX_DIMENSION => {
                Err(invalid(format!("dimension above {MAX_DIMENSION}")))
            }
            FamilySpec::HypercubeMinus(0) => Err(invalid("hypercube_minus needs dimension at least 1")),
            FamilySpec::Grid(r, c) if r == 0 || c == 0 => Err(invalid("grid sides must be positive")),
            FamilySpec::RandomTree(0) => Err(invalid("random_tree needs at least one vertex")),
            FamilySpec::RandomBipartiteConnected { n, p } => {
                if n == 0 {
                    Err(invalid("random_bipartite_connected needs at least one vertex"))
                } else if !(0.0..=1.0).contains(&p) {
                    Err(invalid("probability must lie in [0, 1]"))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    pub fn is_random(&self) -> bool {
        matches!(self, FamilySpec::RandomTree(_) | FamilySpec::RandomBipartiteConnected { .. })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path(n) => write!(f, "path {n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle {n}"),
            FamilySpec::CompleteBipartite(a, b) => write!(f, "complete_bipartite {a} {b}"),
            FamilySpec::Hypercube(d) => write!(f, "hypercube {d}"),
            FamilySpec::HypercubeMinus(d) => write!(f, "hypercube_minus {d}"),
            FamilySpec::Grid(r, c) => write!(f, "grid {r} {c}"),
            FamilySpec::Star(k) => write!(f, "star {k}"),
            FamilySpec::RandomTree(n) => write!(f, "random_tree {n}"),
            FamilySpec::RandomBipartiteConnected { n, p } => write!(f, "random_bipartite_connected {n} {p}"),
        }
    }
}

/// Builds one graph. Deterministic families ignore `rng`.
pub fn generate_with(spec: &FamilySpec, rng: &mut SplitMix64) -> Result<Graph, GenError> {
    spec.validate()?;
    let g = match *spec {
        FamilySpec::Path(n) => Graph::from_edges(n, (1..n).map(|i| (i - 1, i))),
        FamilySpec::Cycle(n) => Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))),
        FamilySpec::CompleteBipartite(a, b) => {
            let (a, b) = (a.min(b), a.max(b));
            Graph::from_edges(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
        }
        FamilySpec::Hypercube(d) => Ok(hypercube(d, 1 << d)),
        FamilySpec::HypercubeMinus(d) => Ok(hypercube(d, (1 << d) - 1)),
        FamilySpec::Grid(r, c) => Graph::from_edges(
            r * c,
            (0..r * c).flat_map(|v| {
                let right = (v % c + 1 < c).then_some((v, v + 1));
                let down = (v + c < r * c).then_some((v, v + c));
                right.into_iter().chain(down)
            }),
        ),
        FamilySpec::Star(k) => Graph::from_edges(k + 1, (1..=k).map(|i| (0, i))),
        FamilySpec::RandomTree(n) => Ok(random_tree(n, rng)),
        FamilySpec::RandomBipartiteConnected { n, p } => return random_bipartite_connected(n, p, rng, RESAMPLE_CAP),
    };
    Ok(g.expect("family constructions are simple graphs"))
}

/// Builds one graph from `seed`.
pub fn generate(spec: &FamilySpec, seed: u64) -> Result<Graph, GenError> {
    generate_with(spec, &mut SplitMix64::new(seed))
}

/// Hypercube of dimension `d` restricted to the vertices `0..keep`.
fn hypercube(d: usize, keep: usize) -> Graph {
    let edges = (0..keep).flat_map(|v| (0..d).map(move |b| (v, v ^ (1 << b)))).filter(|&(u, v)| u < v && v < keep);
    Graph::from_edges(keep, edges).unwrap()
}

/// Uniform labelled tree via Prüfer decoding.
fn random_tree(n: usize, rng: &mut SplitMix64) -> Graph {
    if n <= 2 {
        return Graph::from_edges(n, (1..n).map(|i| (0, i))).unwrap();
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.below(n as u64) as usize).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let Reverse(leaf) = leaves.pop().unwrap();
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.push(Reverse(c));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a, b));
    Graph::from_edges(n, edges).unwrap()
}

/// Each vertex picks a side by a fair coin, each cross pair becomes an edge
/// with probability `p`; repeated until the sample is connected.
pub fn random_bipartite_connected(n: usize, p: f64, rng: &mut SplitMix64, cap: usize) -> Result<Graph, GenError> {
    for _ in 0..cap {
        let side: Vec<bool> = (0..n).map(|_| rng.chance(0.5)).collect();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if side[u] != side[v] && rng.chance(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, edges).unwrap();
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(GenError::ResampleCapExceeded(cap))
}

/// `count` graphs drawn from one generator stream seeded by `seed`.
pub fn random_corpus(spec: &FamilySpec, count: usize, seed: u64) -> Corpus {
    Corpus {
        spec: spec.clone(),
        rng: SplitMix64::new(seed),
        left: count,
    }
}

pub struct Corpus {
    spec: FamilySpec,
    rng: SplitMix64,
    left: usize,
}

impl Iterator for Corpus {
    type Item = Result<Graph, GenError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.left == 0 {
            return None;
        }
        self.left -= 1;
        Some(generate_with(&self.spec, &mut self.rng))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.left, Some(self.left))
    }
}

/// The deterministic families used by the verification corpus.
pub fn standard_families() -> Vec<FamilySpec> {
    let mut out = Vec::new();
    out.extend((1..=8).map(FamilySpec::Path));
    out.extend((3..=12).map(FamilySpec::Cycle));
    for a in 1..=3 {
        for b in a..=4 {
            out.push(FamilySpec::CompleteBipartite(a, b));
        }
    }
    out.extend((0..=4).map(FamilySpec::Hypercube));
    out.extend((1..=4).map(FamilySpec::HypercubeMinus));
    for r in 1..=3 {
        for c in r..=4 {
            out.push(FamilySpec::Grid(r, c));
        }
    }
    out.extend((0..=6).map(FamilySpec::Star));
    out
}
