//! All-pairs hop distances by one breadth-first search per source.

use rayon::prelude::*;

use crate::graph::Graph;

/// Sources above this order are processed in parallel.
const PARALLEL_ORDER: usize = 128;

/// Row-major `n × n` hop distances.
///
/// Unreachable pairs hold a dedicated sentinel that is never exposed as a
/// number: [`DistanceMatrix::get`] returns `None` for them.
#[derive(Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    cells: Vec<u32>,
}

const UNREACHABLE: u32 = u32::MAX;

impl DistanceMatrix {
    pub fn new(g: &Graph) -> Self {
        let n = g.order();
        let mut cells = vec![UNREACHABLE; n * n];
        if n >= PARALLEL_ORDER {
            cells
                .par_chunks_mut(n)
                .enumerate()
                .for_each(|(s, row)| bfs_row(g, s, row));
        } else {
            for (s, row) in cells.chunks_mut(n.max(1)).enumerate().take(n) {
                bfs_row(g, s, row);
            }
        }
        DistanceMatrix { n, cells }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// `d(u, v)`, or `None` when no path exists.
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Option<u32> {
        match self.cells[u * self.n + v] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    #[inline]
    pub fn reachable(&self, u: usize, v: usize) -> bool {
        self.cells[u * self.n + v] != UNREACHABLE
    }

    /// Whether `x` lies on a shortest `(u, v)`-path: `d(u,x) + d(x,v) = d(u,v)`.
    /// Always `false` for pairs in different components.
    #[inline]
    pub fn between(&self, u: usize, x: usize, v: usize) -> bool {
        match (self.get(u, x), self.get(x, v), self.get(u, v)) {
            (Some(a), Some(b), Some(c)) => a + b == c,
            _ => false,
        }
    }

    /// Largest finite distance (0 for graphs with fewer than two vertices).
    pub fn diameter(&self) -> u32 {
        self.cells.iter().copied().filter(|&d| d != UNREACHABLE).max().unwrap_or(0)
    }
}

fn bfs_row(g: &Graph, source: usize, row: &mut [u32]) {
    let mut queue = Vec::with_capacity(g.order());
    row[source] = 0;
    queue.push(source);
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let next = row[u] + 1;
        for v in g.neighbors(u) {
            if row[v] == UNREACHABLE {
                row[v] = next;
                queue.push(v);
            }
        }
    }
}

impl std::fmt::Debug for DistanceMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<Vec<Option<u32>>> = (0..self.n).map(|u| (0..self.n).map(|v| self.get(u, v)).collect()).collect();
        f.debug_struct("DistanceMatrix").field("rows", &rows).finish()
    }
}
