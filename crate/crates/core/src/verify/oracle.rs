//! Definition-level evaluations that only read the graph and its distance
//! matrix. The theorem suite compares these against the characterizations,
//! so nothing here may call into `metric`, `conditions` or `patterns`.

use crate::bitset::VertexSet;
use crate::distance::DistanceMatrix;
use crate::graph::Graph;

/// Number of `x` with `x` between every pair of `(u, v, w)`, capped at `limit + 1`.
fn median_count(d: &DistanceMatrix, u: usize, v: usize, w: usize, limit: usize) -> usize {
    let n = d.order();
    let mut count = 0;
    for x in 0..n {
        if d.between(u, x, v) && d.between(u, x, w) && d.between(v, x, w) {
            count += 1;
            if count > limit {
                break;
            }
        }
    }
    count
}

/// `I(u, v, w)` straight from the distance sums.
pub fn median_set(d: &DistanceMatrix, u: usize, v: usize, w: usize) -> VertexSet {
    VertexSet::from_vertices(
        d.order(),
        (0..d.order()).filter(|&x| d.between(u, x, v) && d.between(u, x, w) && d.between(v, x, w)),
    )
}

/// `I(u, v)` straight from the distance sums.
pub fn interval(d: &DistanceMatrix, u: usize, v: usize) -> VertexSet {
    VertexSet::from_vertices(d.order(), (0..d.order()).filter(|&x| d.between(u, x, v)))
}

pub fn is_connected(d: &DistanceMatrix) -> bool {
    (0..d.order()).all(|v| d.reachable(0, v))
}

/// Medico test by counting medians of every triple `(mu, v, w)`.
pub fn is_medico(d: &DistanceMatrix, mu: usize) -> bool {
    let n = d.order();
    if !is_connected(d) {
        return false;
    }
    (0..n)
        .filter(|&v| v != mu)
        .all(|v| (v + 1..n).filter(|&w| w != mu).all(|w| median_count(d, mu, v, w, 1) == 1))
}

pub fn medico_set(d: &DistanceMatrix) -> VertexSet {
    VertexSet::from_vertices(d.order(), (0..d.order()).filter(|&mu| is_medico(d, mu)))
}

pub fn is_median(d: &DistanceMatrix) -> bool {
    d.order() >= 1 && medico_set(d).len() == d.order()
}

/// Every triple has at least one median (vacuous for `n = 0`).
pub fn is_modular(d: &DistanceMatrix) -> bool {
    let n = d.order();
    (0..n).all(|u| (u..n).all(|v| (v..n).all(|w| median_count(d, u, v, w, 0) > 0)))
}

/// Convex hull by repeatedly adding every vertex between two members.
pub fn convex_hull(d: &DistanceMatrix, s: &VertexSet) -> VertexSet {
    let n = d.order();
    let mut hull = s.clone();
    loop {
        let members = hull.to_vec();
        let mut grown = hull.clone();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i..] {
                for x in 0..n {
                    if d.between(a, x, b) {
                        grown.insert(x);
                    }
                }
            }
        }
        if grown == hull {
            return hull;
        }
        hull = grown;
    }
}

/// Induced-subgraph test by trying every injective map of the pattern's
/// vertices into every vertex subset of matching size.
pub fn has_induced(g: &Graph, pattern: &Graph) -> bool {
    let k = pattern.order();
    let n = g.order();
    if k > n {
        return false;
    }
    let mut pdeg: Vec<usize> = pattern.vertices().map(|v| pattern.degree(v)).collect();
    pdeg.sort_unstable();
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let set = VertexSet::from_vertices(n, subset.iter().copied());
        let (h, _) = g.induced_subgraph(&set);
        if h.size() == pattern.size() {
            let mut hdeg: Vec<usize> = h.vertices().map(|v| h.degree(v)).collect();
            hdeg.sort_unstable();
            if hdeg == pdeg && isomorphic_by_permutation(&h, pattern) {
                return true;
            }
        }
        if !next_combination(&mut subset, n) {
            return false;
        }
    }
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn isomorphic_by_permutation(h: &Graph, p: &Graph) -> bool {
    let k = p.order();
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        if (0..k).all(|i| (i + 1..k).all(|j| p.has_edge(i, j) == h.has_edge(perm[i], perm[j]))) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}
