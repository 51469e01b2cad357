//! Brute-force oracles, deliberately independent of the library's search
//! algorithms: colorings by enumerating all assignments, cliques by subset
//! scan, matchings by recursion over edges.

// each test target compiles this module and uses a different subset
#![allow(dead_code)]

use reed_core::graph::{Graph, VertexSet};

/// Smallest k admitting a proper coloring, by trying every assignment of
/// k colors for k = 1..=n.
pub fn oracle_chromatic(g: &Graph) -> usize {
    let n = g.order();
    let edges = g.edges();
    'next_k: for k in 1..=n {
        let mut assignment = vec![0usize; n];
        loop {
            if edges.iter().all(|&(u, v)| assignment[u] != assignment[v]) {
                return k;
            }
            // odometer step over base-k assignments
            let mut pos = 0;
            loop {
                if pos == n {
                    continue 'next_k;
                }
                assignment[pos] += 1;
                if assignment[pos] < k {
                    break;
                }
                assignment[pos] = 0;
                pos += 1;
            }
        }
    }
    unreachable!("n colors always suffice")
}

/// Largest pairwise-adjacent subset, by scanning all vertex subsets.
pub fn oracle_clique(g: &Graph) -> usize {
    let n = g.order();
    let mut best = 0;
    for mask in 0u64..1 << n {
        let set = VertexSet(mask);
        if set.len() > best && is_clique(g, set) {
            best = set.len();
        }
    }
    best
}

fn is_clique(g: &Graph, set: VertexSet) -> bool {
    set.iter().all(|v| set.without(v).is_subset_of(g.neighbors(v)))
}

pub fn oracle_independence(g: &Graph) -> usize {
    oracle_clique(&g.complement())
}

/// Maximum matching size by trying, for every edge, both using and
/// skipping it.
pub fn oracle_matching(g: &Graph) -> usize {
    fn rec(edges: &[(usize, usize)], pos: usize, used: u64) -> usize {
        if pos == edges.len() {
            return 0;
        }
        let (u, v) = edges[pos];
        let skip = rec(edges, pos + 1, used);
        if used >> u & 1 == 0 && used >> v & 1 == 0 {
            let take = 1 + rec(edges, pos + 1, used | 1 << u | 1 << v);
            skip.max(take)
        } else {
            skip
        }
    }
    rec(&g.edges(), 0, 0)
}

/// Fewest vertices missed over every collection of disjoint independent
/// sets with classes of at least `r` vertices, by complete recursion.
pub fn oracle_min_missed(g: &Graph, r: usize) -> usize {
    fn independent_subsets(g: &Graph, from: u64, min_size: usize) -> Vec<u64> {
        let mut out = Vec::new();
        for mask in 0u64..=from {
            if mask & !from != 0 {
                continue;
            }
            if (mask.count_ones() as usize) < min_size {
                continue;
            }
            let set = VertexSet(mask);
            if set.iter().all(|v| (g.row(v) & mask) == 0) {
                out.push(mask);
            }
        }
        out
    }
    fn rec(g: &Graph, remaining: u64, r: usize) -> usize {
        let mut best = remaining.count_ones() as usize;
        for class in independent_subsets(g, remaining, r) {
            if class == 0 {
                continue;
            }
            best = best.min(rec(g, remaining & !class, r));
        }
        best
    }
    rec(g, g.vertices().0, r)
}
