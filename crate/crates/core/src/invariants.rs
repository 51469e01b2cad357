//! Exact graph parameters: clique and independence numbers, chromatic
//! number, degree extremes and vertex criticality. Searches are complete
//! branch-and-bound; heuristics only prune, they never decide.

use crate::graph::{Graph, VertexSet};
use crate::matching::matching_number;
use serde::Serialize;

/// The exact parameter values of one graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantRecord {
    pub chromatic: usize,
    pub clique: usize,
    pub independence: usize,
    pub max_degree: usize,
    pub min_degree: usize,
    pub matching: usize,
}

impl InvariantRecord {
    pub fn compute(g: &Graph) -> InvariantRecord {
        let (max_degree, min_degree) = degree_stats(g);
        InvariantRecord {
            chromatic: chromatic_number(g),
            clique: clique_number(g),
            independence: independence_number(g),
            max_degree,
            min_degree,
            matching: matching_number(g),
        }
    }
}

/// Exact `(max degree, min degree)`.
pub fn degree_stats(g: &Graph) -> (usize, usize) {
    let mut max = 0;
    let mut min = g.order();
    for v in 0..g.order() {
        let d = g.degree(v);
        max = max.max(d);
        min = min.min(d);
    }
    (max, min)
}

/// A maximum clique, found by branch and bound with a greedy coloring
/// bound. Deterministic: candidate vertices are taken in ascending order
/// inside each color class, and the incumbent is replaced only by strictly
/// larger cliques.
pub fn max_clique(g: &Graph) -> VertexSet {
    let mut best = VertexSet::EMPTY;
    clique_expand(g, VertexSet::EMPTY, g.vertices().0, &mut best);
    best
}

pub fn clique_number(g: &Graph) -> usize {
    max_clique(g).len()
}

fn clique_expand(g: &Graph, current: VertexSet, cands: u64, best: &mut VertexSet) {
    if cands == 0 {
        if current.len() > best.len() {
            *best = current;
        }
        return;
    }
    // Greedy color classes over the candidates: vertices in class c can
    // contribute at most c+1 further clique vertices.
    let mut order: Vec<(usize, usize)> = Vec::with_capacity(cands.count_ones() as usize);
    let mut rest = cands;
    let mut color = 0usize;
    while rest != 0 {
        color += 1;
        let mut avail = rest;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= !(g.row(v) | 1u64 << v);
            rest &= !(1u64 << v);
            order.push((v, color));
        }
    }
    let mut live = cands;
    for &(v, bound) in order.iter().rev() {
        if current.len() + bound <= best.len() {
            return;
        }
        live &= !(1u64 << v);
        clique_expand(g, current.with(v), live & g.row(v), best);
    }
}

/// A maximum independent set (a maximum clique of the complement,
/// translated back).
pub fn max_independent_set(g: &Graph) -> VertexSet {
    max_clique(&g.complement())
}

pub fn independence_number(g: &Graph) -> usize {
    max_independent_set(g).len()
}

/// Exact chromatic number: clique lower bound, greedy upper bound, then
/// k-colorability decisions for ascending k.
pub fn chromatic_number(g: &Graph) -> usize {
    optimal_coloring(g).1
}

/// A proper coloring using exactly chi colors `0..chi-1`, plus chi.
pub fn optimal_coloring(g: &Graph) -> (Vec<usize>, usize) {
    let clique = max_clique(g);
    let lower = clique.len();
    let (greedy, upper) = greedy_coloring(g);
    if upper == lower {
        return (greedy, upper);
    }
    for k in lower..upper {
        if let Some(coloring) = k_coloring(g, k, clique) {
            return (coloring, k);
        }
    }
    (greedy, upper)
}

/// Greedy coloring in ascending vertex order; returns the coloring and the
/// number of colors used. Upper bound only.
pub fn greedy_coloring(g: &Graph) -> (Vec<usize>, usize) {
    let n = g.order();
    let mut colors = vec![0usize; n];
    let mut used = 0usize;
    for v in 0..n {
        let mut taken = 0u64;
        let mut nbrs = g.row(v) & ((1u128 << v) - 1) as u64;
        while nbrs != 0 {
            let u = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            taken |= 1u64 << colors[u];
        }
        let c = (!taken).trailing_zeros() as usize;
        colors[v] = c;
        used = used.max(c + 1);
    }
    (colors, used)
}

/// Decides k-colorability, seeding a maximum clique with distinct colors.
/// Remaining vertices are ordered by descending degree (index ascending on
/// ties); a vertex may use at most one color beyond the largest used so
/// far, which breaks color-permutation symmetry.
fn k_coloring(g: &Graph, k: usize, clique: VertexSet) -> Option<Vec<usize>> {
    let n = g.order();
    if clique.len() > k {
        return None;
    }
    let mut colors = vec![usize::MAX; n];
    let mut order: Vec<usize> = (0..n).filter(|&v| !clique.contains(v)).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    for (c, v) in clique.iter().enumerate() {
        colors[v] = c;
    }
    let max_used = clique.len().wrapping_sub(1); // usize::MAX when the clique is empty
    if color_rest(g, k, &order, 0, max_used, &mut colors) {
        Some(colors)
    } else {
        None
    }
}

fn color_rest(
    g: &Graph,
    k: usize,
    order: &[usize],
    pos: usize,
    max_used: usize,
    colors: &mut Vec<usize>,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    let mut taken = 0u64;
    let mut nbrs = g.row(v);
    while nbrs != 0 {
        let u = nbrs.trailing_zeros() as usize;
        nbrs &= nbrs - 1;
        if colors[u] != usize::MAX {
            taken |= 1u64 << colors[u];
        }
    }
    let limit = k.min(max_used.wrapping_add(1) + 1);
    for c in 0..limit {
        if taken >> c & 1 == 0 {
            colors[v] = c;
            let next_max = if max_used == usize::MAX || c > max_used { c } else { max_used };
            if color_rest(g, k, order, pos + 1, next_max, colors) {
                return true;
            }
        }
    }
    colors[v] = usize::MAX;
    false
}

/// True iff removing any one vertex lowers the chromatic number. A single
/// vertex is vertex critical.
pub fn is_vertex_critical(g: &Graph) -> bool {
    if g.order() == 1 {
        return true;
    }
    let chi = chromatic_number(g);
    (0..g.order()).all(|v| chromatic_number(&g.remove_vertex(v)) < chi)
}

/// Checks that a coloring is proper and uses colors `0..count`.
pub fn is_proper_coloring(g: &Graph, colors: &[usize], count: usize) -> bool {
    if colors.len() != g.order() {
        return false;
    }
    let mut seen = vec![false; count];
    for v in 0..g.order() {
        if colors[v] >= count {
            return false;
        }
        seen[colors[v]] = true;
        for u in g.neighbors(v).iter() {
            if colors[u] == colors[v] {
                return false;
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Checks that a vertex set is pairwise adjacent.
pub fn is_clique(g: &Graph, set: VertexSet) -> bool {
    set.iter().all(|v| set.without(v).is_subset_of(g.neighbors(v)))
}

/// Checks that a vertex set is pairwise non-adjacent.
pub fn is_independent(g: &Graph, set: VertexSet) -> bool {
    set.iter().all(|v| set.intersection(g.neighbors(v)).is_empty())
}
