//! Maximum matchings in general graphs (augmenting paths with blossom
//! contraction), 1-factors, the matching-covered test and maximum-deficiency
//! vertex sets.

use crate::graph::{Graph, VertexSet};
use serde::Serialize;

const NONE: usize = usize::MAX;

/// The mate of each vertex under a maximum matching, or `None` if exposed.
/// Deterministic: free vertices are tried in ascending order and neighbor
/// scans are ascending bitset order.
pub fn maximum_matching_mates(g: &Graph) -> Vec<Option<usize>> {
    let n = g.order();
    let mut mate = vec![NONE; n];
    let mut parent = vec![NONE; n];
    let mut base: Vec<usize> = (0..n).collect();
    for v in 0..n {
        if mate[v] == NONE {
            if let Some(end) = find_augmenting_path(g, v, &mate, &mut parent, &mut base) {
                augment(end, v, &mut mate, &parent);
            }
        }
    }
    mate.into_iter().map(|m| if m == NONE { None } else { Some(m) }).collect()
}

/// A maximum matching as `(u, v)` pairs with `u < v`, ascending.
pub fn maximum_matching(g: &Graph) -> Vec<(usize, usize)> {
    let mates = maximum_matching_mates(g);
    let mut out = Vec::new();
    for (u, m) in mates.iter().enumerate() {
        if let Some(v) = m {
            if u < *v {
                out.push((u, *v));
            }
        }
    }
    out
}

pub fn matching_number(g: &Graph) -> usize {
    maximum_matching(g).len()
}

fn find_augmenting_path(
    g: &Graph,
    start: usize,
    mate: &[usize],
    parent: &mut [usize],
    base: &mut [usize],
) -> Option<usize> {
    let n = g.order();
    for v in 0..n {
        parent[v] = NONE;
        base[v] = v;
    }
    let mut in_tree = vec![false; n];
    in_tree[start] = true;
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(start);
    while let Some(v) = queue.pop_front() {
        let mut nbrs = g.row(v);
        while nbrs != 0 {
            let to = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            if base[v] == base[to] || mate[v] == to {
                continue;
            }
            if to == start || (mate[to] != NONE && parent[mate[to]] != NONE) {
                // odd cycle: contract the blossom at the common base
                let cur = lowest_common_base(v, to, parent, base, mate);
                let mut blossom = vec![false; n];
                mark_blossom_path(v, cur, to, parent, base, mate, &mut blossom);
                mark_blossom_path(to, cur, v, parent, base, mate, &mut blossom);
                for i in 0..n {
                    if blossom[base[i]] {
                        base[i] = cur;
                        if !in_tree[i] {
                            in_tree[i] = true;
                            queue.push_back(i);
                        }
                    }
                }
            } else if parent[to] == NONE {
                parent[to] = v;
                if mate[to] == NONE {
                    return Some(to);
                }
                in_tree[mate[to]] = true;
                queue.push_back(mate[to]);
            }
        }
    }
    None
}

fn lowest_common_base(v: usize, w: usize, parent: &[usize], base: &[usize], mate: &[usize]) -> usize {
    let mut seen = vec![false; parent.len()];
    let mut x = v;
    loop {
        x = base[x];
        seen[x] = true;
        if mate[x] == NONE {
            break;
        }
        x = parent[mate[x]];
    }
    let mut y = w;
    while !seen[base[y]] {
        y = parent[mate[y]];
    }
    base[y]
}

fn mark_blossom_path(
    mut v: usize,
    stop: usize,
    mut child: usize,
    parent: &mut [usize],
    base: &[usize],
    mate: &[usize],
    blossom: &mut [bool],
) {
    while base[v] != stop {
        blossom[base[v]] = true;
        blossom[base[mate[v]]] = true;
        parent[v] = child;
        child = mate[v];
        v = parent[mate[v]];
    }
}

fn augment(mut end: usize, start: usize, mate: &mut [usize], parent: &[usize]) {
    while end != start {
        let prev = parent[end];
        let next = mate[prev];
        mate[end] = prev;
        mate[prev] = end;
        if next == NONE {
            break;
        }
        end = next;
    }
}

/// True iff the graph has a perfect matching.
pub fn has_one_factor(g: &Graph) -> bool {
    g.order() % 2 == 0 && matching_number(g) == g.order() / 2
}

/// True iff every edge lies in some perfect matching. Edgeless graphs are
/// not matching covered by convention.
pub fn is_matching_covered(g: &Graph) -> bool {
    if g.edge_count() == 0 || !has_one_factor(g) {
        return false;
    }
    g.edges().into_iter().all(|(u, v)| {
        if g.order() == 2 {
            return true;
        }
        let rest = g.induced_subgraph(g.vertices().without(u).without(v));
        has_one_factor(&rest)
    })
}

/// A vertex set maximizing `odd components of G - X` minus `|X|`; the
/// maximum equals `n - 2 nu` (Tutte-Berge).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TutteWitness {
    #[serde(serialize_with = "crate::report::serialize_vertex_set")]
    pub removed: VertexSet,
    pub odd_components: usize,
    pub deficiency: usize,
}

/// Exhaustive subset search is exact up to this order; beyond it the
/// witness comes from the Gallai-Edmonds decomposition.
pub const TUTTE_EXHAUSTIVE_MAX: usize = 12;

pub fn tutte_witness(g: &Graph) -> TutteWitness {
    let n = g.order();
    if n <= TUTTE_EXHAUSTIVE_MAX {
        let mut best_x = 0u64;
        let mut best: i64 = i64::MIN;
        let mut best_odd = 0usize;
        let full = g.vertices().0;
        for x in 0..=full {
            let odd = odd_components_within(g, full & !x);
            let value = odd as i64 - (x.count_ones() as i64);
            if value > best {
                best = value;
                best_x = x;
                best_odd = odd;
            }
        }
        TutteWitness {
            removed: VertexSet(best_x),
            odd_components: best_odd,
            deficiency: best as usize,
        }
    } else {
        // inessential vertices: removing one keeps the matching number
        let nu = matching_number(g);
        let mut d = VertexSet::EMPTY;
        for v in 0..n {
            if matching_number(&g.remove_vertex(v)) == nu {
                d = d.with(v);
            }
        }
        let mut a = VertexSet::EMPTY;
        for v in d.iter() {
            a = a.union(g.neighbors(v));
        }
        let a = a.difference(d);
        let odd = odd_components_within(g, g.vertices().difference(a).0);
        TutteWitness {
            removed: a,
            odd_components: odd,
            deficiency: odd - a.len(),
        }
    }
}

/// Number of odd-order components of the subgraph induced by `within`.
fn odd_components_within(g: &Graph, within: u64) -> usize {
    let mut rest = within;
    let mut odd = 0usize;
    while rest != 0 {
        let start = rest.trailing_zeros() as usize;
        let mut comp = 1u64 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0u64;
            let mut bits = frontier;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                next |= g.row(v) & within;
            }
            frontier = next & !comp;
            comp |= frontier;
        }
        if comp.count_ones() % 2 == 1 {
            odd += 1;
        }
        rest &= !comp;
    }
    odd
}
