//! Partial colorings by disjoint independent sets with a class-size floor,
//! the minimum-missed search, and the chromatic bounds they certify.

use crate::graph::{Graph, VertexSet};
use crate::invariants::clique_number;
use num_rational::Rational64;
use thiserror::Error;

/// Exact minimum-missed search runs a subset DP; beyond this order only
/// the heuristic is offered.
pub const MIN_MISSED_EXACT_MAX: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("order {n} exceeds the exact minimum-missed threshold {max}; pass allow_heuristic to accept an uncertified result")]
    ExactnessThreshold { n: usize, max: usize },
    #[error("class-size floor r must be at least 1")]
    ZeroFloor,
}

/// Disjoint independent sets of a host graph, each with at least `r`
/// vertices; `missed` is everything in no class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialColoring {
    pub classes: Vec<VertexSet>,
    pub r: usize,
    pub missed: VertexSet,
}

impl PartialColoring {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn covered(&self) -> usize {
        self.classes.iter().map(|c| c.len()).sum()
    }

    /// Checks every structural invariant against the host graph.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut union = VertexSet::EMPTY;
        for class in &self.classes {
            if class.len() < self.r
                || !class.is_subset_of(g.vertices())
                || !crate::invariants::is_independent(g, *class)
                || !union.intersection(*class).is_empty()
            {
                return false;
            }
            union = union.union(*class);
        }
        self.missed == g.vertices().difference(union)
    }
}

/// A minimum-missed coloring plus whether the minimum is certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinMissedColoring {
    pub coloring: PartialColoring,
    pub exact: bool,
}

/// Greedily collects disjoint independent sets of size exactly `r`: the
/// lexicographically first one among the still-missed vertices, repeated
/// until none remains. Maximal by construction and fully deterministic.
pub fn greedy_r_partial_coloring(g: &Graph, r: usize) -> PartialColoring {
    assert!(r >= 1, "class-size floor must be at least 1");
    let mut remaining = g.vertices();
    let mut classes = Vec::new();
    while let Some(class) = first_independent_set_exact(g, remaining, r) {
        remaining = remaining.difference(class);
        classes.push(class);
    }
    PartialColoring { classes, r, missed: remaining }
}

/// Lexicographically first independent subset of `from` with exactly `k`
/// vertices, comparing sorted vertex lists.
fn first_independent_set_exact(g: &Graph, from: VertexSet, k: usize) -> Option<VertexSet> {
    fn extend(g: &Graph, from: VertexSet, next: usize, acc: VertexSet, left: usize) -> Option<VertexSet> {
        if left == 0 {
            return Some(acc);
        }
        for v in from.iter().filter(|&v| v >= next) {
            if acc.intersection(g.neighbors(v)).is_empty() {
                if let Some(found) = extend(g, from, v + 1, acc.with(v), left - 1) {
                    return Some(found);
                }
            }
        }
        None
    }
    extend(g, from, 0, VertexSet::EMPTY, k)
}

/// A partial coloring with classes of size `>= r` missing as few vertices
/// as possible.
///
/// Up to [`MIN_MISSED_EXACT_MAX`] vertices this is a subset DP over the
/// coverable-vertex maximum, with the witness rebuilt by always taking the
/// lexicographically first class that preserves optimality. Beyond the
/// threshold a refusal error is returned unless `allow_heuristic` is set,
/// in which case a greedy construction is returned flagged inexact.
pub fn min_missed_r_coloring(
    g: &Graph,
    r: usize,
    allow_heuristic: bool,
) -> Result<MinMissedColoring, ColoringError> {
    if r < 1 {
        return Err(ColoringError::ZeroFloor);
    }
    let n = g.order();
    if n > MIN_MISSED_EXACT_MAX {
        if !allow_heuristic {
            return Err(ColoringError::ExactnessThreshold { n, max: MIN_MISSED_EXACT_MAX });
        }
        return Ok(MinMissedColoring { coloring: heuristic_min_missed(g, r), exact: false });
    }

    let full = g.vertices().0 as usize;
    // independent[s] for every subset mask s
    let mut independent = vec![false; full + 1];
    independent[0] = true;
    for s in 1..=full {
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        independent[s] = independent[rest] && (g.row(v) as usize & rest) == 0;
    }
    // cover[s]: most vertices of s coverable by disjoint independent
    // classes of size >= r
    let mut cover = vec![0u8; full + 1];
    for s in 1..=full {
        let mut best = 0u8;
        let mut t = s;
        loop {
            if independent[t] {
                let size = t.count_ones() as u8;
                if size as usize >= r {
                    best = best.max(size + cover[s & !t]);
                }
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & s;
        }
        cover[s] = best;
    }

    let mut classes = Vec::new();
    let mut remaining = full;
    while cover[remaining] > 0 {
        let class = first_class_preserving_cover(g, remaining, r, &cover)
            .expect("positive cover admits a class");
        classes.push(VertexSet(class as u64));
        remaining &= !class;
    }
    let coloring = PartialColoring { classes, r, missed: VertexSet(remaining as u64) };
    debug_assert!(coloring.is_valid_for(g));
    Ok(MinMissedColoring { coloring, exact: true })
}

/// Lexicographically first independent subset `c` of `from` with
/// `|c| >= r` and `|c| + cover[from \ c] == cover[from]`, in sorted
/// vertex-list order (prefix-first depth-first search).
fn first_class_preserving_cover(g: &Graph, from: usize, r: usize, cover: &[u8]) -> Option<usize> {
    fn extend(
        g: &Graph,
        from: usize,
        r: usize,
        cover: &[u8],
        next: usize,
        acc: usize,
        acc_size: usize,
    ) -> Option<usize> {
        if acc_size >= r && acc_size as u8 + cover[from & !acc] == cover[from] {
            return Some(acc);
        }
        let mut candidates = from & !((1usize << next) - 1);
        while candidates != 0 {
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            if g.row(v) as usize & acc == 0 {
                if let Some(found) = extend(g, from, r, cover, v + 1, acc | 1 << v, acc_size + 1) {
                    return Some(found);
                }
            }
        }
        None
    }
    extend(g, from, r, cover, 0, 0, 0)
}

/// Greedy fallback above the exactness threshold: exact-size classes
/// first, then each class grown by any still-missed independent vertices.
fn heuristic_min_missed(g: &Graph, r: usize) -> PartialColoring {
    let mut base = greedy_r_partial_coloring(g, r);
    let mut missed = base.missed;
    for class in base.classes.iter_mut() {
        for v in missed.iter().collect::<Vec<_>>() {
            if class.intersection(g.neighbors(v)).is_empty() {
                *class = class.with(v);
                missed = missed.without(v);
            }
        }
    }
    base.missed = missed;
    debug_assert!(base.is_valid_for(g));
    base
}

// ---------------------------------------------------------------------------
// Bounds certified by partial colorings
// ---------------------------------------------------------------------------

/// `(omega + n - sum |I_j| + 2 m - 1) / 2` for a valid collection of
/// disjoint independent sets; an upper bound for chi.
pub fn theorem3_bound(g: &Graph, m: &PartialColoring) -> Rational64 {
    theorem3_bound_parts(clique_number(g), g.order(), m)
}

pub fn theorem3_bound_parts(omega: usize, n: usize, m: &PartialColoring) -> Rational64 {
    let sum: i64 = m.covered() as i64;
    Rational64::new(omega as i64 + n as i64 - sum + 2 * m.class_count() as i64 - 1, 2)
}

/// `(omega + n - (r-2)|M| - 1) / 2` for an r-greedy coloring of a
/// non-complete graph, `|M|` the number of classes. `None` marks the
/// complete-graph case where the bound does not apply.
pub fn lemma11_bound(g: &Graph, m: &PartialColoring) -> Option<Rational64> {
    if g.is_complete() {
        return None;
    }
    Some(lemma11_bound_parts(clique_number(g), g.order(), m))
}

pub fn lemma11_bound_parts(omega: usize, n: usize, m: &PartialColoring) -> Rational64 {
    let r = m.r as i64;
    Rational64::new(
        omega as i64 + n as i64 - (r - 2) * m.class_count() as i64 - 1,
        2,
    )
}

/// `(omega + Delta + 1)/2 + (|M| + 1)/2` for a certified minimum-missed
/// 3-greedy coloring, `|M|` the number of classes.
///
/// Panics if the coloring is not an exact 3-greedy minimum, since the
/// bound's premise is exactly that minimality.
pub fn lemma12_bound(g: &Graph, m: &MinMissedColoring) -> Rational64 {
    assert!(m.exact && m.coloring.r == 3, "needs an exact minimum-missed 3-greedy coloring");
    let (delta, _) = crate::invariants::degree_stats(g);
    lemma12_bound_parts(clique_number(g), delta, m.coloring.class_count())
}

pub fn lemma12_bound_parts(omega: usize, delta: usize, class_count: usize) -> Rational64 {
    Rational64::new(omega as i64 + delta as i64 + class_count as i64 + 2, 2)
}

/// Both coloring-certified bounds at once: the r-greedy bound (`None` on
/// complete graphs) and the minimum-missed bound.
pub fn partial_coloring_bounds(
    g: &Graph,
    m: &MinMissedColoring,
) -> (Option<Rational64>, Rational64) {
    (lemma11_bound(g, &m.coloring), lemma12_bound(g, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::named;
    use crate::invariants::chromatic_number;

    fn g(name: &str) -> Graph {
        named(name).unwrap()
    }

    #[test]
    fn greedy_on_complete_graph_finds_nothing() {
        let m = greedy_r_partial_coloring(&g("complete(5)"), 2);
        assert!(m.classes.is_empty());
        assert_eq!(m.missed.len(), 5);
        assert!(m.is_valid_for(&g("complete(5)")));
    }

    #[test]
    fn greedy_on_c5_misses_one() {
        let graph = g("cycle(5)");
        let m = greedy_r_partial_coloring(&graph, 2);
        assert_eq!(m.class_count(), 2);
        assert_eq!(m.missed.len(), 1);
        assert!(m.is_valid_for(&graph));
        // lexicographically first classes
        assert_eq!(m.classes[0].to_vec(), vec![0, 2]);
        assert_eq!(m.classes[1].to_vec(), vec![1, 3]);
        assert_eq!(m.missed.to_vec(), vec![4]);
    }

    #[test]
    fn greedy_partitions_edgeless_graph() {
        let m = greedy_r_partial_coloring(&Graph::empty(6), 3);
        assert_eq!(m.class_count(), 2);
        assert!(m.missed.is_empty());
    }

    #[test]
    fn min_missed_edgeless_seven() {
        let m = min_missed_r_coloring(&Graph::empty(7), 3, false).unwrap();
        assert!(m.exact);
        assert!(m.coloring.missed.is_empty());
        assert!(m.coloring.is_valid_for(&Graph::empty(7)));
    }

    #[test]
    fn min_missed_complete_graph_misses_all() {
        let m = min_missed_r_coloring(&g("complete(6)"), 3, false).unwrap();
        assert!(m.exact);
        assert_eq!(m.coloring.class_count(), 0);
        assert_eq!(m.coloring.missed.len(), 6);
    }

    #[test]
    fn min_missed_c5_with_floor_three_misses_all() {
        let m = min_missed_r_coloring(&g("cycle(5)"), 3, false).unwrap();
        assert_eq!(m.coloring.class_count(), 0);
        assert_eq!(m.coloring.missed.len(), 5);
    }

    #[test]
    fn min_missed_never_misses_more_than_greedy() {
        for mask in 0..1u64 << 15 {
            let graph = Graph::from_edge_mask(6, mask);
            let exact = min_missed_r_coloring(&graph, 3, false).unwrap();
            let greedy = greedy_r_partial_coloring(&graph, 3);
            assert!(exact.coloring.missed.len() <= greedy.missed.len(), "mask {mask}");
            assert!(exact.coloring.is_valid_for(&graph));
        }
    }

    #[test]
    fn threshold_refusal_and_heuristic() {
        let graph = Graph::empty(13);
        assert_eq!(
            min_missed_r_coloring(&graph, 3, false),
            Err(ColoringError::ExactnessThreshold { n: 13, max: MIN_MISSED_EXACT_MAX })
        );
        let h = min_missed_r_coloring(&graph, 3, true).unwrap();
        assert!(!h.exact);
        assert!(h.coloring.is_valid_for(&graph));
        assert!(h.coloring.missed.is_empty());
    }

    #[test]
    fn theorem3_bound_on_c5() {
        let graph = g("cycle(5)");
        let m = PartialColoring {
            classes: vec![[0, 2].into_iter().collect(), [1, 3].into_iter().collect()],
            r: 2,
            missed: VertexSet::singleton(4),
        };
        assert!(m.is_valid_for(&graph));
        let bound = theorem3_bound(&graph, &m);
        assert_eq!(bound, Rational64::from_integer(3));
        assert_eq!(chromatic_number(&graph), 3);
    }

    #[test]
    fn theorem3_with_no_classes_is_half_omega_plus_n_minus_one() {
        let graph = g("complete(4)");
        let m = PartialColoring { classes: vec![], r: 2, missed: graph.vertices() };
        assert_eq!(theorem3_bound(&graph, &m), Rational64::new(4 + 4 - 1, 2));
    }

    #[test]
    fn lemma11_bound_cases() {
        let graph = g("cycle(5)");
        let m = greedy_r_partial_coloring(&graph, 2);
        assert_eq!(lemma11_bound(&graph, &m), Some(Rational64::from_integer(3)));
        let complete = g("complete(4)");
        let m = greedy_r_partial_coloring(&complete, 2);
        assert_eq!(lemma11_bound(&complete, &m), None);
    }

    #[test]
    fn lemma12_bound_on_c5_is_tight() {
        let graph = g("cycle(5)");
        let m = min_missed_r_coloring(&graph, 3, false).unwrap();
        assert_eq!(lemma12_bound(&graph, &m), Rational64::from_integer(3));
    }

    #[test]
    fn petersen_has_three_disjoint_independent_triples() {
        let graph = g("petersen");
        let m = greedy_r_partial_coloring(&graph, 3);
        assert_eq!(m.class_count(), 3);
        let bound = lemma11_bound(&graph, &m).unwrap();
        assert_eq!(bound, Rational64::from_integer(4));
        assert!(Rational64::from_integer(chromatic_number(&graph) as i64) <= bound);
    }
}
