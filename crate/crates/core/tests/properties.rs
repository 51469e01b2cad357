//! Property tests: join identities, codec round trips, witness validity,
//! oracle agreement, and denominator-free verdict stability.

mod common;

use common::{oracle_chromatic, oracle_clique, oracle_matching, oracle_min_missed};
use num_rational::Rational64;
use proptest::prelude::*;
use reed_core::bounds::{eval_single, GraphCtx, StatementId, Verdict};
use reed_core::colorings::{greedy_r_partial_coloring, min_missed_r_coloring};
use reed_core::corpus::{canonical_masks, gnp_graph, Counter};
use reed_core::graph::{Graph, VertexSet};
use reed_core::graph6::{from_graph6, to_graph6};
use reed_core::invariants::{
    chromatic_number, clique_number, degree_stats, is_clique, is_independent, is_proper_coloring,
    max_clique, optimal_coloring,
};
use reed_core::matching::{matching_number, maximum_matching, tutte_witness};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let bits = n * (n - 1) / 2;
        (Just(n), 0u64..1u64 << bits).prop_map(|(n, mask)| Graph::from_edge_mask(n, mask))
    })
}

/// Seeded deterministic pair stream used by the heavier loops.
fn seeded_pairs(seed: u64, max_n: usize, count: u64) -> impl Iterator<Item = (Graph, Graph)> {
    let orders = Counter::new(seed, 0xa);
    let seeds = Counter::new(seed, 0xb);
    (0..count).map(move |i| {
        let na = 1 + orders.draw_below(2 * i, max_n as u64) as usize;
        let nb = 1 + orders.draw_below(2 * i + 1, max_n as u64) as usize;
        (
            gnp_graph(na, Rational64::new(1, 2), seeds.draw(2 * i), 0),
            gnp_graph(nb, Rational64::new(1, 2), seeds.draw(2 * i + 1), 0),
        )
    })
}

#[test]
fn join_identities_on_ten_thousand_random_pairs() {
    for (i, (a, b)) in seeded_pairs(0xdead, 8, 10_000).enumerate() {
        let j = Graph::join(&[a.clone(), b.clone()]);
        assert_eq!(j.order(), a.order() + b.order(), "pair {i}: order");
        assert_eq!(
            clique_number(&j),
            clique_number(&a) + clique_number(&b),
            "pair {i}: clique"
        );
        assert_eq!(
            chromatic_number(&j),
            chromatic_number(&a) + chromatic_number(&b),
            "pair {i}: chromatic"
        );
        let (da, _) = degree_stats(&a);
        let (db, _) = degree_stats(&b);
        let (dj, _) = degree_stats(&j);
        assert_eq!(dj, (da + b.order()).max(a.order() + db), "pair {i}: degree");
    }
}

proptest! {
    #[test]
    fn codec_round_trip(g in arb_graph(11)) {
        let line = to_graph6(&g).unwrap();
        prop_assert_eq!(from_graph6(&line).unwrap(), g);
    }

    #[test]
    fn complement_is_involution(g in arb_graph(11)) {
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn join_is_associative(a in arb_graph(5), b in arb_graph(5), c in arb_graph(5)) {
        let nested = Graph::join(&[Graph::join(&[a.clone(), b.clone()]), c.clone()]);
        let flat = Graph::join(&[a, b, c]);
        prop_assert_eq!(nested, flat);
    }

    #[test]
    fn factorization_reassembles(g in arb_graph(8)) {
        prop_assert_eq!(g.join_factorization().reassemble(), g);
    }

    #[test]
    fn factor_complements_are_connected(g in arb_graph(8)) {
        for f in g.join_factorization().factors {
            prop_assert!(f.complement().is_connected());
        }
    }

    #[test]
    fn coloring_witness_verifies(g in arb_graph(8)) {
        let (colors, chi) = optimal_coloring(&g);
        prop_assert!(is_proper_coloring(&g, &colors, chi));
        prop_assert_eq!(chi, chromatic_number(&g));
    }

    #[test]
    fn clique_and_matching_witnesses_verify(g in arb_graph(9)) {
        let clique = max_clique(&g);
        prop_assert!(is_clique(&g, clique));
        let matching = maximum_matching(&g);
        let mut used = VertexSet::EMPTY;
        for (u, v) in matching {
            prop_assert!(g.has_edge(u, v));
            prop_assert!(!used.contains(u) && !used.contains(v));
            used = used.with(u).with(v);
        }
    }

    #[test]
    fn alpha_equals_clique_of_complement(g in arb_graph(9)) {
        prop_assert_eq!(
            reed_core::invariants::independence_number(&g),
            clique_number(&g.complement())
        );
    }

    #[test]
    fn greedy_partial_coloring_is_valid_and_maximal(g in arb_graph(9), r in 1usize..4) {
        let m = greedy_r_partial_coloring(&g, r);
        prop_assert!(m.is_valid_for(&g));
        prop_assert!(m.classes.iter().all(|c| c.len() == r));
        // maximality: no independent r-subset remains among the missed
        let missed: Vec<usize> = m.missed.to_vec();
        let mut exists = false;
        subsets_of_size(&missed, r, &mut |set| {
            exists |= is_independent(&g, set.iter().copied().collect());
        });
        prop_assert!(!exists, "a further size-{r} class exists");
    }

    #[test]
    fn min_missed_coloring_is_valid(g in arb_graph(10)) {
        let mm = min_missed_r_coloring(&g, 3, false).unwrap();
        prop_assert!(mm.exact);
        prop_assert!(mm.coloring.is_valid_for(&g));
    }

    #[test]
    fn random_streams_are_deterministic(seed in any::<u64>(), idx in 0u64..100) {
        let a = gnp_graph(7, Rational64::new(1, 3), seed, idx);
        let b = gnp_graph(7, Rational64::new(1, 3), seed, idx);
        prop_assert_eq!(a, b);
    }
}

fn subsets_of_size(items: &[usize], k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(items: &[usize], k: usize, start: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if acc.len() == k {
            f(acc);
            return;
        }
        for i in start..items.len() {
            acc.push(items[i]);
            rec(items, k, i + 1, acc, f);
            acc.pop();
        }
    }
    rec(items, k, 0, &mut Vec::new(), f);
}

// ---------------------------------------------------------------------------
// Oracle agreement
// ---------------------------------------------------------------------------

#[test]
fn invariants_agree_with_oracles_on_all_n5_graphs() {
    for mask in 0..1u64 << 10 {
        let g = Graph::from_edge_mask(5, mask);
        assert_eq!(chromatic_number(&g), oracle_chromatic(&g), "chi mask {mask}");
        assert_eq!(clique_number(&g), oracle_clique(&g), "omega mask {mask}");
        assert_eq!(matching_number(&g), oracle_matching(&g), "nu mask {mask}");
    }
}

#[test]
fn invariants_agree_with_oracles_on_random_n7_n8() {
    let seeds = Counter::new(0xfeed, 0xc);
    for i in 0..300u64 {
        let n = if i % 2 == 0 { 7 } else { 8 };
        let g = gnp_graph(n, Rational64::new(1, 2), seeds.draw(i), 0);
        assert_eq!(chromatic_number(&g), oracle_chromatic(&g), "chi sample {i}");
        assert_eq!(clique_number(&g), oracle_clique(&g), "omega sample {i}");
        assert_eq!(matching_number(&g), oracle_matching(&g), "nu sample {i}");
    }
}

#[test]
fn min_missed_agrees_with_recursive_oracle_up_to_n5() {
    for n in 1..=5usize {
        for mask in 0..1u64 << (n * (n - 1) / 2) {
            let g = Graph::from_edge_mask(n, mask);
            for r in 2..=3 {
                let mm = min_missed_r_coloring(&g, r, false).unwrap();
                assert_eq!(
                    mm.coloring.missed.len(),
                    oracle_min_missed(&g, r),
                    "n={n} mask={mask} r={r}"
                );
            }
        }
    }
}

#[test]
fn tutte_deficiency_equals_n_minus_twice_nu_on_classes_up_to_n6() {
    for n in 1..=6usize {
        for mask in canonical_masks(n) {
            let g = Graph::from_edge_mask(n, mask);
            let w = tutte_witness(&g);
            assert_eq!(w.deficiency, n - 2 * matching_number(&g), "n={n} mask={mask}");
        }
    }
}

// Recount the witness's odd components from scratch through the public
// component interface.
#[test]
fn tutte_witness_odd_components_recount() {
    for mask in 0..1u64 << 15 {
        let g = Graph::from_edge_mask(6, mask);
        let w = tutte_witness(&g);
        let keep = g.vertices().difference(w.removed);
        let odd = if keep.is_empty() {
            0
        } else {
            g.induced_subgraph(keep)
                .components()
                .iter()
                .filter(|c| c.len() % 2 == 1)
                .count()
        };
        assert_eq!(odd, w.odd_components, "mask {mask}");
        assert_eq!(w.odd_components - w.removed.len(), w.deficiency, "mask {mask}");
    }
}

#[test]
fn tutte_deficiency_on_random_n9_n10() {
    let seeds = Counter::new(0x70, 2);
    for i in 0..200u64 {
        let n = if i % 2 == 0 { 9 } else { 10 };
        let g = gnp_graph(n, Rational64::new(1, 2), seeds.draw(i), 0);
        let w = tutte_witness(&g);
        assert_eq!(w.deficiency, n - 2 * matching_number(&g), "sample {i}");
    }
}

// The factors of a join's factorization never straddle the original parts.
#[test]
fn factorization_of_a_join_refines_the_parts() {
    for (i, (a, b)) in seeded_pairs(0xfade, 6, 500).enumerate() {
        let j = Graph::join(&[a.clone(), b.clone()]);
        let fact = j.join_factorization();
        assert!(fact.factor_count() >= 2, "pair {i}");
        for (orig, &(fi, _)) in fact.vertex_map.iter().enumerate() {
            let part_of_orig = orig >= a.order();
            let factor_verts: Vec<usize> = fact
                .vertex_map
                .iter()
                .enumerate()
                .filter(|(_, &(f, _))| f == fi)
                .map(|(v, _)| v)
                .collect();
            assert!(
                factor_verts.iter().all(|&v| (v >= a.order()) == part_of_orig),
                "pair {i}: factor {fi} straddles the parts"
            );
        }
    }
}

#[test]
fn enumeration_streams_are_reproducible() {
    for n in 1..=5usize {
        let run = || -> String {
            reed_core::corpus::enumerate_labeled(n)
                .map(|g| to_graph6(&g).unwrap())
                .collect::<Vec<_>>()
                .join("\n")
        };
        assert_eq!(run(), run(), "labeled n={n}");
        assert_eq!(canonical_masks(n), canonical_masks(n), "dedup n={n}");
    }
    let stream = |seed| {
        reed_core::corpus::random_gnp(7, Rational64::new(2, 5), seed, 50)
            .map(|g| to_graph6(&g).unwrap())
            .collect::<Vec<_>>()
    };
    assert_eq!(stream(9), stream(9));
    assert_ne!(stream(9), stream(10));
}

// ---------------------------------------------------------------------------
// Missed-vertex structure of minimum-missed colorings
// ---------------------------------------------------------------------------

#[test]
fn min_missed_3_structure_on_all_n6_graphs() {
    for mask in 0..1u64 << 15 {
        let g = Graph::from_edge_mask(6, mask);
        let mm = min_missed_r_coloring(&g, 3, false).unwrap();
        for v in mm.coloring.missed.iter() {
            for class in &mm.coloring.classes {
                assert!(
                    !class.intersection(g.neighbors(v)).is_empty(),
                    "missed {v} sees no vertex of {class} in mask {mask}"
                );
            }
        }
        if !mm.coloring.missed.is_empty() {
            let induced = g.induced_subgraph(mm.coloring.missed);
            assert!(
                reed_core::invariants::independence_number(&induced) <= 2,
                "missed set of mask {mask} has an independent triple"
            );
        }
    }
}

// ---------------------------------------------------------------------------
// Denominator-free verdict recomputation
// ---------------------------------------------------------------------------

/// Recomputes each verdict from the invariant record with all inequalities
/// multiplied through by their denominators, and checks the rational-path
/// verdicts match. Statements with sampled colorings or structural
/// conclusions are covered by their own dedicated tests above.
#[test]
fn verdicts_survive_denominator_free_recomputation() {
    let statements = [
        StatementId::Cor4,
        StatementId::Cor5,
        StatementId::Prop9,
        StatementId::Prop13,
        StatementId::Cor15,
        StatementId::Cor16,
        StatementId::Lemma17,
        StatementId::Prop18,
        StatementId::Cor19,
        StatementId::Lemma20,
        StatementId::Prop24,
        StatementId::Reed,
    ];
    for mask in 0..1u64 << 15 {
        let g = Graph::from_edge_mask(6, mask);
        let ctx = GraphCtx::new(&g);
        let n = 6i64;
        let chi = ctx.chi() as i64;
        let omega = ctx.omega() as i64;
        let alpha = ctx.alpha() as i64;
        let delta = ctx.delta() as i64;
        let nu_co = ctx.nu_complement() as i64;
        let exc2 = 2 * chi - (omega + delta + 1);
        for id in statements {
            let expected = match id {
                StatementId::Cor4 => holds(2 * chi <= omega + n - alpha + 1),
                StatementId::Cor5 => holds(2 * chi <= omega + n),
                StatementId::Prop9 => {
                    if alpha > 2 { Verdict::Vacuous } else { holds(exc2 <= 1) }
                }
                StatementId::Prop13 => holds(4 * chi <= 2 * omega + n + delta + 1),
                StatementId::Cor15 => {
                    if 2 * chi <= n + 1 { Verdict::Vacuous } else { holds(exc2 <= 0) }
                }
                StatementId::Cor16 => {
                    quantified(0, 4, exc2, |h| delta + 1 <= n - h - omega)
                }
                StatementId::Lemma17 => {
                    if alpha > 2 { Verdict::Vacuous } else { holds(omega * omega + omega >= n) }
                }
                StatementId::Prop18 => {
                    let gap = n - delta;
                    if gap > 0 && gap * gap > n + 2 * alpha + 1 {
                        Verdict::Vacuous
                    } else {
                        holds(exc2 <= 1)
                    }
                }
                StatementId::Cor19 => {
                    let gap = n - delta;
                    if gap > 0 && gap * gap > n + 7 {
                        Verdict::Vacuous
                    } else {
                        holds(exc2 <= 1)
                    }
                }
                StatementId::Lemma20 => {
                    quantified(-4, 4, exc2, |h| delta + 1 <= n - h - alpha)
                }
                StatementId::Prop24 => {
                    if 2 * nu_co >= n { Verdict::Vacuous } else { holds(exc2 <= 0) }
                }
                StatementId::Reed => holds(2 * chi <= omega + delta + 1 + (omega + delta + 1) % 2),
                _ => unreachable!(),
            };
            assert_eq!(eval_single(id, &ctx).verdict, expected, "{id} mask {mask}");
        }
    }
}

fn holds(ok: bool) -> Verdict {
    if ok { Verdict::Holds } else { Verdict::Violated }
}

fn quantified(lo: i64, hi: i64, exc2: i64, concl: impl Fn(i64) -> bool) -> Verdict {
    let mut any = false;
    for h in lo..=hi {
        if exc2 > h {
            any = true;
            if !concl(h) {
                return Verdict::Violated;
            }
        }
    }
    if any { Verdict::Holds } else { Verdict::Vacuous }
}

// ---------------------------------------------------------------------------
// Membership is upward closed, matching the all-real-t reading
// ---------------------------------------------------------------------------

#[test]
fn join_stays_in_rt_for_every_window_threshold() {
    use reed_core::half::Half;
    for (i, (a, b)) in seeded_pairs(0xbeef, 7, 500).enumerate() {
        let rb = reed_core::bounds::reed_report(&b);
        let j = Graph::join(&[a.clone(), b.clone()]);
        let rj = reed_core::bounds::reed_report(&j);
        for halves in -4..=4 {
            let t = Half::from_halves(halves);
            if rb.member_of(t) {
                assert!(rj.member_of(t), "pair {i} at t={t}");
            }
        }
    }
}
