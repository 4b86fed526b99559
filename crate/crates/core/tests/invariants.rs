use std::collections::BTreeMap;

use proptest::prelude::*;
use watchwalk::census::enumerate_tournaments;
use watchwalk::domination::{connected_domination_numbers, domination_report, is_dominating_set};
use watchwalk::families::{
    add_sink, add_source, is_simple, paley, random_orientation, random_tournament, score_sequence,
    strongify, transitive, PartitionSpec,
};
use watchwalk::structure::{hamilton_cycle, hamilton_path, strong_components};
use watchwalk::watchman::{
    bipartite_walk_construction, has_watchman_walk, watchman_number_tournament,
};
use watchwalk::{domination_number, watchman_number, Digraph, Error, Tournament, VertexSet};

fn digraph_strategy() -> impl Strategy<Value = Digraph> {
    (1usize..=9).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let mut d = Digraph::new(n).unwrap();
            for u in 0..n {
                for v in 0..n {
                    if u != v && bits[u * n + v] {
                        d.add_arc(u, v).unwrap();
                    }
                }
            }
            d
        })
    })
}

proptest! {
    #[test]
    fn components_partition_and_order(d in digraph_strategy()) {
        let c = strong_components(&d);
        let mut union = VertexSet::EMPTY;
        for comp in &c.components {
            prop_assert!(comp.intersection(union).is_empty());
            prop_assert!(d.induces_strong(*comp));
            union = union.union(*comp);
        }
        prop_assert_eq!(union, d.vertices());
        for (u, v) in d.arcs() {
            prop_assert!(c.component_of[u] <= c.component_of[v]);
        }
    }

    #[test]
    fn report_witnesses_check_out(d in digraph_strategy()) {
        let r = domination_report(&d);
        prop_assert!(is_dominating_set(&d, r.gamma.witness));
        if let Some(t) = r.gamma_t {
            prop_assert!(d.open_dominated_by(t.witness) == d.vertices());
            prop_assert!(r.gamma.size() <= t.size());
        }
        if let Some(wc) = r.gamma_wc {
            prop_assert!(d.induces_weak(wc.witness) && is_dominating_set(&d, wc.witness));
            prop_assert!(r.gamma.size() <= wc.size());
            if let Some(sc) = r.gamma_sc {
                prop_assert!(wc.size() <= sc.size());
            }
        }
        if let Some(sc) = r.gamma_sc {
            prop_assert!(d.induces_strong(sc.witness) && is_dominating_set(&d, sc.witness));
        }
        if let Some(c) = r.gamma_cyc {
            prop_assert!(c.cycle.windows(2).all(|p| d.has_arc(p[0], p[1])));
            prop_assert!(is_dominating_set(&d, c.cycle.iter().copied().collect()));
        }
        // a walk exists exactly when a strongly connected dominating set does
        prop_assert_eq!(has_watchman_walk(&d), r.gamma_sc.is_some());
    }

    #[test]
    fn tournament_condensation_is_transitive(n in 1usize..=16, seed: u64) {
        let t = random_tournament(n, seed).unwrap();
        let c = strong_components(&t);
        let k = c.len();
        prop_assert_eq!(c.quotient.arc_count(), k * (k - 1) / 2);
        for i in 0..k {
            for j in i + 1..k {
                prop_assert!(c.quotient.has_arc(i, j));
            }
        }
        prop_assert_eq!(hamilton_cycle(&t).is_some(), c.is_strong());
        if let Some(h) = hamilton_cycle(&t) {
            if n > 1 {
                prop_assert_eq!(h.len(), n + 1);
                prop_assert!(h.windows(2).all(|p| t.has_arc(p[0], p[1])));
                prop_assert_eq!(h[..n].iter().copied().collect::<VertexSet>(), t.vertices());
            }
        }
    }

    #[test]
    fn fast_path_witnesses_are_vertex_simple(n in 1usize..=12, seed: u64) {
        let t = random_tournament(n, seed).unwrap();
        let r = watchman_number_tournament(&t);
        let walk = r.report.witness.clone().unwrap();
        prop_assert!(walk.is_closed_walk_in(&t) && walk.is_dominating_in(&t));
        prop_assert_eq!(walk.vertex_set().len(), walk.length().max(1));
        prop_assert_eq!(r.gamma, domination_number(&t).size());
    }
}

#[test]
fn hamilton_paths_on_seeded_tournaments() {
    for seed in 0..1000u64 {
        let n = 2 + (seed as usize % 15);
        let t = random_tournament(n, seed).unwrap();
        let p = hamilton_path(&t);
        assert_eq!(p.iter().copied().collect::<VertexSet>(), t.vertices());
        assert!(
            p.windows(2).all(|w| t.has_arc(w[0], w[1])),
            "{}",
            t.to_code()
        );
    }
}

#[test]
fn small_orders_have_small_domination() {
    for n in 1..=7 {
        let big: Vec<Tournament> = enumerate_tournaments(n)
            .unwrap()
            .into_iter()
            .filter(|t| domination_number(t).size() > 2)
            .collect();
        if n < 7 {
            assert!(big.is_empty(), "n={n}");
        } else {
            assert_eq!(big.len(), 1);
            assert_eq!(domination_number(&big[0]).size(), 3);
            assert_eq!(
                watchwalk::canonical_form(&big[0]).unwrap(),
                watchwalk::canonical_form(&paley(7).unwrap()).unwrap()
            );
        }
    }
    for seed in 0..500u64 {
        let n = 7 + (seed as usize % 12);
        let t = random_tournament(n, seed).unwrap();
        assert!(domination_number(&t).size() <= 3, "{}", t.to_code());
    }
}

#[test]
fn simple_means_unique_score_sequence() {
    for n in 1..=7 {
        let reps = enumerate_tournaments(n).unwrap();
        let mut by_score: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for t in &reps {
            *by_score
                .entry(score_sequence(t).scores().to_vec())
                .or_default() += 1;
        }
        for t in &reps {
            let unique = by_score[score_sequence(t).scores()] == 1;
            assert_eq!(is_simple(t), unique, "{}", t.to_code());
        }
    }
}

#[test]
fn only_directed_cycles_carry_walks() {
    for n in 3..=8usize {
        let mut with_walk = 0;
        for mask in 0u32..1 << n {
            let arcs = (0..n).map(|i| {
                let j = (i + 1) % n;
                if mask >> i & 1 == 1 {
                    (i, j)
                } else {
                    (j, i)
                }
            });
            let d = Digraph::from_arcs(n, arcs).unwrap();
            with_walk += usize::from(watchman_number(&d).unwrap().exists);
        }
        // on a triangle the six acyclic orientations have a dominating source
        assert_eq!(with_walk, if n == 3 { 8 } else { 2 }, "n={n}");
    }
}

#[test]
fn strongify_examples() {
    let t = add_sink(&paley(7).unwrap()).unwrap();
    let s = strongify(&t).unwrap();
    assert_eq!(s.n(), 9);
    assert!(strong_components(&s).is_strong());
    assert_eq!(domination_number(&s).size(), 3);
    assert!(t.arcs().all(|(u, v)| s.has_arc(u, v)));
    assert!(matches!(
        strongify(&transitive(5).unwrap()),
        Err(Error::Precondition(_))
    ));
    assert!(strongify(&paley(7).unwrap()).is_err());
    let src = add_source(&paley(7).unwrap()).unwrap();
    assert_eq!(watchman_number_tournament(&src).w(), 0);
}

#[test]
fn orientations_have_no_digons() {
    for seed in 0..200 {
        let spec = PartitionSpec::new(vec![1 + seed as usize % 4, 2, 3]).unwrap();
        let d = random_orientation(&spec, seed);
        assert!(!d.has_digon());
        let parts = spec.parts();
        for p in parts {
            for v in p {
                assert!(d.out(v).intersection(p).is_empty());
            }
        }
    }
}

/// All orientations of `K_{m,k}` (A = 0..m, B = m..m+k) as digraphs.
fn bipartite_orientations(m: usize, k: usize) -> Vec<Digraph> {
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|a| (m..m + k).map(move |b| (a, b)))
        .collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let arcs =
                pairs
                    .iter()
                    .enumerate()
                    .map(|(i, &(a, b))| if mask >> i & 1 == 1 { (a, b) } else { (b, a) });
            Digraph::from_arcs(m + k, arcs).unwrap()
        })
        .collect()
}

#[test]
fn bipartite_construction_smallest_instances() {
    let satisfiable = |m: usize, k: usize| {
        bipartite_orientations(m, k).into_iter().any(|d| {
            let a = VertexSet::full(m);
            let b = d.vertices().difference(a);
            d.min_in_degree() >= 1 && watchwalk::properties::private_dominator(&d, a, b).is_some()
        })
    };
    assert!(!satisfiable(1, 1));
    assert!(!satisfiable(1, 2));
    assert!(satisfiable(2, 2));

    let d = Digraph::from_arcs(4, [(2, 0), (3, 1), (0, 3), (1, 2)]).unwrap();
    let walk = bipartite_walk_construction(
        &d,
        VertexSet::from_iter([0, 1]),
        VertexSet::from_iter([2, 3]),
    )
    .unwrap();
    assert_eq!(walk.length(), 4);
    let r = watchman_number(&d).unwrap();
    assert_eq!(r.w, Some(4));

    // every K_{2,2} instance of the hypothesis has w ≤ 4
    for d in bipartite_orientations(2, 2) {
        let a = VertexSet::full(2);
        let b = d.vertices().difference(a);
        if d.min_in_degree() >= 1 && watchwalk::properties::private_dominator(&d, a, b).is_some() {
            assert!(watchman_number(&d).unwrap().w.unwrap() <= 4);
        }
    }
}

#[test]
fn connected_domination_on_tournaments() {
    for t in enumerate_tournaments(6).unwrap() {
        let (wc, sc) = connected_domination_numbers(&t);
        let g = domination_number(&t).size();
        assert!(wc.unwrap().size() >= g);
        assert!(sc.unwrap().size() >= wc.unwrap().size());
    }
}
