//! Brute-force oracles for the watchman engines: enumerate closed walks of
//! increasing length and collect the dominating ones up to rotation.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use watchwalk::census::enumerate_tournaments;
use watchwalk::domination::is_dominating_set;
use watchwalk::families::{circulant, fig2_windmill, paley, windmill_v};
use watchwalk::watchman::{shortest_closed_walk_through, watchman_number_semicomplete};
use watchwalk::{watchman_number, Digraph, VertexSet};

fn min_rotation(w: &[usize]) -> Vec<usize> {
    (0..w.len())
        .map(|r| w[r..].iter().chain(&w[..r]).copied().collect::<Vec<_>>())
        .min()
        .unwrap()
}

fn closed_walks(d: &Digraph, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(d: &Digraph, k: usize, walk: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        let last = *walk.last().unwrap();
        if walk.len() == k {
            if d.has_arc(last, walk[0]) {
                f(walk);
            }
            return;
        }
        for v in d.out(last) {
            walk.push(v);
            go(d, k, walk, f);
            walk.pop();
        }
    }
    for s in 0..d.n() {
        let mut walk = vec![s];
        go(d, k, &mut walk, f);
    }
}

/// Some vertex set inducing a strong subdigraph dominates.
fn oracle_exists(d: &Digraph) -> bool {
    (1u64..1 << d.n()).map(VertexSet).any(|s| {
        let strong = s.iter().all(|v| {
            let from = d.reach_within(VertexSet::singleton(v), s);
            from == s
        });
        strong && is_dominating_set(d, s)
    })
}

/// `(w, m)` by walk enumeration, or `None` when no closed dominating walk exists.
fn oracle(d: &Digraph) -> Option<(usize, u64)> {
    if !oracle_exists(d) {
        return None;
    }
    let single = (0..d.n())
        .filter(|&v| is_dominating_set(d, VertexSet::singleton(v)))
        .count();
    if single > 0 {
        return Some((0, single as u64));
    }
    for k in 2.. {
        let mut classes = BTreeSet::new();
        closed_walks(d, k, &mut |w| {
            if is_dominating_set(d, w.iter().copied().collect()) {
                classes.insert(min_rotation(w));
            }
        });
        if !classes.is_empty() {
            return Some((k, classes.len() as u64));
        }
    }
    unreachable!()
}

fn engine(d: &Digraph) -> Option<(usize, u64)> {
    let r = watchman_number(d).unwrap();
    assert_eq!(r.exists, r.w.is_some());
    if let Some(walk) = &r.witness {
        assert!(walk.is_closed_walk_in(d) && walk.is_dominating_in(d));
        assert_eq!(Some(walk.length()), r.w);
    }
    r.w.map(|w| (w, r.multiplicity.unwrap()))
}

#[test]
fn figure_values_by_enumeration() {
    let windmill = fig2_windmill();
    assert_eq!(oracle(&windmill).map(|x| x.0), Some(8));
    assert_eq!(engine(&windmill), oracle(&windmill));

    let c = circulant(7, &[1, 2, 3]).unwrap();
    assert_eq!(oracle(&c), Some((3, 14)));
    assert_eq!(engine(&c), Some((3, 14)));

    let p = paley(7).unwrap();
    assert_eq!(oracle(&p), Some((3, 7)));
    assert_eq!(engine(&p), Some((3, 7)));
}

#[test]
fn windmill_walk_through_strong_set() {
    let w = fig2_windmill();
    let s: VertexSet = (1..=7).map(windmill_v).collect();
    let walk = shortest_closed_walk_through(&w, s).unwrap().unwrap();
    assert_eq!(walk.length(), 9);
    assert!(walk.is_closed_walk_in(&w) && s.is_subset(walk.vertex_set()));
    // no closed walk of length 8 or less covers the seven blade vertices
    for k in 2..=8 {
        closed_walks(&w, k, &mut |c| {
            let seen: VertexSet = c.iter().copied().collect();
            assert!(!s.is_subset(seen), "walk {c:?}");
        });
    }
}

#[test]
fn small_tournaments_match_oracle() {
    for n in 1..=6 {
        for t in enumerate_tournaments(n).unwrap() {
            let o = oracle(&t);
            assert_eq!(engine(&t), o, "{}", t.to_code());
            let fast = watchman_number_semicomplete(&t).unwrap().report;
            assert_eq!(fast.w.zip(fast.multiplicity), o, "{}", t.to_code());
        }
    }
}

#[test]
fn random_digraphs_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut with_walk = 0;
    for _ in 0..400 {
        let n = rng.gen_range(1..=5);
        let p = rng.gen_range(0.2..0.7);
        let mut d = Digraph::new(n).unwrap();
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.gen_bool(p) {
                    d.add_arc(u, v).unwrap();
                }
            }
        }
        let o = oracle(&d);
        with_walk += usize::from(o.is_some());
        assert_eq!(engine(&d), o, "{}", d.to_edge_list());
    }
    assert!(with_walk > 100);
}

#[test]
fn random_semicomplete_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let n = rng.gen_range(2..=6);
        let mut d = Digraph::new(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                match rng.gen_range(0..4) {
                    0 => {
                        d.add_arc(u, v).unwrap();
                        d.add_arc(v, u).unwrap();
                    }
                    1 => d.add_arc(u, v).unwrap(),
                    _ => d.add_arc(v, u).unwrap(),
                }
            }
        }
        let o = oracle(&d);
        let fast = watchman_number_semicomplete(&d).unwrap().report;
        assert_eq!(fast.w.zip(fast.multiplicity), o, "{}", d.to_edge_list());
    }
}
