//! Exact domination numbers: plain, total, cycle, weakly connected and
//! strongly connected.
//!
//! Domination uses closed out-neighbourhoods: `S` dominates `v` when `v ∈ S`
//! or some `u ∈ S` has the arc `u → v`. Every search ascends the set size and
//! walks candidate sets in lexicographic order, so the reported witness is the
//! lexicographically first optimum.

use serde::{Deserialize, Serialize};

use crate::bitset::{for_each_subset, VertexSet};
use crate::digraph::Digraph;

/// A vertex set achieving some domination number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominatingSet {
    pub witness: VertexSet,
}

impl DominatingSet {
    pub fn size(&self) -> usize {
        self.witness.len()
    }
}

/// A dominating directed cycle, stored closed (`c0, …, c_{k-1}, c0`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominatingCycle {
    pub cycle: Vec<usize>,
}

impl DominatingCycle {
    pub fn length(&self) -> usize {
        self.cycle.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominationReport {
    pub gamma: DominatingSet,
    pub gamma_t: Option<DominatingSet>,
    pub gamma_cyc: Option<DominatingCycle>,
    pub gamma_wc: Option<DominatingSet>,
    pub gamma_sc: Option<DominatingSet>,
}

pub fn is_dominating_set(d: &Digraph, s: VertexSet) -> bool {
    d.dominated_by(s) == d.vertices()
}

/// Every vertex has an in-neighbour in `s`.
pub fn is_total_dominating_set(d: &Digraph, s: VertexSet) -> bool {
    d.open_dominated_by(s) == d.vertices()
}

fn greedy_bound(d: &Digraph) -> usize {
    let all = d.vertices();
    let mut covered = VertexSet::EMPTY;
    let mut picked = 0;
    while covered != all {
        let best = (0..d.n())
            .max_by_key(|&v| (d.closed_out(v).difference(covered).len(), usize::MAX - v))
            .expect("nonempty digraph");
        covered = covered.union(d.closed_out(best));
        picked += 1;
    }
    picked
}

fn first_of_size<P>(d: &Digraph, k: usize, pred: P) -> Option<VertexSet>
where
    P: Fn(VertexSet) -> bool,
{
    let mut found = None;
    for_each_subset(d.vertices(), k, |s| {
        if pred(s) {
            found = Some(s);
            true
        } else {
            false
        }
    });
    found
}

fn smallest_from<P>(d: &Digraph, from: usize, pred: P) -> Option<DominatingSet>
where
    P: Fn(VertexSet) -> bool,
{
    (from.max(1)..=d.n())
        .find_map(|k| first_of_size(d, k, &pred))
        .map(|witness| DominatingSet { witness })
}

/// `γ(D)` with the lexicographically first minimum dominating set.
pub fn domination_number(d: &Digraph) -> DominatingSet {
    let bound = greedy_bound(d);
    let witness = (1..=bound)
        .find_map(|k| first_of_size(d, k, |s| is_dominating_set(d, s)))
        .expect("a greedy dominating set of this size exists");
    DominatingSet { witness }
}

/// Every minimum dominating set, in lexicographic order.
pub fn all_minimum_dominating_sets(d: &Digraph) -> Vec<VertexSet> {
    let k = domination_number(d).size();
    let mut sets = Vec::new();
    for_each_subset(d.vertices(), k, |s| {
        if is_dominating_set(d, s) {
            sets.push(s);
        }
        false
    });
    sets
}

/// `γ_t(D)`; absent when some vertex has no in-neighbour at all.
pub fn total_domination_number(d: &Digraph) -> Option<DominatingSet> {
    if !d.sources().is_empty() {
        return None;
    }
    smallest_from(d, 1, |s| is_total_dominating_set(d, s))
}

/// Calls `f` on each simple directed cycle of exactly `len ≥ 2` arcs inside
/// `within`, as an open sequence starting at its smallest vertex. Cycles come
/// in lexicographic order. Returns `true` if `f` stopped the walk.
pub(crate) fn for_each_cycle<F>(d: &Digraph, len: usize, within: VertexSet, mut f: F) -> bool
where
    F: FnMut(&[usize]) -> bool,
{
    debug_assert!(len >= 2);
    let mut path = Vec::with_capacity(len);
    for anchor in within {
        // vertices above the anchor only, so each cycle is met once
        let allowed = within.difference(VertexSet::full(anchor + 1));
        path.clear();
        path.push(anchor);
        if cycle_dfs(
            d,
            len,
            allowed,
            &mut path,
            VertexSet::singleton(anchor),
            &mut f,
        ) {
            return true;
        }
    }
    false
}

fn cycle_dfs<F>(
    d: &Digraph,
    len: usize,
    allowed: VertexSet,
    path: &mut Vec<usize>,
    used: VertexSet,
    f: &mut F,
) -> bool
where
    F: FnMut(&[usize]) -> bool,
{
    let last = *path.last().expect("nonempty");
    let anchor = path[0];
    if path.len() == len {
        return d.has_arc(last, anchor) && f(path);
    }
    for u in d.out(last).intersection(allowed).difference(used) {
        if path.len() + 1 == len && !d.has_arc(u, anchor) {
            continue;
        }
        path.push(u);
        if cycle_dfs(d, len, allowed, path, used.with(u), f) {
            return true;
        }
        path.pop();
    }
    false
}

/// `γ_cyc(D)`: the shortest directed cycle whose vertex set dominates.
pub fn cycle_domination_number(d: &Digraph) -> Option<DominatingCycle> {
    for len in 2..=d.n() {
        let mut hit = None;
        for_each_cycle(d, len, d.vertices(), |c| {
            let s: VertexSet = c.iter().copied().collect();
            if is_dominating_set(d, s) {
                hit = Some(c.to_vec());
                true
            } else {
                false
            }
        });
        if let Some(mut cycle) = hit {
            cycle.push(cycle[0]);
            return Some(DominatingCycle { cycle });
        }
    }
    None
}

/// `(γ_wc(D), γ_sc(D))`, each absent when no such dominating set exists.
pub fn connected_domination_numbers(d: &Digraph) -> (Option<DominatingSet>, Option<DominatingSet>) {
    let gamma = domination_number(d).size();
    let all = d.vertices();
    let weak = d
        .induces_weak(all)
        .then(|| smallest_from(d, gamma, |s| d.induces_weak(s) && is_dominating_set(d, s)))
        .flatten();
    let any_strong = crate::structure::strong_components(d)
        .components
        .iter()
        .any(|&c| is_dominating_set(d, c));
    let strong = any_strong
        .then(|| smallest_from(d, gamma, |s| d.induces_strong(s) && is_dominating_set(d, s)))
        .flatten();
    (weak, strong)
}

pub fn domination_report(d: &Digraph) -> DominationReport {
    let (gamma_wc, gamma_sc) = connected_domination_numbers(d);
    DominationReport {
        gamma: domination_number(d),
        gamma_t: total_domination_number(d),
        gamma_cyc: cycle_domination_number(d),
        gamma_wc,
        gamma_sc,
    }
}
