//! Closed dominating walks: existence, the watchman number, witnesses,
//! multiplicity and set-constrained shortest closed walks.
//!
//! Multiplicity counts minimum closed dominating walks up to rotation. Walks
//! of minimum length are never periodic, so each rotation class has exactly
//! as many anchored copies as the anchor has occurrences on the walk; the
//! generic engine tracks that occurrence count to divide it back out.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::digraph::{Digraph, Tournament};
use crate::domination::{all_minimum_dominating_sets, for_each_cycle, is_dominating_set};
use crate::error::{Error, Result};
use crate::structure::{strong_components, unique_source_component};

/// Default vertex cap of the state-space engines (`n · 2ⁿ` states).
pub const GENERIC_ENGINE_CAP: usize = 24;

/// Engine caps after applying the `WATCHWALK_MAX_N` override, which can only
/// lower them.
pub fn generic_engine_cap() -> usize {
    lowered_cap(GENERIC_ENGINE_CAP)
}

pub(crate) fn lowered_cap(default: usize) -> usize {
    std::env::var("WATCHWALK_MAX_N")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map_or(default, |v| v.min(default))
}

/// A closed walk `v0, …, vk` with `vk = v0`; a single vertex is a walk of
/// length 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Walk {
    pub vertices: Vec<usize>,
}

impl Walk {
    pub fn length(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    /// Arcs along the walk exist and it returns to its start.
    pub fn is_closed_walk_in(&self, d: &Digraph) -> bool {
        match (self.vertices.first(), self.vertices.last()) {
            (Some(a), Some(b)) if a == b => self.vertices.windows(2).all(|w| d.has_arc(w[0], w[1])),
            _ => false,
        }
    }

    pub fn is_dominating_in(&self, d: &Digraph) -> bool {
        is_dominating_set(d, self.vertex_set())
    }

    fn closed(mut open: Vec<usize>) -> Walk {
        open.push(open[0]);
        Walk { vertices: open }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkReport {
    pub exists: bool,
    pub w: Option<usize>,
    pub witness: Option<Walk>,
    pub multiplicity: Option<u64>,
}

impl WalkReport {
    fn none() -> Self {
        WalkReport {
            exists: false,
            w: None,
            witness: None,
            multiplicity: None,
        }
    }

    fn found(witness: Walk, multiplicity: u64) -> Self {
        WalkReport {
            exists: true,
            w: Some(witness.length()),
            witness: Some(witness),
            multiplicity: Some(multiplicity),
        }
    }
}

/// Fast-path result for tournaments and semicomplete digraphs: the walk
/// report together with the domination number computed along the way.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TournamentWalk {
    pub report: WalkReport,
    pub gamma: usize,
}

impl TournamentWalk {
    pub fn w(&self) -> usize {
        self.report
            .w
            .expect("tournaments always have a watchman's walk")
    }

    pub fn multiplicity(&self) -> u64 {
        self.report
            .multiplicity
            .expect("tournaments always have a watchman's walk")
    }
}

/// True iff some maximal strong component dominates the whole digraph.
pub fn has_watchman_walk(d: &Digraph) -> bool {
    strong_components(d)
        .components
        .iter()
        .any(|&c| is_dominating_set(d, c))
}

/// For digraphs with at least one source: a walk exists iff there is exactly
/// one source and it beats every other vertex.
pub fn source_criterion(d: &Digraph) -> Result<bool> {
    let sources = d.sources();
    if sources.is_empty() {
        return Err(Error::Precondition(
            "source criterion needs a digraph with a source vertex".into(),
        ));
    }
    Ok(sources.len() == 1 && d.out_degree(sources.first().expect("nonempty")) == d.n() - 1)
}

fn dominating_vertices(d: &Digraph) -> VertexSet {
    let all = d.vertices();
    (0..d.n()).filter(|&v| d.closed_out(v) == all).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct State {
    at: u8,
    seen: u64,
    /// Occurrences of the anchor so far, not counting the closing return.
    anchor_visits: u16,
}

struct AnchorSearch {
    length: usize,
    /// Anchored walks grouped by anchor occurrence count.
    by_visits: Vec<(u16, u128)>,
    walk: Vec<usize>,
}

/// Shortest closed dominating walks whose smallest vertex is `anchor`,
/// giving up beyond `limit` arcs.
fn search_anchor(d: &Digraph, anchor: usize, limit: usize) -> Option<AnchorSearch> {
    let all = d.vertices().bits();
    // only vertices at or above the anchor may appear
    let allowed = d.vertices().difference(VertexSet::full(anchor));
    let start = State {
        at: anchor as u8,
        seen: d.closed_out(anchor).bits(),
        anchor_visits: 1,
    };
    let mut layers: Vec<HashMap<State, u128>> = vec![HashMap::from([(start, 1u128)])];
    let mut goals: Vec<(State, u128)> = Vec::new();
    for step in 1..=limit {
        let prev = layers.last().expect("nonempty");
        let mut next: HashMap<State, u128> = HashMap::new();
        for (&s, &count) in prev {
            for u in d.out(s.at as usize).intersection(allowed) {
                let seen = s.seen | d.closed_out(u).bits();
                if u == anchor {
                    if seen == all {
                        goals.push((s, count));
                        continue;
                    }
                    *next
                        .entry(State {
                            at: u as u8,
                            seen,
                            anchor_visits: s.anchor_visits + 1,
                        })
                        .or_default() += count;
                } else {
                    *next
                        .entry(State {
                            at: u as u8,
                            seen,
                            anchor_visits: s.anchor_visits,
                        })
                        .or_default() += count;
                }
            }
        }
        if !goals.is_empty() {
            let mut by_visits: HashMap<u16, u128> = HashMap::new();
            for &(s, c) in &goals {
                *by_visits.entry(s.anchor_visits).or_default() += c;
            }
            let mut by_visits: Vec<(u16, u128)> = by_visits.into_iter().collect();
            by_visits.sort_unstable();
            let walk = least_walk(d, anchor, &layers, &goals, step);
            return Some(AnchorSearch {
                length: step,
                by_visits,
                walk,
            });
        }
        if next.is_empty() {
            return None;
        }
        layers.push(next);
    }
    None
}

/// Lexicographically least anchored walk among the optimal ones.
fn least_walk(
    d: &Digraph,
    anchor: usize,
    layers: &[HashMap<State, u128>],
    goals: &[(State, u128)],
    length: usize,
) -> Vec<usize> {
    // mark layer states that lie on some optimal walk, last layer first
    let mut alive: Vec<HashSet<State>> = vec![HashSet::new(); layers.len()];
    for &(s, _) in goals {
        alive[length - 1].insert(s);
    }
    let allowed = d.vertices().difference(VertexSet::full(anchor));
    for i in (0..length - 1).rev() {
        let mut keep = HashSet::new();
        for &s in layers[i].keys() {
            let live = d
                .out(s.at as usize)
                .intersection(allowed)
                .iter()
                .any(|u| alive[i + 1].contains(&successor(d, anchor, s, u)));
            if live {
                keep.insert(s);
            }
        }
        alive[i] = keep;
    }
    let mut walk = vec![anchor];
    let mut s = *layers[0].keys().next().expect("start state");
    for next_alive in alive.iter().skip(1).take(length - 1) {
        let (u, t) = d
            .out(s.at as usize)
            .intersection(allowed)
            .iter()
            .map(|u| (u, successor(d, anchor, s, u)))
            .find(|(_, t)| next_alive.contains(t))
            .expect("an alive state has an alive successor");
        walk.push(u);
        s = t;
    }
    walk
}

fn successor(d: &Digraph, anchor: usize, s: State, u: usize) -> State {
    State {
        at: u as u8,
        seen: s.seen | d.closed_out(u).bits(),
        anchor_visits: s.anchor_visits + u16::from(u == anchor),
    }
}

/// Exact watchman number of an arbitrary digraph by breadth-first search over
/// `(vertex, dominated set)` states, one anchor at a time.
pub fn watchman_number(d: &Digraph) -> Result<WalkReport> {
    let cap = generic_engine_cap();
    if d.n() > cap {
        return Err(Error::EngineCap {
            engine: "generic watchman engine",
            cap,
            n: d.n(),
        });
    }
    let dom = dominating_vertices(d);
    if let Some(v) = dom.first() {
        return Ok(WalkReport::found(
            Walk { vertices: vec![v] },
            dom.len() as u64,
        ));
    }
    if !has_watchman_walk(d) {
        return Ok(WalkReport::none());
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut total: u128 = 0;
    for anchor in 0..d.n() {
        // a walk anchored here stays in the anchor's strong component above it
        let above = d.vertices().difference(VertexSet::full(anchor));
        let seed = VertexSet::singleton(anchor);
        let comp = d
            .reach_within(seed, above)
            .intersection(d.coreach_within(seed, above));
        if comp.len() < 2 || !is_dominating_set(d, comp) {
            continue;
        }
        let limit = best.as_ref().map_or(usize::MAX, |(len, _)| *len);
        let Some(found) = search_anchor(d, anchor, limit.min(comp.len() * comp.len())) else {
            continue;
        };
        let classes: u128 = found
            .by_visits
            .iter()
            .map(|&(k, c)| {
                debug_assert_eq!(
                    c % k as u128,
                    0,
                    "aperiodic walks come in full rotation orbits"
                );
                c / k as u128
            })
            .sum();
        match &best {
            Some((len, _)) if *len == found.length => total += classes,
            Some((len, _)) if *len < found.length => {}
            _ => {
                best = Some((found.length, found.walk));
                total = classes;
            }
        }
    }
    let (_, walk) = best.expect("a dominating strong component yields a closed dominating walk");
    Ok(WalkReport::found(
        Walk::closed(walk),
        u64::try_from(total).expect("multiplicity fits in 64 bits"),
    ))
}

/// Fast path for tournaments: works inside the dominating strong component,
/// where `w` is `γ` when some minimum dominating set induces a strong
/// subtournament and `γ + 1` otherwise; minimum walks are dominating cycles
/// of length `w`, counted by anchored enumeration.
pub fn watchman_number_tournament(t: &Tournament) -> TournamentWalk {
    watchman_number_semicomplete(t).expect("tournaments are semicomplete")
}

/// The fast path for semicomplete digraphs (digons allowed).
pub fn watchman_number_semicomplete(d: &Digraph) -> Result<TournamentWalk> {
    if !d.is_semicomplete() {
        return Err(Error::Precondition(
            "fast path needs a semicomplete digraph".into(),
        ));
    }
    let dom = dominating_vertices(d);
    if let Some(v) = dom.first() {
        return Ok(TournamentWalk {
            report: WalkReport::found(Walk { vertices: vec![v] }, dom.len() as u64),
            gamma: 1,
        });
    }
    let top =
        unique_source_component(d).expect("condensation of a semicomplete digraph is transitive");
    let (sub, map) = d.induced(top)?;
    // outside vertices are all beaten by the top component, so γ(D) = γ(sub)
    let min_sets = all_minimum_dominating_sets(&sub);
    let gamma = min_sets[0].len();
    let strong_set = min_sets.iter().any(|&s| sub.induces_strong(s));
    let w = if strong_set { gamma } else { gamma + 1 };

    let mut count = 0u64;
    let mut witness = None;
    for_each_cycle(&sub, w, sub.vertices(), |c| {
        let s: VertexSet = c.iter().copied().collect();
        if is_dominating_set(&sub, s) {
            if witness.is_none() {
                witness = Some(c.iter().map(|&v| map[v]).collect::<Vec<_>>());
            }
            count += 1;
        }
        false
    });
    let witness = witness.expect("a dominating cycle of length w exists");
    Ok(TournamentWalk {
        report: WalkReport::found(Walk::closed(witness), count),
        gamma,
    })
}

/// Minimum-length closed walk through every vertex of `s`; other vertices may
/// be used. Absent when `s` is not inside one strong component.
pub fn shortest_closed_walk_through(d: &Digraph, s: VertexSet) -> Result<Option<Walk>> {
    let n = d.n();
    let cap = generic_engine_cap();
    if n > cap {
        return Err(Error::EngineCap {
            engine: "closed-walk dynamic program",
            cap,
            n,
        });
    }
    if s.is_empty() {
        return Err(Error::InvalidArgument("target set must be nonempty".into()));
    }
    if !s.is_subset(d.vertices()) {
        let v = s.difference(d.vertices()).first().expect("nonempty");
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    let targets = s.to_vec();
    if targets.len() == 1 {
        return Ok(Some(Walk {
            vertices: targets.clone(),
        }));
    }
    let c = strong_components(d);
    let comp = c.component_of[targets[0]];
    if targets.iter().any(|&v| c.component_of[v] != comp) {
        return Ok(None);
    }

    // breadth-first shortest paths between targets, lowest index first
    let paths: Vec<Vec<Vec<usize>>> = targets.iter().map(|&a| bfs_paths(d, a)).collect();
    let k = targets.len();
    let dist = |i: usize, j: usize| paths[i][targets[j]].len() - 1;

    // dp[mask][j]: shortest walk from targets[0] covering mask, ending at targets[j]
    const INF: usize = usize::MAX / 4;
    let full = (1usize << k) - 1;
    let mut dp = vec![vec![INF; k]; 1 << k];
    let mut parent = vec![vec![usize::MAX; k]; 1 << k];
    dp[1][0] = 0;
    for mask in 1..=full {
        if mask & 1 == 0 {
            continue;
        }
        for j in 0..k {
            let cur = dp[mask][j];
            if cur == INF {
                continue;
            }
            for nxt in 1..k {
                if mask >> nxt & 1 == 1 {
                    continue;
                }
                let m2 = mask | 1 << nxt;
                let cand = cur + dist(j, nxt);
                if cand < dp[m2][nxt] {
                    dp[m2][nxt] = cand;
                    parent[m2][nxt] = j;
                }
            }
        }
    }
    let (end, _) = (1..k)
        .map(|j| (j, dp[full][j] + dist(j, 0)))
        .min_by_key(|&(j, len)| (len, j))
        .expect("at least two targets");
    let mut order = vec![end];
    let mut mask = full;
    let mut j = end;
    while j != 0 {
        let p = parent[mask][j];
        mask &= !(1 << j);
        j = p;
        order.push(j);
    }
    order.reverse();
    order.push(0);
    let mut vertices = vec![targets[0]];
    for w in order.windows(2) {
        vertices.extend_from_slice(&paths[w[0]][targets[w[1]]][1..]);
    }
    Ok(Some(Walk { vertices }))
}

/// Shortest path from `a` to every vertex (empty when unreachable).
fn bfs_paths(d: &Digraph, a: usize) -> Vec<Vec<usize>> {
    let n = d.n();
    let mut prev = vec![usize::MAX; n];
    let mut seen = VertexSet::singleton(a);
    let mut queue = std::collections::VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        for y in d.out(x).difference(seen) {
            seen.insert(y);
            prev[y] = x;
            queue.push_back(y);
        }
    }
    (0..n)
        .map(|v| {
            if !seen.contains(v) {
                return Vec::new();
            }
            let mut p = vec![v];
            let mut x = v;
            while x != a {
                x = prev[x];
                p.push(x);
            }
            p.reverse();
            p
        })
        .collect()
}

/// The closed walk `u1, v1, u2, v2, …, um, vm, u1` through a side `A` of an
/// orientation of a complete bipartite graph, where `U ⊆ B` dominates each
/// vertex of `A` exactly once and each member of `U` beats exactly one vertex
/// of `A`.
pub fn bipartite_walk_construction(d: &Digraph, side_a: VertexSet, u: VertexSet) -> Result<Walk> {
    let all = d.vertices();
    let side_b = all.difference(side_a);
    if side_a.is_empty() || side_b.is_empty() || !side_a.is_subset(all) {
        return Err(Error::InvalidArgument("both sides must be nonempty".into()));
    }
    for x in all {
        let same = if side_a.contains(x) { side_a } else { side_b };
        let other = all.difference(same);
        if !d.out(x).intersection(same).is_empty() {
            return Err(Error::InvalidArgument(format!(
                "vertex {x} has an arc inside its own side"
            )));
        }
        for y in other {
            if d.has_arc(x, y) == d.has_arc(y, x) {
                return Err(Error::InvalidArgument(format!(
                    "pair {x}, {y} is not oriented exactly once"
                )));
            }
        }
    }
    if d.min_in_degree() < 1 {
        return Err(Error::Precondition(
            "construction needs minimum in-degree 1".into(),
        ));
    }
    if !u.is_subset(side_b) {
        return Err(Error::Precondition("U must lie in side B".into()));
    }
    let mut dominator = vec![usize::MAX; d.n()];
    for a in side_a {
        let hits = d.in_set(a).intersection(u);
        if hits.len() != 1 {
            return Err(Error::Precondition(format!(
                "vertex {a} of side A is dominated by {} members of U, expected exactly one",
                hits.len()
            )));
        }
        dominator[a] = hits.first().expect("one hit");
    }
    for x in u {
        if d.out(x).intersection(side_a).len() != 1 {
            return Err(Error::Precondition(format!(
                "member {x} of U must beat exactly one vertex of side A"
            )));
        }
    }
    let mut open = Vec::with_capacity(2 * side_a.len());
    for a in side_a {
        open.push(dominator[a]);
        open.push(a);
    }
    let walk = Walk::closed(open);
    debug_assert!(walk.is_closed_walk_in(d) && walk.is_dominating_in(d));
    Ok(walk)
}
