//! Strong components, condensations and Hamiltonian machinery for tournaments.

use crate::bitset::VertexSet;
use crate::digraph::{Digraph, Tournament};
use crate::error::{Error, Result};

/// The quotient of a digraph by its maximal strongly connected components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condensation {
    /// Components in topological order, sources first.
    pub components: Vec<VertexSet>,
    /// Acyclic digraph on component indices.
    pub quotient: Digraph,
    /// Component index of every vertex.
    pub component_of: Vec<usize>,
}

impl Condensation {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_strong(&self) -> bool {
        self.components.len() == 1
    }

    /// Components with no incoming quotient arc.
    pub fn source_components(&self) -> Vec<usize> {
        let q = &self.quotient;
        let sources = q.sources();
        sources.to_vec()
    }
}

/// Maximal strong components, ordered topologically with ties broken by the
/// smallest member vertex.
pub fn strong_components(d: &Digraph) -> Condensation {
    let n = d.n();
    let all = d.vertices();
    let mut unassigned = all;
    let mut found = Vec::new();
    while let Some(v) = unassigned.first() {
        let seed = VertexSet::singleton(v);
        let comp = d
            .reach_within(seed, all)
            .intersection(d.coreach_within(seed, all));
        found.push(comp);
        unassigned = unassigned.difference(comp);
    }

    // Kahn's algorithm over the component DAG, smallest ready component first.
    let k = found.len();
    let mut raw_of = vec![0usize; n];
    for (i, c) in found.iter().enumerate() {
        for v in c.iter() {
            raw_of[v] = i;
        }
    }
    let mut succ = vec![VertexSet::EMPTY; k];
    let mut indeg = vec![0usize; k];
    for (u, v) in d.arcs() {
        let (a, b) = (raw_of[u], raw_of[v]);
        if a != b && !succ[a].contains(b) {
            succ[a].insert(b);
            indeg[b] += 1;
        }
    }
    let mut order = Vec::with_capacity(k);
    let mut ready: VertexSet = (0..k).filter(|&i| indeg[i] == 0).collect();
    while let Some(c) = ready.first() {
        ready.remove(c);
        order.push(c);
        for s in succ[c] {
            indeg[s] -= 1;
            if indeg[s] == 0 {
                ready.insert(s);
            }
        }
    }
    debug_assert_eq!(order.len(), k);

    let mut rank = vec![0usize; k];
    for (pos, &c) in order.iter().enumerate() {
        rank[c] = pos;
    }
    let components: Vec<VertexSet> = order.iter().map(|&c| found[c]).collect();
    let component_of: Vec<usize> = raw_of.iter().map(|&c| rank[c]).collect();
    let mut quotient = Digraph::new(k).expect("component count within vertex cap");
    for (a, s) in succ.iter().enumerate() {
        for b in s.iter() {
            quotient
                .add_arc(rank[a], rank[b])
                .expect("distinct components");
        }
    }
    Condensation {
        components,
        quotient,
        component_of,
    }
}

/// The strong component at the source of a tournament's condensation.
pub fn dominating_strong_component(t: &Tournament) -> VertexSet {
    strong_components(t).components[0]
}

/// Source component of a semicomplete digraph's condensation, if unique.
pub(crate) fn unique_source_component(d: &Digraph) -> Option<VertexSet> {
    let c = strong_components(d);
    match c.source_components().as_slice() {
        [only] => Some(c.components[*only]),
        _ => None,
    }
}

/// Hamilton path by insertion: vertices are taken in index order and each is
/// placed at the first position where it fits.
pub fn hamilton_path(t: &Tournament) -> Vec<usize> {
    let mut path: Vec<usize> = Vec::with_capacity(t.n());
    for v in 0..t.n() {
        let pos = (0..=path.len())
            .find(|&p| {
                let after_ok = p == path.len() || t.has_arc(v, path[p]);
                let before_ok = p == 0 || t.has_arc(path[p - 1], v);
                after_ok && before_ok
            })
            .expect("a tournament always admits an insertion point");
        path.insert(pos, v);
    }
    path
}

/// A Hamilton cycle as a closed sequence `c0, …, c_{n-1}, c0`, present exactly
/// when the tournament is strong. A single vertex yields `[0]`.
pub fn hamilton_cycle(t: &Tournament) -> Option<Vec<usize>> {
    let n = t.n();
    if n == 1 {
        return Some(vec![0]);
    }
    if !t.induces_strong(t.vertices()) {
        return None;
    }
    let mut cycle = first_triangle(t, t.vertices())?;
    loop {
        let on_cycle: VertexSet = cycle.iter().copied().collect();
        let outside = t.vertices().difference(on_cycle);
        if outside.is_empty() {
            break;
        }
        let k = cycle.len();
        // a vertex with both an in- and out-neighbour on the cycle slots in
        let mut inserted = false;
        for v in outside {
            if let Some(i) =
                (0..k).find(|&i| t.has_arc(cycle[i], v) && t.has_arc(v, cycle[(i + 1) % k]))
            {
                cycle.insert(i + 1, v);
                inserted = true;
                break;
            }
        }
        if inserted {
            continue;
        }
        // every outside vertex is beaten by the whole cycle or beats all of it
        let beaten: VertexSet = outside.iter().filter(|&v| t.has_arc(cycle[0], v)).collect();
        let beating = outside.difference(beaten);
        let (x, y) = beaten
            .iter()
            .find_map(|x| t.out(x).intersection(beating).first().map(|y| (x, y)))
            .expect("strong tournament has an arc from the beaten side to the beating side");
        // c0 → x → y → c2 … ; c1 is left over and re-inserted next round
        cycle.remove(1);
        cycle.insert(1, x);
        cycle.insert(2, y);
    }
    let start = cycle[0];
    cycle.push(start);
    Some(cycle)
}

fn first_triangle(t: &Tournament, within: VertexSet) -> Option<Vec<usize>> {
    for a in within {
        for b in t.out(a).intersection(within) {
            if let Some(c) = t
                .out(b)
                .intersection(within)
                .intersection(t.in_set(a))
                .first()
            {
                return Some(vec![a, b, c]);
            }
        }
    }
    None
}

/// A `k`-cycle through `v` as a closed sequence starting and ending at `v`.
pub fn cycle_through_vertex(t: &Tournament, v: usize, k: usize) -> Result<Option<Vec<usize>>> {
    let n = t.n();
    if v >= n {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    if k < 3 || k > n {
        return Err(Error::InvalidArgument(format!(
            "cycle length must lie in 3..={n}, got {k}"
        )));
    }
    let c = strong_components(t);
    let comp = c.components[c.component_of[v]];
    if comp.len() < k {
        return Ok(None);
    }
    let mut path = vec![v];
    Ok(
        extend_cycle(t, comp, k, &mut path, VertexSet::singleton(v)).then(|| {
            path.push(v);
            path
        }),
    )
}

fn extend_cycle(
    t: &Tournament,
    within: VertexSet,
    k: usize,
    path: &mut Vec<usize>,
    used: VertexSet,
) -> bool {
    let last = *path.last().expect("path is never empty");
    let start = path[0];
    if path.len() == k {
        return t.has_arc(last, start);
    }
    let remaining = k - path.len();
    let candidates = t.out(last).intersection(within).difference(used);
    for u in candidates {
        let used = used.with(u);
        // the rest of the cycle must still be able to get back to the start
        if remaining == 1 && !t.has_arc(u, start) {
            continue;
        }
        if remaining > 1 {
            let back = t.coreach_within(
                VertexSet::singleton(start),
                within.difference(used).with(start),
            );
            if t.out(u).intersection(back).is_empty() {
                continue;
            }
        }
        path.push(u);
        if extend_cycle(t, within, k, path, used) {
            return true;
        }
        path.pop();
    }
    false
}
