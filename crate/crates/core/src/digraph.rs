use std::fmt::Write as _;
use std::ops::Deref;

use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

/// A loop-free directed graph on vertices `0..n`, stored as out-neighbourhood
/// bit sets. Digons are allowed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Digraph {
    out: Vec<VertexSet>,
}

impl Digraph {
    /// Arcless digraph on `n` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Digraph {
            out: vec![VertexSet::EMPTY; n],
        })
    }

    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut d = Digraph::new(n)?;
        for (u, v) in arcs {
            d.add_arc(u, v)?;
        }
        Ok(d)
    }

    /// Builds a digraph from raw out-neighbourhood masks.
    pub fn from_out_sets(out: Vec<VertexSet>) -> Result<Self> {
        let n = out.len();
        let d = Digraph::new(n).map(|_| Digraph { out })?;
        let full = VertexSet::full(n);
        for (v, &s) in d.out.iter().enumerate() {
            if s.contains(v) {
                return Err(Error::Loop(v));
            }
            if !s.is_subset(full) {
                let stray = s.difference(full).first().unwrap_or(n);
                return Err(Error::VertexOutOfRange { vertex: stray, n });
            }
        }
        Ok(d)
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        self.out[u].insert(v);
        Ok(())
    }

    pub(crate) fn remove_arc(&mut self, u: usize, v: usize) {
        self.out[u].remove(v);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.out.len()
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    #[inline]
    pub fn out(&self, v: usize) -> VertexSet {
        self.out[v]
    }

    pub fn out_sets(&self) -> &[VertexSet] {
        &self.out
    }

    /// `{v} ∪ N⁺(v)`.
    #[inline]
    pub fn closed_out(&self, v: usize) -> VertexSet {
        self.out[v].with(v)
    }

    pub fn in_set(&self, v: usize) -> VertexSet {
        (0..self.n()).filter(|&u| self.out[u].contains(v)).collect()
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.out.iter().filter(|s| s.contains(v)).count()
    }

    /// `δ⁻`, the minimum in-degree.
    pub fn min_in_degree(&self) -> usize {
        (0..self.n()).map(|v| self.in_degree(v)).min().unwrap_or(0)
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|s| s.len()).sum()
    }

    /// Arcs in row-major order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().map(move |v| (u, v)))
    }

    /// Vertices dominated by `s` under closed out-neighbourhoods.
    #[inline]
    pub fn dominated_by(&self, s: VertexSet) -> VertexSet {
        s.iter().fold(s, |acc, v| acc.union(self.out[v]))
    }

    /// Vertices having an in-neighbour in `s`.
    #[inline]
    pub fn open_dominated_by(&self, s: VertexSet) -> VertexSet {
        s.iter()
            .fold(VertexSet::EMPTY, |acc, v| acc.union(self.out[v]))
    }

    pub fn sources(&self) -> VertexSet {
        let hit = self.open_dominated_by(self.vertices());
        self.vertices().difference(hit)
    }

    /// Subdigraph induced by `s`, relabelled to `0..|s|` in ascending order.
    /// The returned vector maps new labels back to original vertices.
    pub fn induced(&self, s: VertexSet) -> Result<(Digraph, Vec<usize>)> {
        let map = s.to_vec();
        let mut out = vec![VertexSet::EMPTY; map.len()];
        if map.is_empty() {
            return Err(Error::Empty);
        }
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate() {
                if self.has_arc(u, v) {
                    out[i].insert(j);
                }
            }
        }
        Ok((Digraph { out }, map))
    }

    /// True iff every pair of distinct vertices has at least one arc.
    pub fn is_semicomplete(&self) -> bool {
        let n = self.n();
        (0..n).all(|u| (u + 1..n).all(|v| self.has_arc(u, v) || self.has_arc(v, u)))
    }

    pub fn has_digon(&self) -> bool {
        self.arcs().any(|(u, v)| u < v && self.has_arc(v, u))
    }

    pub fn is_tournament(&self) -> bool {
        let n = self.n();
        (0..n).all(|u| (u + 1..n).all(|v| self.has_arc(u, v) != self.has_arc(v, u)))
    }

    /// Vertices reachable from `s` (including `s`) using only vertices of `within`.
    pub fn reach_within(&self, s: VertexSet, within: VertexSet) -> VertexSet {
        let mut seen = s.intersection(within);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = self
                .open_dominated_by(frontier)
                .intersection(within)
                .difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen
    }

    /// Vertices that reach `s` (including `s`) using only vertices of `within`.
    pub fn coreach_within(&self, s: VertexSet, within: VertexSet) -> VertexSet {
        let mut seen = s.intersection(within);
        loop {
            let next: VertexSet = within
                .difference(seen)
                .iter()
                .filter(|&u| !self.out[u].intersection(seen).is_empty())
                .collect();
            if next.is_empty() {
                return seen;
            }
            seen = seen.union(next);
        }
    }

    /// Whether the subdigraph induced by a nonempty `s` is strongly connected.
    pub fn induces_strong(&self, s: VertexSet) -> bool {
        match s.first() {
            None => false,
            Some(v) => {
                let single = VertexSet::singleton(v);
                self.reach_within(single, s) == s && self.coreach_within(single, s) == s
            }
        }
    }

    /// Whether the subdigraph induced by a nonempty `s` is weakly connected.
    pub fn induces_weak(&self, s: VertexSet) -> bool {
        let Some(v) = s.first() else { return false };
        let mut seen = VertexSet::singleton(v);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for u in frontier {
                let nbrs = s
                    .iter()
                    .filter(|&x| self.has_arc(u, x) || self.has_arc(x, u))
                    .collect::<VertexSet>();
                next = next.union(nbrs);
            }
            let next = next.difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen == s
    }

    /// Text format: `n m` header then one `u v` line per arc.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.n(), self.arc_count());
        for (u, v) in self.arcs() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `n m` header"))?;
        let (n, m) = parse_pair(hline, header)?;
        let mut d = Digraph::new(n).map_err(|e| Error::parse(hline, e.to_string()))?;
        let mut seen = 0usize;
        for (line, l) in lines {
            let (u, v) = parse_pair(line, l)?;
            d.add_arc(u, v)
                .map_err(|e| Error::parse(line, e.to_string()))?;
            seen += 1;
        }
        if seen != m {
            return Err(Error::parse(
                hline,
                format!("header announces {m} arcs, found {seen}"),
            ));
        }
        Ok(d)
    }

    /// Parses either the tournament code or the edge-list format.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('T') {
            Ok(Tournament::parse_code(text)?.into_digraph())
        } else {
            Digraph::parse_edge_list(text)
        }
    }
}

fn parse_pair(line: usize, l: &str) -> Result<(usize, usize)> {
    let mut it = l.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = it
            .next()
            .ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
        tok.parse()
            .map_err(|_| Error::parse(line, format!("`{tok}` is not a vertex index")))
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if it.next().is_some() {
        return Err(Error::parse(line, "expected exactly two fields"));
    }
    Ok((a, b))
}

/// A digraph with exactly one arc between every pair of distinct vertices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tournament(Digraph);

impl Tournament {
    /// Builds a tournament where `beats(i, j)` decides the pair `i < j`.
    pub fn from_fn<F>(n: usize, mut beats: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> bool,
    {
        let mut d = Digraph::new(n)?;
        for i in 0..n {
            for j in i + 1..n {
                if beats(i, j) {
                    d.out[i].insert(j);
                } else {
                    d.out[j].insert(i);
                }
            }
        }
        Ok(Tournament(d))
    }

    pub(crate) fn from_out_sets_unchecked(out: Vec<VertexSet>) -> Self {
        debug_assert!(Digraph { out: out.clone() }.is_tournament());
        Tournament(Digraph { out })
    }

    pub fn as_digraph(&self) -> &Digraph {
        &self.0
    }

    pub fn into_digraph(self) -> Digraph {
        self.0
    }

    /// `T n b…` where the bits enumerate pairs `(i, j)`, `i < j`, row-major;
    /// bit 1 means `i → j`.
    pub fn to_code(&self) -> String {
        let n = self.n();
        let mut s = format!("T {n} ");
        for i in 0..n {
            for j in i + 1..n {
                s.push(if self.has_arc(i, j) { '1' } else { '0' });
            }
        }
        if n == 1 {
            s.pop();
        }
        s
    }

    pub fn parse_code(text: &str) -> Result<Self> {
        let (line, l) = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .find(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .ok_or_else(|| Error::parse(1, "empty input"))?;
        let mut it = l.split_whitespace();
        if it.next() != Some("T") {
            return Err(Error::parse(line, "tournament code must start with `T`"));
        }
        let n: usize = it
            .next()
            .ok_or_else(|| Error::parse(line, "missing vertex count"))?
            .parse()
            .map_err(|_| Error::parse(line, "vertex count is not an integer"))?;
        let bits = it.next().unwrap_or("");
        if it.next().is_some() {
            return Err(Error::parse(line, "trailing fields after the bit string"));
        }
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::parse(line, format!("unsupported vertex count {n}")));
        }
        let want = n * (n - 1) / 2;
        if bits.len() != want {
            return Err(Error::parse(
                line,
                format!(
                    "expected {want} pair bits for n = {n}, found {}",
                    bits.len()
                ),
            ));
        }
        let bytes = bits.as_bytes();
        if let Some(bad) = bytes.iter().find(|&&b| b != b'0' && b != b'1') {
            return Err(Error::parse(
                line,
                format!("invalid bit character `{}`", *bad as char),
            ));
        }
        let mut k = 0;
        Tournament::from_fn(n, |_, _| {
            k += 1;
            bytes[k - 1] == b'1'
        })
        .map_err(|e| Error::parse(line, e.to_string()))
    }

    /// Score of every vertex (its out-degree).
    pub fn scores(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.out_degree(v)).collect()
    }

    /// The subtournament induced by `s` with its relabelling map.
    pub fn subtournament(&self, s: VertexSet) -> Result<(Tournament, Vec<usize>)> {
        let (d, map) = self.0.induced(s)?;
        Ok((Tournament(d), map))
    }
}

impl TryFrom<Digraph> for Tournament {
    type Error = Error;

    fn try_from(d: Digraph) -> Result<Self> {
        let n = d.n();
        for u in 0..n {
            for v in u + 1..n {
                match (d.has_arc(u, v), d.has_arc(v, u)) {
                    (true, true) => {
                        return Err(Error::NotTournament(format!("digon between {u} and {v}")))
                    }
                    (false, false) => {
                        return Err(Error::NotTournament(format!("no arc between {u} and {v}")))
                    }
                    _ => {}
                }
            }
        }
        Ok(Tournament(d))
    }
}

impl Deref for Tournament {
    type Target = Digraph;

    fn deref(&self) -> &Digraph {
        &self.0
    }
}

impl AsRef<Digraph> for Tournament {
    fn as_ref(&self) -> &Digraph {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_range() {
        assert_eq!(Digraph::from_arcs(3, [(1, 1)]), Err(Error::Loop(1)));
        assert_eq!(
            Digraph::from_arcs(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(Digraph::new(65), Err(Error::TooManyVertices(65)));
        assert_eq!(Digraph::new(0), Err(Error::Empty));
    }

    #[test]
    fn transitive_three_code() {
        let t = Tournament::from_fn(3, |_, _| true).unwrap();
        assert_eq!(t.to_code(), "T 3 111");
        assert_eq!(Tournament::parse_code("T 3 111").unwrap(), t);
    }

    #[test]
    fn single_vertex_code_round_trip() {
        let t = Tournament::from_fn(1, |_, _| true).unwrap();
        assert_eq!(t.to_code(), "T 1");
        assert_eq!(Tournament::parse_code("T 1").unwrap(), t);
        assert_eq!(Tournament::parse_code("T 1 ").unwrap(), t);
    }

    #[test]
    fn edge_list_round_trip() {
        let d = Digraph::from_arcs(4, [(0, 1), (1, 0), (2, 3)]).unwrap();
        let text = d.to_edge_list();
        assert_eq!(text, "4 3\n0 1\n1 0\n2 3\n");
        assert_eq!(Digraph::parse_edge_list(&text).unwrap(), d);
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        let err = Digraph::parse_edge_list("3 2\n0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = Digraph::parse_edge_list("3 2\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err:?}");
        let err = Digraph::parse_edge_list("3 1\n\n2 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn code_errors() {
        assert!(Tournament::parse_code("T 3 11").is_err());
        assert!(Tournament::parse_code("T 3 112").is_err());
        assert!(Tournament::parse_code("X 3 111").is_err());
    }

    #[test]
    fn tournament_validation() {
        let digon = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        assert!(Tournament::try_from(digon).is_err());
        let gap = Digraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        assert!(Tournament::try_from(gap).is_err());
    }

    #[test]
    fn connectivity_predicates() {
        let cyc = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(cyc.induces_strong(VertexSet::full(3)));
        assert!(!cyc.induces_strong(VertexSet::from_iter([0, 1])));
        assert!(cyc.induces_weak(VertexSet::from_iter([0, 1])));
        assert!(!Digraph::new(2).unwrap().induces_weak(VertexSet::full(2)));
    }
}
