//! Generators for tournament families, the figure fixtures, constructions on
//! tournaments and structural predicates.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::digraph::{Digraph, Tournament};
use crate::domination::{connected_domination_numbers, domination_number};
use crate::error::{Error, Result};
use crate::structure::{hamilton_path, strong_components};

fn check_order(n: usize) -> Result<()> {
    match n {
        0 => Err(Error::Empty),
        n if n > MAX_VERTICES => Err(Error::TooManyVertices(n)),
        _ => Ok(()),
    }
}

/// Arcs `i → j` for every `i < j`.
pub fn transitive(n: usize) -> Result<Tournament> {
    check_order(n)?;
    Tournament::from_fn(n, |_, _| true)
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Quadratic-residue tournament on `Z_q` for a prime `q ≡ 3 (mod 4)`.
pub fn paley(q: usize) -> Result<Tournament> {
    if !is_prime(q) || q % 4 != 3 {
        return Err(Error::InvalidArgument(format!(
            "paley order must be a prime congruent to 3 mod 4, got {q}"
        )));
    }
    check_order(q)?;
    let residues: Vec<usize> = {
        let mut r: Vec<usize> = (1..q).map(|x| x * x % q).collect();
        r.sort_unstable();
        r.dedup();
        r
    };
    circulant(q, &residues)
}

/// Circulant tournament on `Z_n`: `i → i + s` for `s` in the connection set,
/// which must hold exactly one of `s`, `n - s` for every `s` in `1..n`.
pub fn circulant(n: usize, connection: &[usize]) -> Result<Tournament> {
    check_order(n)?;
    let mut set = VertexSet::EMPTY;
    for &s in connection {
        if s == 0 || s >= n {
            return Err(Error::InvalidArgument(format!(
                "connection offset {s} outside 1..{n}"
            )));
        }
        set.insert(s);
    }
    for s in 1..n {
        if set.contains(s) == set.contains(n - s) {
            return Err(Error::InvalidArgument(format!(
                "connection set must contain exactly one of {s} and {}",
                n - s
            )));
        }
    }
    Tournament::from_fn(n, |i, j| set.contains(j - i))
}

/// ChaCha8 stream seeded with `seed_from_u64(seed)`; each pair consumes one
/// `next_u64` in row-major pair order and the low bit picks the direction.
struct PairCoins(ChaCha8Rng);

impl PairCoins {
    fn new(seed: u64) -> Self {
        PairCoins(ChaCha8Rng::seed_from_u64(seed))
    }

    fn flip(&mut self) -> bool {
        self.0.next_u64() & 1 == 1
    }
}

pub fn random_tournament(n: usize, seed: u64) -> Result<Tournament> {
    check_order(n)?;
    let mut coins = PairCoins::new(seed);
    Tournament::from_fn(n, |_, _| coins.flip())
}

/// Part sizes of a complete multipartite graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionSpec {
    part_sizes: Vec<usize>,
}

impl PartitionSpec {
    pub fn new(part_sizes: Vec<usize>) -> Result<Self> {
        if part_sizes.len() < 2 {
            return Err(Error::InvalidArgument("need at least two parts".into()));
        }
        if part_sizes.contains(&0) {
            return Err(Error::InvalidArgument("parts must be nonempty".into()));
        }
        let total: usize = part_sizes.iter().sum();
        if total > MAX_VERTICES {
            return Err(Error::TooManyVertices(total));
        }
        Ok(PartitionSpec { part_sizes })
    }

    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    pub fn order(&self) -> usize {
        self.part_sizes.iter().sum()
    }

    /// Parts as consecutive vertex ranges.
    pub fn parts(&self) -> Vec<VertexSet> {
        let mut start = 0;
        self.part_sizes
            .iter()
            .map(|&s| {
                let p = VertexSet::full(start + s).difference(VertexSet::full(start));
                start += s;
                p
            })
            .collect()
    }

    fn part_of(&self) -> Vec<usize> {
        self.part_sizes
            .iter()
            .enumerate()
            .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
            .collect()
    }
}

/// Random orientation of the complete multipartite graph with the given parts.
pub fn random_orientation(spec: &PartitionSpec, seed: u64) -> Digraph {
    let n = spec.order();
    let part = spec.part_of();
    let mut coins = PairCoins::new(seed);
    let mut d = Digraph::new(n).expect("PartitionSpec bounds the order");
    for i in 0..n {
        for j in i + 1..n {
            if part[i] == part[j] {
                continue;
            }
            let (u, v) = if coins.flip() { (i, j) } else { (j, i) };
            d.add_arc(u, v).expect("in range");
        }
    }
    d
}

fn extend(t: &Tournament, new_beats_all: bool) -> Result<Tournament> {
    let n = t.n();
    check_order(n + 1)?;
    Tournament::from_fn(n + 1, |i, j| {
        if j == n {
            !new_beats_all
        } else {
            t.has_arc(i, j)
        }
    })
}

/// Appends vertex `n` beating every other vertex.
pub fn add_source(t: &Tournament) -> Result<Tournament> {
    extend(t, true)
}

/// Appends vertex `n` beaten by every other vertex.
pub fn add_sink(t: &Tournament) -> Result<Tournament> {
    extend(t, false)
}

/// Makes a non-strong tournament with `γ ≥ 3` strong by appending one vertex
/// that every vertex except the start `u` of [`hamilton_path`] beats, and that
/// beats `u`.
pub fn strongify(t: &Tournament) -> Result<Tournament> {
    if strong_components(t).is_strong() {
        return Err(Error::Precondition(
            "strongify needs a tournament that is not strong".into(),
        ));
    }
    let gamma = domination_number(t).size();
    if gamma < 3 {
        return Err(Error::Precondition(format!(
            "strongify needs domination number at least 3, got {gamma}"
        )));
    }
    let u = hamilton_path(t)[0];
    let n = t.n();
    check_order(n + 1)?;
    Tournament::from_fn(n + 1, |i, j| if j == n { i != u } else { t.has_arc(i, j) })
}

/// Non-decreasing out-degree sequence of a tournament.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ScoreSequence(Vec<usize>);

impl ScoreSequence {
    /// Sorts `scores` and checks Landau's conditions.
    pub fn new(mut scores: Vec<usize>) -> Result<Self> {
        scores.sort_unstable();
        let n = scores.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut prefix = 0;
        for (k, &s) in scores.iter().enumerate() {
            prefix += s;
            let k = k + 1;
            if prefix < k * (k - 1) / 2 {
                return Err(Error::InvalidArgument(format!(
                    "score sequence violates Landau's condition at k = {k}"
                )));
            }
        }
        if prefix != n * (n - 1) / 2 {
            return Err(Error::InvalidArgument(format!(
                "scores sum to {prefix}, expected {}",
                n * (n - 1) / 2
            )));
        }
        Ok(ScoreSequence(scores))
    }

    pub fn scores(&self) -> &[usize] {
        &self.0
    }
}

pub fn score_sequence(t: &Tournament) -> ScoreSequence {
    ScoreSequence::new(t.scores()).expect("a tournament's scores satisfy Landau's conditions")
}

/// True iff every strong component's internal score sequence is one of
/// `(0)`, `(1,1,1)`, `(1,1,2,2)`, `(2,2,2,2,2)`; equivalently the score
/// sequence has a unique realisation.
pub fn is_simple(t: &Tournament) -> bool {
    strong_components(t).components.iter().all(|&c| {
        let mut s: Vec<usize> = c.iter().map(|v| t.out(v).intersection(c).len()).collect();
        s.sort_unstable();
        matches!(
            s.as_slice(),
            [0] | [1, 1, 1] | [1, 1, 2, 2] | [2, 2, 2, 2, 2]
        )
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalTransitivity {
    /// Every in-neighbourhood induces a transitive subtournament.
    pub in_transitive: bool,
    /// Every out-neighbourhood induces a transitive subtournament.
    pub out_transitive: bool,
    pub locally_transitive: bool,
}

fn induces_acyclic(d: &Digraph, s: VertexSet) -> bool {
    // peel off vertices with no in-neighbour inside the remaining set
    let mut rest = s;
    while !rest.is_empty() {
        match rest
            .iter()
            .find(|&v| d.in_set(v).intersection(rest).is_empty())
        {
            Some(v) => rest.remove(v),
            None => return false,
        }
    }
    true
}

pub fn local_transitivity(t: &Tournament) -> LocalTransitivity {
    let in_transitive = (0..t.n()).all(|v| induces_acyclic(t, t.in_set(v)));
    let out_transitive = (0..t.n()).all(|v| induces_acyclic(t, t.out(v)));
    LocalTransitivity {
        in_transitive,
        out_transitive,
        locally_transitive: in_transitive && out_transitive,
    }
}

/// Directed path `v1 → v2 → v3 → v4 → v5`.
pub fn fig1_path() -> Digraph {
    Digraph::from_arcs(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).expect("valid arcs")
}

/// Windmill label `v_i` (1..=7) as a vertex index.
pub const fn windmill_v(i: usize) -> usize {
    i - 1
}

/// Windmill label `u_i` (1..=8) as a vertex index.
pub const fn windmill_u(i: usize) -> usize {
    6 + i
}

/// The 15-vertex windmill: three blades through the hub `v7`, an outer
/// 8-cycle on `u1..u8`, spokes `v_i → u_i` plus `v7 → u8`, and returns
/// `u_i → v_{i+1}` plus `u8 → v1`.
pub fn fig2_windmill() -> Digraph {
    let (v, u) = (windmill_v, windmill_u);
    let mut arcs = Vec::new();
    for (a, b) in [(1, 2), (3, 4), (5, 6)] {
        arcs.extend([(v(7), v(a)), (v(a), v(b)), (v(b), v(7))]);
    }
    for i in 1..=8 {
        arcs.push((u(i), u(i % 8 + 1)));
    }
    for i in 1..=7 {
        arcs.push((v(i), u(i)));
    }
    arcs.push((v(7), u(8)));
    for i in 1..=6 {
        arcs.push((u(i), v(i + 1)));
    }
    arcs.push((u(8), v(1)));
    Digraph::from_arcs(15, arcs).expect("valid arcs")
}

pub const FIXTURE_NAMES: [&str; 4] = ["fig1_path", "fig2_windmill", "fig_paley7", "fig_unique14"];

/// Named figure fixture. The windmill is checked against its known
/// domination numbers on every load.
pub fn fixture(name: &str) -> Result<Digraph> {
    match name {
        "fig1_path" => Ok(fig1_path()),
        "fig2_windmill" => {
            let d = fig2_windmill();
            let gamma = domination_number(&d).size();
            let (_, sc) = connected_domination_numbers(&d);
            let sc = sc.map(|s| s.size());
            if gamma != 4 || sc != Some(7) {
                return Err(Error::Precondition(format!(
                    "windmill fixture self-test failed: gamma = {gamma}, gamma_sc = {sc:?}"
                )));
            }
            Ok(d)
        }
        "fig_paley7" => Ok(paley(7)?.into_digraph()),
        "fig_unique14" => Ok(circulant(7, &[1, 2, 3])?.into_digraph()),
        other => Err(Error::InvalidArgument(format!(
            "unknown fixture `{other}` (known: {})",
            FIXTURE_NAMES.join(", ")
        ))),
    }
}

fn parse_num<T: std::str::FromStr>(field: &str, what: &str) -> Result<T> {
    field
        .trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("`{field}` is not a valid {what}")))
}

/// Builds a digraph from a generator string: `transitive:N`, `paley:Q`,
/// `circulant:N:s1,s2,...`, `random:N:SEED` or `fixture:NAME`. A leading
/// `generator:` is accepted and ignored.
pub fn generate(spec: &str) -> Result<Digraph> {
    let spec = spec.strip_prefix("generator:").unwrap_or(spec);
    let fields: Vec<&str> = spec.split(':').collect();
    let bad = || Error::InvalidArgument(format!("malformed generator spec `{spec}`"));
    match fields.as_slice() {
        ["transitive", n] => Ok(transitive(parse_num(n, "order")?)?.into_digraph()),
        ["paley", q] => Ok(paley(parse_num(q, "order")?)?.into_digraph()),
        ["circulant", n, s] => {
            let offsets = if s.trim().is_empty() {
                Vec::new()
            } else {
                s.split(',')
                    .map(|x| parse_num(x, "offset"))
                    .collect::<Result<Vec<usize>>>()?
            };
            Ok(circulant(parse_num(n, "order")?, &offsets)?.into_digraph())
        }
        ["random", n, seed] => {
            Ok(random_tournament(parse_num(n, "order")?, parse_num(seed, "seed")?)?.into_digraph())
        }
        ["fixture", name] => fixture(name),
        _ => Err(bad()),
    }
}

/// Whether `s` looks like a generator or fixture spec rather than a path.
pub fn is_generator_spec(s: &str) -> bool {
    let s = s.strip_prefix("generator:").unwrap_or(s);
    ["transitive:", "paley:", "circulant:", "random:", "fixture:"]
        .iter()
        .any(|p| s.starts_with(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transitive_scores() {
        assert_eq!(transitive(1).unwrap().n(), 1);
        assert_eq!(
            score_sequence(&transitive(5).unwrap()).scores(),
            &[0, 1, 2, 3, 4]
        );
        assert!(transitive(0).is_err());
        assert!(transitive(65).is_err());
    }

    #[test]
    fn paley_small_orders() {
        let three = paley(3).unwrap();
        assert_eq!(three.to_code(), "T 3 101");
        assert_eq!(paley(7).unwrap(), circulant(7, &[1, 2, 4]).unwrap());
        assert!(paley(11).unwrap().scores().iter().all(|&s| s == 5));
        assert!(paley(5).is_err());
        assert!(paley(15).is_err());
        assert!(paley(67).is_err());
    }

    #[test]
    fn circulant_validation() {
        assert_eq!(circulant(3, &[1]).unwrap(), paley(3).unwrap());
        assert!(circulant(7, &[1, 6, 2]).is_err());
        assert!(circulant(7, &[1, 2]).is_err());
        assert!(circulant(4, &[1, 2]).is_err());
        assert!(circulant(7, &[0, 1, 2]).is_err());
    }

    #[test]
    fn random_is_reproducible() {
        let a = random_tournament(7, 1).unwrap();
        assert_eq!(a, random_tournament(7, 1).unwrap());
        assert_eq!(a.arc_count(), 21);
        assert_ne!(
            random_tournament(12, 1).unwrap(),
            random_tournament(12, 2).unwrap()
        );
        let spec = PartitionSpec::new(vec![3, 3]).unwrap();
        let d = random_orientation(&spec, 1);
        assert_eq!(d.arc_count(), 9);
        assert!(!d.has_digon());
        assert_eq!(d, random_orientation(&spec, 1));
    }

    #[test]
    fn partition_spec_validation() {
        assert!(PartitionSpec::new(vec![3]).is_err());
        assert!(PartitionSpec::new(vec![3, 0]).is_err());
        assert!(PartitionSpec::new(vec![40, 30]).is_err());
        let p = PartitionSpec::new(vec![1, 2, 3]).unwrap();
        assert_eq!(
            p.parts(),
            vec![
                VertexSet::from_iter([0]),
                VertexSet::from_iter([1, 2]),
                VertexSet::from_iter([3, 4, 5])
            ]
        );
    }

    #[test]
    fn sources_and_sinks() {
        let t3 = transitive(3).unwrap();
        assert_eq!(add_sink(&t3).unwrap(), transitive(4).unwrap());
        let s = add_source(&t3).unwrap();
        assert_eq!(s.out_degree(3), 3);
    }

    #[test]
    fn landau_validation() {
        assert!(ScoreSequence::new(vec![1, 1, 1]).is_ok());
        assert!(ScoreSequence::new(vec![0, 0, 3]).is_err());
        assert!(ScoreSequence::new(vec![2, 2, 2]).is_err());
        assert_eq!(
            ScoreSequence::new(vec![2, 0, 1]).unwrap().scores(),
            &[0, 1, 2]
        );
    }

    #[test]
    fn simple_tournaments() {
        assert!(is_simple(&transitive(4).unwrap()));
        assert!(is_simple(&paley(3).unwrap()));
        let p7 = paley(7).unwrap();
        assert_eq!(score_sequence(&p7).scores(), &[3; 7]);
        assert!(!is_simple(&p7));
    }

    #[test]
    fn local_transitivity_examples() {
        assert!(local_transitivity(&circulant(7, &[1, 2, 3]).unwrap()).locally_transitive);
        assert!(local_transitivity(&transitive(6).unwrap()).locally_transitive);
        let p = local_transitivity(&paley(7).unwrap());
        assert!(!p.in_transitive && !p.out_transitive);
        // the out-neighbourhood {1, 2, 4} of 0 is the 3-cycle 1 → 2 → 4 → 1
        let p7 = paley(7).unwrap();
        assert!(p7.has_arc(1, 2) && p7.has_arc(2, 4) && p7.has_arc(4, 1));
    }

    #[test]
    fn strongify_preconditions() {
        assert!(matches!(
            strongify(&transitive(5).unwrap()),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            strongify(&paley(7).unwrap()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn windmill_shape() {
        let d = fig2_windmill();
        assert_eq!(d.n(), 15);
        assert_eq!(d.arc_count(), 32);
        assert!(d.has_arc(windmill_u(8), windmill_v(1)));
        assert!(d.has_arc(windmill_v(7), windmill_u(8)));
    }

    #[test]
    fn generator_strings() {
        assert_eq!(
            generate("transitive:4").unwrap(),
            transitive(4).unwrap().into_digraph()
        );
        assert_eq!(
            generate("generator:paley:7").unwrap(),
            paley(7).unwrap().into_digraph()
        );
        assert_eq!(
            generate("circulant:7:1,2,3").unwrap(),
            circulant(7, &[1, 2, 3]).unwrap().into_digraph()
        );
        assert_eq!(
            generate("random:9:4").unwrap(),
            random_tournament(9, 4).unwrap().into_digraph()
        );
        assert_eq!(generate("fixture:fig1_path").unwrap(), fig1_path());
        assert!(generate("fixture:nope").is_err());
        assert!(generate("paley").is_err());
        assert!(generate("transitive:x").is_err());
        assert!(is_generator_spec("generator:transitive:6"));
        assert!(!is_generator_spec("graph.txt"));
    }
}
