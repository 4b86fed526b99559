//! Property suites run by `watchwalk verify`.
//!
//! Each suite walks a corpus (enumerated classes and/or seeded random
//! instances), checks one statement per instance and stops at the first
//! counterexample. Suites that exercise the generic watchman engine take it as
//! a parameter so that a deliberately broken engine can be plugged in.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::census::for_each_tournament;
use crate::digraph::{Digraph, Tournament};
use crate::domination::{cycle_domination_number, domination_number, total_domination_number};
use crate::error::{Error, Result};
use crate::families::{
    circulant, is_simple, local_transitivity, paley, random_orientation, random_tournament,
    strongify, PartitionSpec,
};
use crate::structure::{cycle_through_vertex, hamilton_cycle, strong_components};
use crate::watchman::{
    has_watchman_walk, watchman_number, watchman_number_semicomplete, watchman_number_tournament,
    WalkReport,
};

pub const PROPERTY_NAMES: [&str; 11] = [
    "domset",
    "nminustwo",
    "gammacyc",
    "gammat-chain",
    "simple-w03",
    "local-transitive",
    "spanning-bound",
    "strongify",
    "multipartite-exists",
    "pancyclic",
    "engine-agreement",
];

pub const DEFAULT_SEED: u64 = 20_190_101;

/// Scale of a suite run; `None` picks the suite's default.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Largest enumerated (or random) order.
    pub n: Option<usize>,
    pub seed: u64,
    /// Number of random instances.
    pub samples: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n: None,
            seed: DEFAULT_SEED,
            samples: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Tournament code, or a one-line edge list for other digraphs.
    pub code: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: String,
    pub passed: bool,
    /// Instances checked before stopping.
    pub checked: usize,
    pub counterexample: Option<Counterexample>,
}

/// The generic watchman engine as seen by the suites.
pub type Engine<'a> = &'a (dyn Fn(&Digraph) -> Result<WalkReport> + Sync);

pub fn verify_property(name: &str, config: &VerifyConfig) -> Result<PropertyReport> {
    verify_with_engine(name, config, &watchman_number)
}

pub fn verify_with_engine(
    name: &str,
    config: &VerifyConfig,
    engine: Engine<'_>,
) -> Result<PropertyReport> {
    let mut run = Run {
        rng: ChaCha8Rng::seed_from_u64(config.seed),
        checked: 0,
        failure: None,
        engine,
    };
    let n = config.n;
    let samples = config.samples;
    match name {
        "domset" => run.domset(n.unwrap_or(7), samples.unwrap_or(200))?,
        "nminustwo" => run.nminustwo(n.unwrap_or(8))?,
        "gammacyc" => run.gammacyc(n.unwrap_or(7), samples.unwrap_or(200))?,
        "gammat-chain" => run.gammat_chain(n.unwrap_or(7), samples.unwrap_or(200))?,
        "simple-w03" => run.simple_w03(n.unwrap_or(8))?,
        "local-transitive" => run.local_transitive(n.unwrap_or(8), samples.unwrap_or(300))?,
        "spanning-bound" => run.spanning_bound(n.unwrap_or(10), samples.unwrap_or(100))?,
        "strongify" => run.strongify(samples.unwrap_or(50))?,
        "multipartite-exists" => run.multipartite(samples.unwrap_or(100))?,
        "pancyclic" => run.pancyclic(n.unwrap_or(8))?,
        "engine-agreement" => run.engine_agreement(n.unwrap_or(7), samples.unwrap_or(200))?,
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown property {other:?}; expected one of {}",
                PROPERTY_NAMES.join(", ")
            )))
        }
    }
    Ok(PropertyReport {
        property: name.to_string(),
        passed: run.failure.is_none(),
        checked: run.checked,
        counterexample: run.failure,
    })
}

/// Largest order of the random tournaments mixed into enumerated corpora.
const RANDOM_MAX_N: usize = 12;

fn describe(d: &Digraph) -> String {
    match Tournament::try_from(d.clone()) {
        Ok(t) => t.to_code(),
        Err(_) => d.to_edge_list().trim_end().replace('\n', "; "),
    }
}

fn enumerated(lo: usize, hi: usize) -> Result<Vec<Tournament>> {
    let mut all = Vec::new();
    for k in lo.max(1)..=hi {
        for_each_tournament(k, |t| all.push(t.clone()))?;
    }
    Ok(all)
}

fn distinct_walk(r: &WalkReport) -> bool {
    match &r.witness {
        Some(walk) => {
            let open = &walk.vertices[..walk.length().max(1)];
            walk.vertex_set().len() == open.len()
        }
        None => true,
    }
}

struct Run<'a> {
    rng: ChaCha8Rng,
    checked: usize,
    failure: Option<Counterexample>,
    engine: Engine<'a>,
}

impl Run<'_> {
    /// Records one instance; returns false once a counterexample is held.
    fn check(&mut self, d: &Digraph, ok: bool, detail: impl FnOnce() -> String) -> bool {
        self.checked += 1;
        if !ok {
            self.failure = Some(Counterexample {
                code: describe(d),
                detail: detail(),
            });
        }
        ok
    }

    fn random_tournaments(
        &mut self,
        count: usize,
        lo: usize,
        hi: usize,
    ) -> Result<Vec<Tournament>> {
        (0..count)
            .map(|_| {
                let n = self.rng.gen_range(lo..=hi);
                random_tournament(n, self.rng.gen())
            })
            .collect()
    }

    /// Enumerated classes of order `≤ n` followed by random tournaments.
    fn mixed_corpus(&mut self, n: usize, samples: usize) -> Result<Vec<Tournament>> {
        let mut all = enumerated(1, n)?;
        all.extend(self.random_tournaments(samples, 2, RANDOM_MAX_N)?);
        Ok(all)
    }

    fn domset(&mut self, n: usize, samples: usize) -> Result<()> {
        for t in self.mixed_corpus(n, samples)? {
            let r = (self.engine)(&t)?;
            let gamma = domination_number(&t).size();
            let w_ok = match r.w {
                Some(0) => gamma == 1,
                Some(w) => gamma > 1 && (w == gamma || w == gamma + 1),
                None => false,
            };
            let witness_ok = r.witness.as_ref().is_some_and(|walk| {
                Some(walk.length()) == r.w
                    && walk.is_closed_walk_in(&t)
                    && walk.is_dominating_in(&t)
            });
            let ok = r.exists && w_ok && witness_ok && distinct_walk(&r);
            if !self.check(&t, ok, || format!("gamma={gamma}, engine reported {r:?}")) {
                break;
            }
        }
        Ok(())
    }

    fn nminustwo(&mut self, n: usize) -> Result<()> {
        for t in enumerated(5, n)? {
            if !strong_components(&t).is_strong() {
                continue;
            }
            let w = watchman_number_tournament(&t).w();
            if !self.check(&t, w + 2 <= t.n(), || format!("strong with w={w} > n-2")) {
                break;
            }
        }
        Ok(())
    }

    fn gammacyc(&mut self, n: usize, samples: usize) -> Result<()> {
        for t in self.mixed_corpus(n, samples)? {
            let r = watchman_number_tournament(&t);
            if r.gamma == 1 {
                continue;
            }
            let cyc = cycle_domination_number(&t).map(|c| c.length());
            if !self.check(&t, cyc == Some(r.w()), || {
                format!("gamma_cyc={cyc:?}, w={}", r.w())
            }) {
                break;
            }
        }
        Ok(())
    }

    fn gammat_chain(&mut self, n: usize, samples: usize) -> Result<()> {
        for t in self.mixed_corpus(n, samples)? {
            let r = watchman_number_tournament(&t);
            if r.w() == 0 {
                continue;
            }
            let gt = total_domination_number(&t).map(|s| s.size());
            let ok = gt.is_some_and(|gt| r.gamma <= gt && gt <= r.w());
            if !self.check(&t, ok, || {
                format!("gamma={}, gamma_t={gt:?}, w={}", r.gamma, r.w())
            }) {
                break;
            }
        }
        Ok(())
    }

    fn simple_w03(&mut self, n: usize) -> Result<()> {
        for t in enumerated(1, n)? {
            if !is_simple(&t) {
                continue;
            }
            let w = watchman_number_tournament(&t).w();
            if !self.check(&t, w == 0 || w == 3, || format!("simple with w={w}")) {
                break;
            }
        }
        Ok(())
    }

    fn local_transitive(&mut self, n: usize, samples: usize) -> Result<()> {
        let mut corpus: Vec<Tournament> = enumerated(1, n)?
            .into_iter()
            .filter(|t| {
                let lt = local_transitivity(t);
                lt.in_transitive || lt.out_transitive
            })
            .collect();
        // unit multiples of {1..k} on Z_{2k+1} give locally transitive circulants
        for _ in 0..samples {
            let k = self.rng.gen_range(1..=15);
            let order = 2 * k + 1;
            let unit = loop {
                let a = self.rng.gen_range(1..order);
                if gcd(a, order) == 1 {
                    break a;
                }
            };
            let conn: Vec<usize> = (1..=k).map(|s| s * unit % order).collect();
            corpus.push(circulant(order, &conn)?);
        }
        for t in corpus {
            let lt = local_transitivity(&t);
            let r = watchman_number_tournament(&t);
            let ok = (lt.in_transitive || lt.out_transitive) && r.gamma <= 3 && r.w() <= 3;
            if !self.check(&t, ok, || format!("{lt:?}, gamma={}, w={}", r.gamma, r.w())) {
                break;
            }
        }
        Ok(())
    }

    fn spanning_bound(&mut self, n: usize, samples: usize) -> Result<()> {
        for t in self.random_tournaments(samples, 3, n.max(3))? {
            let w = watchman_number_tournament(&t).w();
            let mut sub: Digraph = t.as_digraph().clone();
            for (u, v) in t.arcs().collect::<Vec<_>>() {
                if self.rng.gen_bool(0.25) {
                    sub.remove_arc(u, v);
                }
            }
            if !has_watchman_walk(&sub) {
                continue;
            }
            let ws = (self.engine)(&sub)?.w;
            let ok = ws.is_some_and(|ws| w <= ws);
            if !self.check(&sub, ok, || {
                format!(
                    "spanning subdigraph has w={ws:?}, host w={w} ({})",
                    t.to_code()
                )
            }) {
                break;
            }
        }
        Ok(())
    }

    fn strongify(&mut self, samples: usize) -> Result<()> {
        let top = paley(7)?;
        for _ in 0..samples {
            // a γ = 3 top component beating a random bottom part
            let bottom = random_tournament(self.rng.gen_range(1..=5), self.rng.gen())?;
            let n = 7 + bottom.n();
            let t = Tournament::from_fn(n, |i, j| match (i < 7, j < 7) {
                (true, true) => top.has_arc(i, j),
                (true, false) => true,
                _ => bottom.has_arc(i - 7, j - 7),
            })?;
            debug_assert!(!strong_components(&t).is_strong());
            let gamma = domination_number(&t).size();
            let s = strongify(&t)?;
            let sub_ok = t.arcs().all(|(u, v)| s.has_arc(u, v));
            let sg = domination_number(&s).size();
            let ok = gamma == 3
                && s.n() == n + 1
                && strong_components(&s).is_strong()
                && hamilton_cycle(&s).is_some()
                && sg == gamma
                && sub_ok;
            if !self.check(&t, ok, || {
                format!("gamma {gamma} -> {sg}, output {}", s.to_code())
            }) {
                break;
            }
        }
        Ok(())
    }

    fn multipartite(&mut self, samples: usize) -> Result<()> {
        for _ in 0..samples {
            let k = self.rng.gen_range(2..=3);
            let sizes: Vec<usize> = (0..k).map(|_| self.rng.gen_range(1..=4)).collect();
            let spec = PartitionSpec::new(sizes)?;
            let parts = spec.parts();

            // one unconstrained draw for the source observation
            let d = random_orientation(&spec, self.rng.gen());
            if let Some(s) = d.sources().first() {
                let part = parts.iter().find(|p| p.contains(s)).expect("parts cover V");
                let exists = has_watchman_walk(&d) && (self.engine)(&d)?.exists;
                if !self.check(&d, exists == (part.len() == 1), || {
                    format!(
                        "source {s} in a part of size {}, walk exists: {exists}",
                        part.len()
                    )
                }) {
                    break;
                }
            }

            let Some(d) = (0..1000)
                .map(|_| random_orientation(&spec, self.rng.gen()))
                .find(|d| d.min_in_degree() >= 1)
            else {
                continue;
            };
            let r = (self.engine)(&d)?;
            let quotient_source = strong_components(&d).source_components().len() == 1;
            if !self.check(
                &d,
                quotient_source && has_watchman_walk(&d) && r.exists,
                || format!("min in-degree 1 but walk report {r:?}"),
            ) {
                break;
            }
            if k == 2 {
                for (a, b) in [(parts[0], parts[1]), (parts[1], parts[0])] {
                    if a.len() > b.len() || private_dominator(&d, a, b).is_none() {
                        continue;
                    }
                    let w = r.w.unwrap_or(usize::MAX);
                    if !self.check(&d, w <= 2 * a.len(), || {
                        format!("w={w} exceeds 2|A| with A={a:?}")
                    }) {
                        return Ok(());
                    }
                }
            }
        }
        Ok(())
    }

    fn pancyclic(&mut self, n: usize) -> Result<()> {
        for t in enumerated(3, n)? {
            if !strong_components(&t).is_strong() {
                continue;
            }
            let mut missing = None;
            'outer: for v in 0..t.n() {
                for k in 3..=t.n() {
                    if cycle_through_vertex(&t, v, k)?.is_none() {
                        missing = Some((v, k));
                        break 'outer;
                    }
                }
            }
            if !self.check(&t, missing.is_none(), || {
                format!("no (vertex, length) cycle {missing:?}")
            }) {
                break;
            }
        }
        Ok(())
    }

    fn engine_agreement(&mut self, n: usize, samples: usize) -> Result<()> {
        let mut corpus: Vec<Digraph> = self
            .mixed_corpus(n, samples)?
            .into_iter()
            .map(Tournament::into_digraph)
            .collect();
        // semicomplete digraphs: random tournaments with some digons added
        for t in self.random_tournaments(samples / 4, 2, 10)? {
            let mut d = t.into_digraph();
            for (u, v) in d.arcs().collect::<Vec<_>>() {
                if self.rng.gen_bool(0.2) {
                    d.add_arc(v, u)?;
                }
            }
            corpus.push(d);
        }
        for d in corpus {
            let fast = watchman_number_semicomplete(&d)?.report;
            let slow = (self.engine)(&d)?;
            let ok = fast.exists == slow.exists
                && fast.w == slow.w
                && fast.multiplicity == slow.multiplicity;
            if !self.check(&d, ok, || {
                format!(
                    "fast path w={:?} m={:?}, generic w={:?} m={:?}",
                    fast.w, fast.multiplicity, slow.w, slow.multiplicity
                )
            }) {
                break;
            }
        }
        Ok(())
    }
}

/// Some `U ⊆ B` dominating each vertex of `A` exactly once.
pub fn private_dominator(d: &Digraph, a: VertexSet, b: VertexSet) -> Option<VertexSet> {
    let members = b.to_vec();
    (0u64..1 << members.len()).find_map(|mask| {
        let u: VertexSet = members
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        a.iter()
            .all(|x| d.in_set(x).intersection(u).len() == 1)
            .then_some(u)
    })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
