//! Isomorphism-free enumeration of tournaments and the `(n, w, γ, m)` census.
//!
//! Enumeration uses canonical augmentation. A child of an `(n-1)`-vertex
//! representative is obtained by adding vertex `n-1` with every possible
//! orientation towards the old vertices; it is kept when the new vertex lies
//! in the automorphism orbit of the vertex the canonical labelling places
//! last. Every class then has exactly one accepted parent, and children of the
//! same parent are deduplicated by code.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::fs::{self, File, OpenOptions};
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::canon::{canonize, decode, initial_partition, CanonicalCode};
use crate::digraph::Tournament;
use crate::error::{Error, Result};
use crate::watchman::{lowered_cap, watchman_number_tournament};

/// Largest order the enumerator accepts.
pub const ENUMERATION_CAP: usize = 10;
/// Largest order run without an explicit opt-in.
pub const DEFAULT_CENSUS_CAP: usize = 9;

/// Number of isomorphism classes of tournaments on `n` vertices, `n = 0..=10`.
pub const CLASS_COUNTS: [u64; 11] = [0, 1, 1, 2, 4, 12, 56, 456, 6880, 191_536, 9_733_056];

fn check_order(n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Empty);
    }
    let cap = lowered_cap(cap);
    if n > cap {
        return Err(Error::EngineCap {
            engine: "tournament enumeration",
            cap,
            n,
        });
    }
    Ok(())
}

fn to_tournament(out: &[u64]) -> Tournament {
    Tournament::from_out_sets_unchecked(out.iter().map(|&b| VertexSet(b)).collect())
}

fn root() -> Vec<u64> {
    vec![0]
}

/// Canonical children of a canonical representative, in increasing code order.
pub(crate) fn children(parent: &[u64]) -> Vec<Vec<u64>> {
    let k = parent.len();
    let x = k;
    let mut seen = HashSet::new();
    let mut kids: Vec<(CanonicalCode, Vec<u64>)> = Vec::new();
    let mut child = vec![0u64; k + 1];
    for mask in 0..1u64 << k {
        for i in 0..k {
            child[i] = parent[i] | if mask >> i & 1 == 0 { 1 << x } else { 0 };
        }
        child[x] = mask;
        // the last canonical vertex always comes from the last initial cell
        let cells = initial_partition(&child);
        if cells.last().is_some_and(|&c| c >> x & 1 == 0) {
            continue;
        }
        let c = canonize(&child);
        if !c.last_orbit.contains(x) || !seen.insert(c.code) {
            continue;
        }
        let out = decode(k + 1, c.code.bits())
            .iter()
            .map(|s| s.bits())
            .collect();
        kids.push((c.code, out));
    }
    kids.sort_by_key(|(code, _)| *code);
    kids.into_iter().map(|(_, out)| out).collect()
}

fn descend(node: Vec<u64>, n: usize, f: &mut dyn FnMut(&[u64])) {
    if node.len() == n {
        f(&node);
        return;
    }
    for c in children(&node) {
        descend(c, n, f);
    }
}

fn level(n: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    descend(root(), n, &mut |t| out.push(t.to_vec()));
    out
}

/// Calls `f` once per isomorphism class of `n`-vertex tournaments, passing the
/// canonical representative. Nothing is stored beyond the recursion stack.
pub fn for_each_tournament<F: FnMut(&Tournament)>(n: usize, mut f: F) -> Result<()> {
    check_order(n, ENUMERATION_CAP)?;
    descend(root(), n, &mut |out| f(&to_tournament(out)));
    Ok(())
}

/// One canonical representative per isomorphism class.
pub fn enumerate_tournaments(n: usize) -> Result<Vec<Tournament>> {
    let mut all = Vec::new();
    for_each_tournament(n, |t| all.push(t.clone()))?;
    Ok(all)
}

/// Cross-check enumerator: extend every representative in every way,
/// canonicalise and deduplicate, level by level. Limited to `n ≤ 7`.
pub fn enumerate_by_dedupe(n: usize) -> Result<Vec<Tournament>> {
    check_order(n, 7)?;
    let mut current: Vec<Vec<u64>> = vec![root()];
    for k in 1..n {
        let mut next = BTreeMap::new();
        for parent in &current {
            for mask in 0..1u64 << k {
                let mut child: Vec<u64> = (0..k)
                    .map(|i| parent[i] | if mask >> i & 1 == 0 { 1 << k } else { 0 })
                    .collect();
                child.push(mask);
                let code = canonize(&child).code;
                next.entry(code).or_insert(());
            }
        }
        current = next
            .keys()
            .map(|c| decode(k + 1, c.bits()).iter().map(|s| s.bits()).collect())
            .collect();
    }
    Ok(current.iter().map(|out| to_tournament(out)).collect())
}

/// Row key of the census table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RowKey {
    pub n: usize,
    pub w: usize,
    pub gamma: usize,
    pub m: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub n: usize,
    pub w: usize,
    pub gamma: usize,
    pub m: u64,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub engine_version: String,
    pub runtime_secs: f64,
    pub threads: usize,
    /// Work units taken from a checkpoint rather than recomputed.
    pub resumed_units: usize,
}

/// Counts of isomorphism classes keyed by `(n, w, γ, m)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusTable {
    pub rows: Vec<CensusRow>,
    pub provenance: Provenance,
}

impl CensusTable {
    fn from_map(map: &BTreeMap<RowKey, u64>, provenance: Provenance) -> Self {
        let rows = map
            .iter()
            .map(|(k, &count)| CensusRow {
                n: k.n,
                w: k.w,
                gamma: k.gamma,
                m: k.m,
                count,
            })
            .collect();
        CensusTable { rows, provenance }
    }

    pub fn counts(&self) -> BTreeMap<RowKey, u64> {
        self.rows
            .iter()
            .map(|r| {
                (
                    RowKey {
                        n: r.n,
                        w: r.w,
                        gamma: r.gamma,
                        m: r.m,
                    },
                    r.count,
                )
            })
            .collect()
    }

    pub fn count(&self, n: usize, w: usize, gamma: usize, m: u64) -> u64 {
        self.rows
            .iter()
            .find(|r| (r.n, r.w, r.gamma, r.m) == (n, w, gamma, m))
            .map_or(0, |r| r.count)
    }

    /// Number of classes counted at order `n`.
    pub fn total(&self, n: usize) -> u64 {
        self.rows.iter().filter(|r| r.n == n).map(|r| r.count).sum()
    }

    /// CSV with header `n,w,gamma,m,count`, rows sorted by key. Provenance is
    /// left out so runs are byte-comparable.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,w,gamma,m,count\n");
        for r in &self.rows {
            writeln!(s, "{},{},{},{},{}", r.n, r.w, r.gamma, r.m, r.count).unwrap();
        }
        s
    }
}

/// Census options; `jobs = 0` lets rayon pick the thread count.
#[derive(Clone, Debug, Default)]
pub struct CensusOptions {
    pub jobs: usize,
    pub checkpoint: Option<PathBuf>,
    pub allow_large: bool,
}

type Partial = BTreeMap<(usize, usize, u64), u64>;

fn unit_census(root: &[u64], n: usize) -> Partial {
    let mut rows = Partial::new();
    descend(root.to_vec(), n, &mut |out| {
        let r = watchman_number_tournament(&to_tournament(out));
        *rows.entry((r.w(), r.gamma, r.multiplicity())).or_insert(0) += 1;
    });
    rows
}

fn unit_line(idx: usize, root: &[u64], rows: &Partial) -> String {
    let body = if rows.is_empty() {
        "-".to_string()
    } else {
        rows.iter()
            .map(|((w, g, m), c)| format!("{w}:{g}:{m}={c}"))
            .collect::<Vec<_>>()
            .join(",")
    };
    format!(
        "unit {idx} {} {body}\n",
        to_tournament(root).to_code().replace(' ', "_")
    )
}

fn parse_unit_line(line: &str) -> Option<(usize, String, Partial)> {
    let mut parts = line.split(' ');
    if parts.next()? != "unit" {
        return None;
    }
    let idx = parts.next()?.parse().ok()?;
    let code = parts.next()?.to_string();
    let body = parts.next()?;
    if parts.next().is_some() {
        return None;
    }
    let mut rows = Partial::new();
    if body != "-" {
        for item in body.split(',') {
            let (key, count) = item.split_once('=')?;
            let mut k = key.split(':');
            let w = k.next()?.parse().ok()?;
            let g = k.next()?.parse().ok()?;
            let m = k.next()?.parse().ok()?;
            if k.next().is_some() {
                return None;
            }
            rows.insert((w, g, m), count.parse().ok()?);
        }
    }
    Some((idx, code, rows))
}

fn checkpoint_header(n: usize) -> String {
    format!("watchwalk-census-checkpoint n={n}\n")
}

/// Reads the complete lines of a checkpoint, rewriting the file without a
/// torn trailing line, and returns the finished units.
fn load_checkpoint(path: &Path, n: usize, roots: &[Vec<u64>]) -> Result<BTreeMap<usize, Partial>> {
    let io = |e| Error::io(path, e);
    let header = checkpoint_header(n);
    if !path.exists() {
        fs::write(path, &header).map_err(io)?;
        return Ok(BTreeMap::new());
    }
    let text = fs::read_to_string(path).map_err(io)?;
    let complete = match text.rfind('\n') {
        Some(i) => &text[..=i],
        None => "",
    };
    if complete.is_empty() {
        fs::write(path, &header).map_err(io)?;
        return Ok(BTreeMap::new());
    }
    let bad = |msg: String| Error::Io {
        path: path.to_path_buf(),
        message: msg,
    };
    let mut lines = complete.lines();
    if lines.next() != Some(header.trim_end()) {
        return Err(bad(format!("not a checkpoint for order {n}")));
    }
    let mut done = BTreeMap::new();
    for (i, line) in lines.enumerate() {
        let (idx, code, rows) =
            parse_unit_line(line).ok_or_else(|| bad(format!("malformed line {}", i + 2)))?;
        let expected = roots
            .get(idx)
            .map(|r| to_tournament(r).to_code().replace(' ', "_"));
        if expected.as_deref() != Some(code.as_str()) {
            return Err(bad(format!("line {}: unknown work unit {idx}", i + 2)));
        }
        done.insert(idx, rows);
    }
    if complete.len() != text.len() {
        fs::write(path, complete).map_err(io)?;
    }
    Ok(done)
}

/// Census of all `n`-vertex tournaments by `(w, γ, m)`.
pub fn census(n: usize, options: &CensusOptions) -> Result<CensusTable> {
    let cap = if options.allow_large {
        ENUMERATION_CAP
    } else {
        DEFAULT_CENSUS_CAP
    };
    check_order(n, cap)?;
    let start = Instant::now();
    let roots = level(n.saturating_sub(2).max(1));

    let mut done = match &options.checkpoint {
        Some(path) => load_checkpoint(path, n, &roots)?,
        None => BTreeMap::new(),
    };
    let resumed_units = done.len();
    let sink = match &options.checkpoint {
        Some(path) => Some((
            path.clone(),
            Mutex::new(
                OpenOptions::new()
                    .append(true)
                    .open(path)
                    .map_err(|e| Error::io(path, e))?,
            ),
        )),
        None => None,
    };

    let pending: Vec<usize> = (0..roots.len()).filter(|i| !done.contains_key(i)).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let threads = pool.current_num_threads();
    let computed: Vec<Result<(usize, Partial)>> = pool.install(|| {
        pending
            .par_iter()
            .map(|&idx| {
                let rows = unit_census(&roots[idx], n);
                if let Some((path, file)) = &sink {
                    let line = unit_line(idx, &roots[idx], &rows);
                    let mut f: std::sync::MutexGuard<'_, File> =
                        file.lock().expect("checkpoint lock");
                    f.write_all(line.as_bytes())
                        .and_then(|_| f.flush())
                        .map_err(|e| Error::io(path, e))?;
                }
                Ok((idx, rows))
            })
            .collect()
    });
    for r in computed {
        let (idx, rows) = r?;
        done.insert(idx, rows);
    }

    let mut map = BTreeMap::new();
    for rows in done.values() {
        for (&(w, gamma, m), &c) in rows {
            *map.entry(RowKey { n, w, gamma, m }).or_insert(0) += c;
        }
    }
    Ok(CensusTable::from_map(
        &map,
        Provenance {
            engine_version: env!("CARGO_PKG_VERSION").to_string(),
            runtime_secs: start.elapsed().as_secs_f64(),
            threads,
            resumed_units,
        },
    ))
}

/// Transcribed reference table with per-row advisory flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceTable {
    pub rows: BTreeMap<RowKey, ReferenceRow>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReferenceRow {
    pub count: u64,
    pub advisory: bool,
}

const SHIPPED_REFERENCE: &str = include_str!("../../../data/appendixA.csv");

impl ReferenceTable {
    /// Parses CSV with header `n,w,gamma,m,count,status`, status being
    /// `exact` or `advisory`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, h)) if h.trim() == "n,w,gamma,m,count,status" => {}
            _ => return Err(Error::parse(1, "expected header n,w,gamma,m,count,status")),
        }
        let mut rows = BTreeMap::new();
        for (i, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let lineno = i + 1;
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 6 {
                return Err(Error::parse(
                    lineno,
                    format!("expected 6 fields, found {}", f.len()),
                ));
            }
            let num = |s: &str| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::parse(lineno, format!("not a count: {s:?}")))
            };
            let key = RowKey {
                n: num(f[0])? as usize,
                w: num(f[1])? as usize,
                gamma: num(f[2])? as usize,
                m: num(f[3])?,
            };
            let advisory = match f[5].trim() {
                "exact" => false,
                "advisory" => true,
                other => return Err(Error::parse(lineno, format!("unknown status {other:?}"))),
            };
            let row = ReferenceRow {
                count: num(f[4])?,
                advisory,
            };
            if rows.insert(key, row).is_some() {
                return Err(Error::parse(lineno, "duplicate row"));
            }
        }
        Ok(ReferenceTable { rows })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    /// The shipped table (`data/appendixA.csv`), n = 2..10 with n = 10 advisory.
    pub fn shipped() -> Self {
        Self::parse(SHIPPED_REFERENCE).expect("shipped reference table parses")
    }

    pub fn orders(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.rows.keys().map(|k| k.n).collect();
        v.dedup();
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub n: usize,
    pub w: usize,
    pub gamma: usize,
    pub m: u64,
    pub computed: u64,
    pub reference: u64,
    pub advisory: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffReport {
    pub discrepancies: Vec<Discrepancy>,
    /// Orders present in the computed table but absent from the reference.
    pub unreferenced_orders: Vec<usize>,
}

impl DiffReport {
    /// No discrepancy outside advisory rows and every order covered.
    pub fn is_match(&self) -> bool {
        self.unreferenced_orders.is_empty() && self.discrepancies.iter().all(|d| d.advisory)
    }
}

/// Compares a computed table against the reference rows of the same orders.
pub fn diff_against(table: &CensusTable, reference: &ReferenceTable) -> DiffReport {
    let computed = table.counts();
    let mut orders: Vec<usize> = computed.keys().map(|k| k.n).collect();
    orders.dedup();
    let known = reference.orders();
    let unreferenced_orders: Vec<usize> = orders
        .iter()
        .copied()
        .filter(|n| !known.contains(n))
        .collect();
    let mut keys: Vec<RowKey> = computed.keys().copied().collect();
    keys.extend(reference.rows.keys().filter(|k| orders.contains(&k.n)));
    keys.sort();
    keys.dedup();
    let discrepancies = keys
        .into_iter()
        .filter(|k| known.contains(&k.n))
        .filter_map(|k| {
            let c = computed.get(&k).copied().unwrap_or(0);
            let r = reference.rows.get(&k);
            let rc = r.map_or(0, |r| r.count);
            let advisory = r.map_or_else(
                || {
                    reference
                        .rows
                        .iter()
                        .any(|(rk, rr)| rk.n == k.n && rr.advisory)
                },
                |r| r.advisory,
            );
            (c != rc).then_some(Discrepancy {
                n: k.n,
                w: k.w,
                gamma: k.gamma,
                m: k.m,
                computed: c,
                reference: rc,
                advisory,
            })
        })
        .collect();
    DiffReport {
        discrepancies,
        unreferenced_orders,
    }
}

pub fn verify_appendix_a(table: &CensusTable, reference_path: &Path) -> Result<DiffReport> {
    Ok(diff_against(table, &ReferenceTable::load(reference_path)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain(n: usize) -> CensusTable {
        census(
            n,
            &CensusOptions {
                jobs: 1,
                ..Default::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn small_class_counts() {
        for n in 1..=6 {
            assert_eq!(
                enumerate_tournaments(n).unwrap().len() as u64,
                CLASS_COUNTS[n],
                "n={n}"
            );
        }
    }

    #[test]
    fn order_checks() {
        assert_eq!(enumerate_tournaments(0).unwrap_err(), Error::Empty);
        assert!(matches!(
            enumerate_tournaments(11),
            Err(Error::EngineCap { cap: 10, .. })
        ));
        let gated = census(10, &CensusOptions::default());
        assert!(matches!(gated, Err(Error::EngineCap { cap: 9, .. })));
    }

    #[test]
    fn census_n5_and_n2() {
        let t = plain(5);
        let rows: Vec<(usize, usize, u64, u64)> = t
            .rows
            .iter()
            .map(|r| (r.w, r.gamma, r.m, r.count))
            .collect();
        assert_eq!(
            rows,
            vec![
                (0, 1, 1, 4),
                (3, 2, 1, 1),
                (3, 2, 2, 2),
                (3, 2, 3, 3),
                (3, 2, 4, 1),
                (3, 2, 5, 1)
            ]
        );
        assert_eq!(plain(2).to_csv(), "n,w,gamma,m,count\n2,0,1,1,1\n");
    }

    #[test]
    fn reference_parses_with_totals() {
        let r = ReferenceTable::shipped();
        assert_eq!(r.orders(), (2..=10).collect::<Vec<_>>());
        for n in 2..=10 {
            let total: u64 = r
                .rows
                .iter()
                .filter(|(k, _)| k.n == n)
                .map(|(_, v)| v.count)
                .sum();
            assert_eq!(total, CLASS_COUNTS[n], "n={n}");
            assert!(r
                .rows
                .iter()
                .filter(|(k, _)| k.n == n)
                .all(|(_, v)| v.advisory == (n == 10)));
        }
    }

    #[test]
    fn reference_errors_carry_lines() {
        let e = ReferenceTable::parse("n,w,gamma,m,count,status\n2,0,1,1,x,exact\n").unwrap_err();
        assert_eq!(e, Error::parse(2, "not a count: \"x\""));
        assert!(ReferenceTable::parse("bogus\n").is_err());
    }

    #[test]
    fn perturbed_reference_gives_one_row() {
        let t = plain(6);
        let text = SHIPPED_REFERENCE.replace("6,3,2,3,10,exact", "6,3,2,3,11,exact");
        let d = diff_against(&t, &ReferenceTable::parse(&text).unwrap());
        assert_eq!(
            d.discrepancies,
            vec![Discrepancy {
                n: 6,
                w: 3,
                gamma: 2,
                m: 3,
                computed: 10,
                reference: 11,
                advisory: false
            }]
        );
        assert!(!d.is_match());
        assert!(diff_against(&t, &ReferenceTable::shipped()).is_match());
    }

    #[test]
    fn order_one_is_unreferenced() {
        let d = diff_against(&plain(1), &ReferenceTable::shipped());
        assert_eq!(d.unreferenced_orders, vec![1]);
        assert!(!d.is_match());
    }

    #[test]
    fn unit_lines_round_trip() {
        let mut rows = Partial::new();
        rows.insert((3, 2, 14), 1);
        rows.insert((0, 1, 1), 56);
        let line = unit_line(4, &[0b110, 0b100, 0], &rows);
        let (idx, code, back) = parse_unit_line(line.trim_end()).unwrap();
        assert_eq!((idx, code.as_str(), back), (4, "T_3_111", rows));
        assert!(parse_unit_line("unit 1 T_3_111 3:2=1").is_none());
    }
}
