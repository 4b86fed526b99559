//! Canonical forms of tournaments for isomorphism rejection.
//!
//! Vertices are first split into an equitable ordered partition (score
//! classes, refined by out-degree counts into every other cell). The search
//! then individualises vertices of the first non-singleton cell and refines
//! again until every cell is a singleton. Each leaf is a labelling; the
//! canonical code is the smallest row-major tournament code among all
//! leaves. Refinement commutes with relabelling, so two tournaments share a
//! code exactly when they are isomorphic.

use std::fmt;

use crate::bitset::VertexSet;
use crate::digraph::Tournament;
use crate::error::{Error, Result};

/// Largest order accepted by [`canonical_form`]; 66 pair bits fit in a `u128`.
pub const CANON_CAP: usize = 12;

/// Row-major pair bits of a labelled tournament, first pair most significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    n: u8,
    bits: u128,
}

impl CanonicalCode {
    pub fn order(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    /// The canonical representative itself.
    pub fn to_tournament(&self) -> Tournament {
        Tournament::from_out_sets_unchecked(decode(self.n as usize, self.bits))
    }

    /// Tournament-code text of the canonical representative.
    pub fn to_code_string(&self) -> String {
        self.to_tournament().to_code()
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_code_string())
    }
}

/// Canonical labelling of a tournament.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub code: CanonicalCode,
    /// `labeling[i]` is the original vertex placed at position `i`.
    pub labeling: Vec<usize>,
    /// Automorphism orbit of the vertex placed last.
    pub last_orbit: VertexSet,
}

pub fn canonical_form(t: &Tournament) -> Result<CanonicalCode> {
    canonical_labeling(t).map(|c| c.code)
}

pub fn canonical_labeling(t: &Tournament) -> Result<Canonical> {
    let n = t.n();
    if n > CANON_CAP {
        return Err(Error::EngineCap {
            engine: "canonical form",
            cap: CANON_CAP,
            n,
        });
    }
    let out: Vec<u64> = t.out_sets().iter().map(|s| s.bits()).collect();
    Ok(canonize(&out))
}

pub(crate) fn decode(n: usize, bits: u128) -> Vec<VertexSet> {
    let total = n * n.saturating_sub(1) / 2;
    let mut out = vec![VertexSet::EMPTY; n];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            k += 1;
            if bits >> (total - k) & 1 == 1 {
                out[i].insert(j);
            } else {
                out[j].insert(i);
            }
        }
    }
    out
}

fn encode(out: &[u64], order: &[u8]) -> u128 {
    let n = order.len();
    let mut bits = 0u128;
    for i in 0..n {
        let row = out[order[i] as usize];
        for &v in &order[i + 1..] {
            bits = bits << 1 | u128::from(row >> v & 1 == 1);
        }
    }
    bits
}

/// Splits cells until, for every pair of cells `(C, S)`, all vertices of `C`
/// have the same number of out-neighbours in `S`. Sub-cells are ordered by
/// increasing count.
pub(crate) fn refine(out: &[u64], cells: &mut Vec<u64>) {
    let mut groups: Vec<(u32, u64)> = Vec::with_capacity(16);
    'restart: loop {
        for si in 0..cells.len() {
            let splitter = cells[si];
            for ci in 0..cells.len() {
                let cell = cells[ci];
                if cell & (cell - 1) == 0 {
                    continue;
                }
                groups.clear();
                let mut rest = cell;
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    let k = (out[v] & splitter).count_ones();
                    match groups.iter_mut().find(|(c, _)| *c == k) {
                        Some((_, m)) => *m |= 1 << v,
                        None => groups.push((k, 1 << v)),
                    }
                }
                if groups.len() > 1 {
                    groups.sort_unstable_by_key(|&(k, _)| k);
                    cells.splice(ci..=ci, groups.iter().map(|&(_, m)| m));
                    continue 'restart;
                }
            }
        }
        return;
    }
}

/// Equitable partition of the whole vertex set before any individualisation.
pub(crate) fn initial_partition(out: &[u64]) -> Vec<u64> {
    let n = out.len();
    let mut cells = vec![VertexSet::full(n).bits()];
    refine(out, &mut cells);
    cells
}

struct Best {
    bits: u128,
    order: Vec<u8>,
    last_orbit: u64,
}

pub(crate) fn canonize(out: &[u64]) -> Canonical {
    let n = out.len();
    let cells = initial_partition(out);
    let mut best: Option<Best> = None;
    search(out, n, cells, &mut best);
    let best = best.expect("search visits at least one leaf");
    Canonical {
        code: CanonicalCode {
            n: n as u8,
            bits: best.bits,
        },
        labeling: best.order.iter().map(|&v| v as usize).collect(),
        last_orbit: VertexSet(best.last_orbit),
    }
}

fn search(out: &[u64], n: usize, cells: Vec<u64>, best: &mut Option<Best>) {
    if cells.len() == n {
        let order: Vec<u8> = cells.iter().map(|c| c.trailing_zeros() as u8).collect();
        let bits = encode(out, &order);
        let last = 1u64 << order[n - 1];
        match best {
            Some(b) if bits > b.bits => {}
            Some(b) if bits == b.bits => b.last_orbit |= last,
            _ => {
                *best = Some(Best {
                    bits,
                    order,
                    last_orbit: last,
                })
            }
        }
        return;
    }
    let i = cells
        .iter()
        .position(|c| c & (c - 1) != 0)
        .expect("a non-singleton cell remains");
    let mut rest = cells[i];
    while rest != 0 {
        let v = rest.trailing_zeros();
        rest &= rest - 1;
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..i]);
        next.push(1u64 << v);
        next.push(cells[i] & !(1u64 << v));
        next.extend_from_slice(&cells[i + 1..]);
        refine(out, &mut next);
        search(out, n, next, best);
    }
}
