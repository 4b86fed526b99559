//! The `analyze` report and its text rendering.

use std::fmt::Write as _;

use serde::Serialize;
use watchwalk::domination::domination_report;
use watchwalk::structure::strong_components;
use watchwalk::watchman::{watchman_number, watchman_number_semicomplete, WalkReport};
use watchwalk::{Digraph, Result};

#[derive(Serialize)]
pub struct Condensation {
    pub components: usize,
    pub strong: bool,
    /// Quotient arcs between component indices (components are listed
    /// sources first).
    pub arcs: Vec<[usize; 2]>,
}

#[derive(Serialize)]
pub struct Witnesses {
    pub gamma: Vec<usize>,
    pub gamma_t: Option<Vec<usize>>,
    /// Closed: the first vertex is repeated at the end.
    pub gamma_cyc: Option<Vec<usize>>,
    pub gamma_wc: Option<Vec<usize>>,
    pub gamma_sc: Option<Vec<usize>>,
}

#[derive(Serialize)]
pub struct Watchman {
    pub engine: &'static str,
    #[serde(flatten)]
    pub report: WalkReport,
}

#[derive(Serialize)]
pub struct Analysis {
    pub n: usize,
    pub arcs: usize,
    pub tournament: bool,
    pub strong_components: Vec<Vec<usize>>,
    pub condensation: Condensation,
    pub gamma: usize,
    pub gamma_t: Option<usize>,
    pub gamma_cyc: Option<usize>,
    pub gamma_wc: Option<usize>,
    pub gamma_sc: Option<usize>,
    pub witnesses: Witnesses,
    pub watchman: Watchman,
}

pub fn analyze(d: &Digraph) -> Result<Analysis> {
    let c = strong_components(d);
    let dom = domination_report(d);
    let watchman = if d.is_semicomplete() {
        Watchman {
            engine: "semicomplete fast path",
            report: watchman_number_semicomplete(d)?.report,
        }
    } else {
        Watchman {
            engine: "generic state search",
            report: watchman_number(d)?,
        }
    };
    Ok(Analysis {
        n: d.n(),
        arcs: d.arc_count(),
        tournament: d.is_tournament(),
        strong_components: c.components.iter().map(|s| s.to_vec()).collect(),
        condensation: Condensation {
            components: c.len(),
            strong: c.is_strong(),
            arcs: c.quotient.arcs().map(|(a, b)| [a, b]).collect(),
        },
        gamma: dom.gamma.size(),
        gamma_t: dom.gamma_t.map(|s| s.size()),
        gamma_cyc: dom.gamma_cyc.as_ref().map(|c| c.length()),
        gamma_wc: dom.gamma_wc.map(|s| s.size()),
        gamma_sc: dom.gamma_sc.map(|s| s.size()),
        witnesses: Witnesses {
            gamma: dom.gamma.witness.to_vec(),
            gamma_t: dom.gamma_t.map(|s| s.witness.to_vec()),
            gamma_cyc: dom.gamma_cyc.map(|c| c.cycle),
            gamma_wc: dom.gamma_wc.map(|s| s.witness.to_vec()),
            gamma_sc: dom.gamma_sc.map(|s| s.witness.to_vec()),
        },
        watchman,
    })
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn list(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn render_human(a: &Analysis) -> String {
    let mut s = String::new();
    let kind = if a.tournament {
        "tournament"
    } else {
        "digraph"
    };
    writeln!(s, "{kind} with {} vertices, {} arcs", a.n, a.arcs).unwrap();
    writeln!(
        s,
        "strong components: {} ({})",
        a.condensation.components,
        a.strong_components
            .iter()
            .map(|c| format!("{{{}}}", list(c)))
            .collect::<Vec<_>>()
            .join(" ")
    )
    .unwrap();
    let w = &a.witnesses;
    let rows = [
        ("gamma", Some(a.gamma), Some(list(&w.gamma))),
        ("gamma_t", a.gamma_t, w.gamma_t.as_deref().map(list)),
        ("gamma_cyc", a.gamma_cyc, w.gamma_cyc.as_deref().map(list)),
        ("gamma_wc", a.gamma_wc, w.gamma_wc.as_deref().map(list)),
        ("gamma_sc", a.gamma_sc, w.gamma_sc.as_deref().map(list)),
    ];
    for (name, value, witness) in rows {
        writeln!(
            s,
            "{name:<10} {:>3}  {}",
            opt(value),
            witness.unwrap_or_default()
        )
        .unwrap();
    }
    let r = &a.watchman.report;
    if r.exists {
        writeln!(
            s,
            "{:<10} {:>3}  {}  (multiplicity {})",
            "w",
            opt(r.w),
            r.witness
                .as_ref()
                .map(|x| list(&x.vertices))
                .unwrap_or_default(),
            r.multiplicity.unwrap_or(0)
        )
        .unwrap();
    } else {
        writeln!(s, "{:<10} {:>3}  no closed dominating walk", "w", "-").unwrap();
    }
    s
}
