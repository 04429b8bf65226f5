//! Counterexample searches over graph streams.
//!
//! * P1: graphs with a medico vertex that are not median and contain
//!   neither an induced K2,3 nor an induced Q3⁻.
//! * P2: K2,3-free graphs with a medico vertex that are not median. Such
//!   graphs are logged as specimens; a hit additionally fails a battery of
//!   necessary conditions (bipartite, K3,3-free, every cycle edge on an
//!   induced C4, distance gap one across edges from every medico vertex).
//!   Whether a specimen embeds isometrically in a median graph or hypercube
//!   is not decided here.
//! * P3: graphs with a medico vertex having a sampled convex subgraph
//!   without medico vertices.
//!
//! Every candidate is re-evaluated through the definition-level oracles
//! before it is reported. Output order follows input order for any number
//! of workers.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::{graph_record, oracle, sample_convex_sets, SuiteOptions};
use crate::bitset::VertexSet;
use crate::distance::DistanceMatrix;
use crate::graph::Graph;
use crate::metric::Metric;
use crate::patterns::{self, Pattern};

/// Orders up to which candidates are re-checked with the exhaustive
/// pattern oracle.
const NAIVE_PATTERN_ORDER: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    P1,
    P2,
    P3,
}

impl Problem {
    pub fn id(self) -> &'static str {
        match self {
            Problem::P1 => "P1_Q3M_K23",
            Problem::P2 => "P2_K23FREE",
            Problem::P3 => "P3_CONVEX_1MED",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Problem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "1" | "P1" | "P1_Q3M_K23" => Ok(Problem::P1),
            "2" | "P2" | "P2_K23FREE" => Ok(Problem::P2),
            "3" | "P3" | "P3_CONVEX_1MED" => Ok(Problem::P3),
            _ => Err(format!("unknown problem {s:?} (expected 1, 2 or 3)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HitKind {
    Hit,
    Specimen,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hit {
    pub problem: &'static str,
    pub kind: HitKind,
    /// Position of the graph in the input stream, from 0.
    pub index: usize,
    pub graph: Value,
    pub k: usize,
    pub medico: VertexSet,
    pub detail: Value,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
    /// Stop after this many graphs.
    pub budget: Option<usize>,
    /// Graphs handed to the pool at once.
    pub chunk: usize,
    pub suite: SuiteOptions,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            jobs: 0,
            budget: None,
            chunk: 256,
            suite: SuiteOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    pub graphs: usize,
    pub hits: usize,
    pub specimens: usize,
}

impl fmt::Display for SearchSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} hits / {} graphs", self.hits, self.graphs)?;
        if self.specimens > 0 {
            write!(f, " ({} specimens for inspection)", self.specimens)?;
        }
        Ok(())
    }
}

fn naive_free_of(g: &Graph, pattern: Pattern) -> bool {
    if g.order() <= NAIVE_PATTERN_ORDER {
        !oracle::has_induced(g, &pattern.graph())
    } else {
        patterns::find_induced(g, pattern).is_none()
    }
}

/// Medico set by the definition, accepted only if it shows a proper
/// k-median graph (k at least 1, not median).
fn proper_by_definition(g: &Graph) -> Option<VertexSet> {
    let medico = oracle::medico_set(&DistanceMatrix::new(g));
    (!medico.is_empty() && medico.len() < g.order()).then_some(medico)
}

fn battery(m: &Metric) -> Vec<&'static str> {
    let g = m.graph();
    let mut failed = Vec::new();
    if !m.is_bipartite() {
        failed.push("bipartite");
    }
    if patterns::find_induced(g, Pattern::K33).is_some() {
        failed.push("k33_free");
    }
    let c4 = g.edges().all(|(a, b)| {
        !patterns::edge_on_cycle(g, a, b).unwrap() || patterns::edge_on_induced_c4(g, a, b).unwrap().is_some()
    });
    if !c4 {
        failed.push("cycle_edges_on_induced_c4");
    }
    let d = m.distances();
    let gap = m
        .medico_set()
        .iter()
        .all(|mu| g.edges().all(|(a, b)| d.get(mu, a).zip(d.get(mu, b)).is_some_and(|(x, y)| x.abs_diff(y) == 1)));
    if !gap {
        failed.push("medico_edge_gap_one");
    }
    failed
}

/// Evaluates one graph; `index` is its stream position and salts sampling.
pub fn evaluate(problem: Problem, g: &Graph, index: usize, opts: &SuiteOptions) -> Option<Hit> {
    let m = Metric::new(g.clone());
    let k = m.k_median_number();
    if k == 0 || k == g.order() {
        return None;
    }
    let hit = |kind, medico: VertexSet, detail| Hit {
        problem: problem.id(),
        kind,
        index,
        graph: graph_record(g),
        k: medico.len(),
        medico,
        detail,
    };
    match problem {
        Problem::P1 => {
            if patterns::find_induced(g, Pattern::K23).is_some() || patterns::find_induced(g, Pattern::Q3Minus).is_some() {
                return None;
            }
            let medico = proper_by_definition(g)?;
            (naive_free_of(g, Pattern::K23) && naive_free_of(g, Pattern::Q3Minus))
                .then(|| hit(HitKind::Hit, medico, json!({ "median": false, "k23": null, "q3minus": null })))
        }
        Problem::P2 => {
            if patterns::find_induced(g, Pattern::K23).is_some() {
                return None;
            }
            let medico = proper_by_definition(g)?;
            if !naive_free_of(g, Pattern::K23) {
                return None;
            }
            let failed = battery(&m);
            if failed.is_empty() {
                Some(hit(
                    HitKind::Specimen,
                    medico,
                    json!({ "battery": "passed", "note": "isometric embedding into a median graph or hypercube not checked" }),
                ))
            } else {
                let again = battery(&Metric::with_threshold(g.clone(), 0));
                (again == failed).then(|| hit(HitKind::Hit, medico, json!({ "battery_failed": failed })))
            }
        }
        Problem::P3 => {
            for s in sample_convex_sets(&m, opts, index as u64) {
                let (h, _) = g.induced_subgraph(&s);
                if Metric::new(h.clone()).k_median_number() > 0 {
                    continue;
                }
                let d = DistanceMatrix::new(g);
                let convex = oracle::convex_hull(&d, &s) == s;
                let no_medico = oracle::medico_set(&DistanceMatrix::new(&h)).is_empty();
                if let (true, true, Some(medico)) = (convex, no_medico, proper_by_definition(g)) {
                    return Some(hit(HitKind::Hit, medico, json!({ "convex_set": s, "subgraph_k": 0 })));
                }
            }
            None
        }
    }
}

/// Runs `problem` over `source`, calling `emit` for every hit or specimen
/// in input order. A stream error stops the search after the graphs before
/// it have been processed.
pub fn search<I, E>(problem: Problem, source: I, opts: &SearchOptions, mut emit: impl FnMut(&Hit)) -> Result<SearchSummary, E>
where
    I: IntoIterator<Item = Result<Graph, E>>,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .expect("thread pool");
    let mut summary = SearchSummary::default();
    let mut source = source.into_iter();
    let budget = opts.budget.unwrap_or(usize::MAX);
    let mut pending_error = None;
    while summary.graphs < budget && pending_error.is_none() {
        let room = opts.chunk.max(1).min(budget - summary.graphs);
        let mut chunk = Vec::with_capacity(room);
        for item in source.by_ref() {
            match item {
                Ok(g) => chunk.push(g),
                Err(e) => {
                    pending_error = Some(e);
                    break;
                }
            }
            if chunk.len() == room {
                break;
            }
        }
        if chunk.is_empty() {
            break;
        }
        let base = summary.graphs;
        let results: Vec<Option<Hit>> = pool.install(|| {
            chunk
                .par_iter()
                .enumerate()
                .map(|(i, g)| evaluate(problem, g, base + i, &opts.suite))
                .collect()
        });
        summary.graphs += chunk.len();
        for hit in results.into_iter().flatten() {
            match hit.kind {
                HitKind::Hit => summary.hits += 1,
                HitKind::Specimen => summary.specimens += 1,
            }
            emit(&hit);
        }
    }
    match pending_error {
        Some(e) => Err(e),
        None => Ok(summary),
    }
}
