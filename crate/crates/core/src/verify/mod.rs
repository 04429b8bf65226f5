//! Cross-checks of the characterization theorems against the definition,
//! and counterexample searches for the open problems.
//!
//! Every check evaluates both sides independently: the definition side
//! lives in [`oracle`] and only reads the graph and its distances.

pub mod oracle;
pub mod search;
mod theorems;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::bitset::VertexSet;
use crate::format::{to_edgelist, to_graph6, GRAPH6_MAX_ORDER};
use crate::graph::Graph;
use crate::metric::Metric;
use crate::rng::SplitMix64;

pub use search::{search, Hit, HitKind, Problem, SearchOptions, SearchSummary};
pub use theorems::run_theorem_suite;

macro_rules! theorem_ids {
    ($($variant:ident => $name:literal,)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum TheoremId {
            $($variant,)*
        }

        impl TheoremId {
            pub const ALL: &'static [TheoremId] = &[$(TheoremId::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(TheoremId::$variant => $name,)*
                }
            }
        }

        impl FromStr for TheoremId {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s.trim().to_ascii_uppercase().as_str() {
                    $($name => Ok(TheoremId::$variant),)*
                    _ => Err(format!("unknown theorem id {s:?}")),
                }
            }
        }
    };
}

theorem_ids! {
    CharC1 => "CHAR_C1",
    CharC0C2 => "CHAR_C0C2",
    CharVConvex => "CHAR_VCONVEX",
    Imrich => "IMRICH",
    Mulder => "MULDER",
    MedModularK23Free => "MED_MODULAR_K23FREE",
    ModularMeshed => "MODULAR_MESHED",
    CharModMed => "CHARMODMED",
    PropN12 => "PROP_N12",
    CycleC4 => "CYCLE_C4",
    C6Q3Minus => "C6_Q3M",
    K33Free => "K33FREE",
    Bipartite => "BIPARTITE",
    CnDist => "CNDIST",
    QuartetC4 => "QUARTET_C4",
    TwoQuartets => "TWO_QUARTETS",
    NoConvexCycle => "NO_CONVEX_CYCLE",
    ConvexModular1Med => "CONVEX_MODULAR_1MED",
    IRhoConvex => "I_RHO_CONVEX",
}

impl TheoremId {
    /// Parses `all` or a comma-separated list of ids.
    pub fn parse_list(s: &str) -> Result<Vec<TheoremId>, String> {
        if s.trim().eq_ignore_ascii_case("all") {
            return Ok(TheoremId::ALL.to_vec());
        }
        let mut out: Vec<TheoremId> = s.split(',').filter(|p| !p.trim().is_empty()).map(str::parse).collect::<Result<_, _>>()?;
        if out.is_empty() {
            return Err("empty theorem list".into());
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail { witness: Value },
    Skipped { reason: String },
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremCheck {
    pub theorem: TheoremId,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl fmt::Display for TheoremCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::Pass => write!(f, "{:<20} pass", self.theorem.as_str()),
            Verdict::Skipped { reason } => write!(f, "{:<20} skipped ({reason})", self.theorem.as_str()),
            Verdict::Fail { witness } => write!(f, "{:<20} FAIL {witness}", self.theorem.as_str()),
        }
    }
}

/// Sampling and bound parameters shared by the suite and the searches.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Random closures drawn per medico vertex, on top of all intervals
    /// `I(mu, v)` and the whole vertex set.
    pub closure_samples: usize,
    /// Random triples whose hulls are sampled above `exhaustive_triples_up_to`.
    pub hull_samples: usize,
    /// Orders up to which the hulls of all triples are taken.
    pub exhaustive_triples_up_to: usize,
    pub max_cycle_len: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0x5EED,
            closure_samples: 50,
            hull_samples: 200,
            exhaustive_triples_up_to: 9,
            max_cycle_len: crate::patterns::DEFAULT_CYCLE_BOUND,
        }
    }
}

/// A self-contained record of `g` so a failure can be replayed.
pub fn graph_record(g: &Graph) -> Value {
    if g.order() <= GRAPH6_MAX_ORDER {
        json!({ "n": g.order(), "graph6": to_graph6(g).ok() })
    } else {
        json!({ "n": g.order(), "edgelist": to_edgelist(g) })
    }
}

fn mix(seed: u64, salt: u64) -> u64 {
    seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Vertex sets whose hulls are sampled as convex subgraphs: hulls of all
/// pairs, of all triples for small orders, and of random triples otherwise.
/// Deduplicated, in first-seen order. Requires a connected graph.
pub fn sample_convex_sets(m: &Metric, opts: &SuiteOptions, salt: u64) -> Vec<VertexSet> {
    let n = m.order();
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut push = |s: VertexSet| {
        if seen.insert(s.clone()) {
            out.push(s);
        }
    };
    let hull = |vs: &[usize]| m.convex_hull(&VertexSet::from_vertices(n, vs.iter().copied())).expect("connected");
    for u in 0..n {
        for v in u..n {
            push(hull(&[u, v]));
        }
    }
    if n <= opts.exhaustive_triples_up_to {
        for u in 0..n {
            for v in u + 1..n {
                for w in v + 1..n {
                    push(hull(&[u, v, w]));
                }
            }
        }
    } else if n > 0 {
        let mut rng = SplitMix64::new(mix(opts.seed, salt));
        for _ in 0..opts.hull_samples {
            let t: Vec<usize> = (0..3).map(|_| rng.below(n as u64) as usize).collect();
            push(hull(&t));
        }
    }
    out
}

/// Sampled `mu`-convex closures: every interval `I(mu, v)`, the whole
/// vertex set and `closure_samples` closures of random sets of one to three
/// vertices. Returns the distinct closures and the number of draws.
pub fn sample_closures(m: &Metric, mu: usize, opts: &SuiteOptions) -> (Vec<VertexSet>, usize) {
    let n = m.order();
    let mut draws = Vec::with_capacity(n + 1 + opts.closure_samples);
    for v in 0..n {
        draws.push(VertexSet::singleton(n, v));
    }
    draws.push(VertexSet::full(n));
    let mut rng = SplitMix64::new(mix(opts.seed, mu as u64 + 1));
    for _ in 0..opts.closure_samples {
        let size = 1 + rng.below(3.min(n) as u64) as usize;
        draws.push(VertexSet::from_vertices(n, (0..size).map(|_| rng.below(n as u64) as usize)));
    }
    let count = draws.len();
    let mut seen = std::collections::HashSet::new();
    let closures = draws
        .into_iter()
        .map(|s| m.v_convex_closure(mu, &s).expect("connected"))
        .filter(|c| seen.insert(c.clone()))
        .collect();
    (closures, count)
}
