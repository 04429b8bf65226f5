//! Whole-graph analysis: medico set, classification flags, per-vertex
//! conditions and pattern findings, serialized as a versioned JSON document.

use std::fmt;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::conditions::{self, ConditionReport};
use crate::format::Format;
use crate::graph::{Bipartition, Graph};
use crate::metric::{MedicoWitness, Metric};
use crate::patterns::{self, Embedding, Pattern};

pub const SCHEMA_VERSION: u32 = 1;

/// At most this many failing-triple witnesses are listed for non-medico vertices.
const MEDICO_WITNESS_LIMIT: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub connected: bool,
    pub bipartite: bool,
    pub median: bool,
    pub modular: bool,
    /// `null` on disconnected graphs.
    pub meshed: Option<bool>,
    /// `null` on disconnected graphs.
    pub interval_monotone: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexConditions {
    pub vertex: usize,
    pub c0: Option<bool>,
    pub c1: bool,
    pub c2: bool,
    pub mu_meshed: Option<bool>,
}

impl From<&ConditionReport> for VertexConditions {
    fn from(r: &ConditionReport) -> Self {
        VertexConditions {
            vertex: r.mu,
            c0: r.c0,
            c1: r.c1,
            c2: r.c2,
            mu_meshed: r.mu_meshed,
        }
    }
}

/// First embedding found per pattern, or `null`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternFindings {
    pub k23: Option<Embedding>,
    pub k33: Option<Embedding>,
    pub q3minus: Option<Embedding>,
    pub c6: Option<Embedding>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Timings {
    pub metric: f64,
    pub medico: f64,
    pub classification: f64,
    pub conditions: f64,
    pub patterns: f64,
    pub total: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub n: usize,
    pub m: usize,
    pub format: Option<String>,
    pub flags: Flags,
    pub k: usize,
    pub medico: Vec<usize>,
    pub conditions: Vec<VertexConditions>,
    pub patterns: PatternFindings,
    pub witnesses: Vec<Value>,
    pub notes: Vec<String>,
    pub timings_ms: Timings,
}

fn ms(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

/// Runs the full analysis. `format` is only recorded in the report.
pub fn analyze(g: &Graph, format: Option<Format>) -> AnalysisReport {
    let start = Instant::now();
    let mut timings = Timings::default();

    let t = Instant::now();
    let m = Metric::new(g.clone());
    timings.metric = ms(t);

    let t = Instant::now();
    let medico_set = m.medico_set();
    timings.medico = ms(t);
    let n = g.order();
    let k = medico_set.len();

    let t = Instant::now();
    let mut witnesses = Vec::new();
    let mut notes = Vec::new();
    let connected = m.is_connected();
    let modular_witness = conditions::modular_witness(&m);
    let meshed_witness = conditions::meshed_witness(&m).ok();
    let monotone_witness = m.interval_monotone_witness().ok();
    let flags = Flags {
        connected,
        bipartite: m.is_bipartite(),
        median: n >= 1 && k == n,
        modular: modular_witness.is_none(),
        meshed: meshed_witness.map(|w| w.is_none()),
        interval_monotone: monotone_witness.map(|w| w.is_none()),
    };
    if let Some(t) = modular_witness {
        witnesses.push(json!({ "kind": "empty_median_set", "triple": t }));
    }
    if let Some(Some(q)) = meshed_witness {
        witnesses.push(json!({ "kind": "quadrangle_failure", "quartet": q }));
    }
    if let Some(Some(w)) = monotone_witness {
        witnesses.push(json!({ "kind": "non_convex_interval", "witness": w }));
    }
    if let Bipartition::OddCycle(c) = g.bipartition() {
        witnesses.push(json!({ "kind": "odd_cycle", "cycle": c }));
        notes.push("non-bipartite: v-convex subgraph not unique".to_string());
    }
    if !connected {
        notes.push("disconnected: c0, mu_meshed, meshed and interval_monotone are undefined".to_string());
    }
    timings.classification = ms(t);

    let non_medico: Vec<usize> = (0..n).filter(|&v| !medico_set.contains(v)).collect();
    if connected {
        for &v in non_medico.iter().take(MEDICO_WITNESS_LIMIT) {
            if let Some(MedicoWitness::Triple { v: a, w: b, median_set }) = m.medico_witness(v) {
                witnesses.push(json!({ "kind": "not_medico", "vertex": v, "pair": [a, b], "median_set": median_set }));
            }
        }
        if non_medico.len() > MEDICO_WITNESS_LIMIT {
            notes.push(format!(
                "not_medico witnesses listed for the first {MEDICO_WITNESS_LIMIT} of {} vertices",
                non_medico.len()
            ));
        }
    }

    let t = Instant::now();
    let conditions: Vec<VertexConditions> = conditions::condition_reports(&m).iter().map(VertexConditions::from).collect();
    timings.conditions = ms(t);

    let t = Instant::now();
    let (k23, (k33, (q3minus, c6))) = rayon::join(
        || patterns::find_induced(g, Pattern::K23),
        || {
            rayon::join(
                || patterns::find_induced(g, Pattern::K33),
                || {
                    rayon::join(
                        || patterns::find_induced(g, Pattern::Q3Minus),
                        || patterns::find_induced(g, Pattern::C6),
                    )
                },
            )
        },
    );
    timings.patterns = ms(t);
    timings.total = ms(start);

    AnalysisReport {
        schema: SCHEMA_VERSION,
        n,
        m: g.size(),
        format: format.map(|f| f.name().to_string()),
        flags,
        k,
        medico: medico_set.to_vec(),
        conditions,
        patterns: PatternFindings { k23, k33, q3minus, c6 },
        witnesses,
        notes,
        timings_ms: timings,
    }
}

fn opt(b: Option<bool>) -> String {
    b.map_or("n/a".to_string(), |b| b.to_string())
}

fn embedding(e: &Option<Embedding>) -> String {
    e.as_ref().map_or("none".to_string(), |e| format!("{:?}", e.vertices))
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fl = &self.flags;
        writeln!(f, "n={} m={}", self.n, self.m)?;
        writeln!(
            f,
            "connected={} bipartite={} median={} modular={} meshed={} interval_monotone={}",
            fl.connected,
            fl.bipartite,
            fl.median,
            fl.modular,
            opt(fl.meshed),
            opt(fl.interval_monotone)
        )?;
        writeln!(f, "k={} medico={:?}", self.k, self.medico)?;
        let p = &self.patterns;
        writeln!(
            f,
            "patterns: k23={} k33={} q3minus={} c6={}",
            embedding(&p.k23),
            embedding(&p.k33),
            embedding(&p.q3minus),
            embedding(&p.c6)
        )?;
        let failing = |pick: fn(&VertexConditions) -> Option<bool>| -> Vec<usize> {
            self.conditions.iter().filter(|c| pick(c) == Some(false)).map(|c| c.vertex).collect()
        };
        writeln!(
            f,
            "failing: c0={:?} c1={:?} c2={:?} mu_meshed={:?}",
            failing(|c| c.c0),
            failing(|c| Some(c.c1)),
            failing(|c| Some(c.c2)),
            failing(|c| c.mu_meshed)
        )?;
        for note in &self.notes {
            writeln!(f, "note: {note}")?;
        }
        write!(f, "time: {:.1} ms", self.timings_ms.total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, FamilySpec};

    #[test]
    fn k23_report() {
        let g = generate(&FamilySpec::CompleteBipartite(2, 3), 0).unwrap();
        let r = analyze(&g, Some(Format::Graph6));
        assert_eq!((r.k, r.medico.clone()), (2, vec![0, 1]));
        assert!(r.flags.modular && !r.flags.median && r.flags.interval_monotone == Some(false));
        assert_eq!(r.patterns.k23.as_ref().unwrap().vertices, vec![0, 1, 2, 3, 4]);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["patterns"]["k33"], Value::Null);
        assert_eq!(v["conditions"][2]["c2"], false);
    }

    #[test]
    fn q3_minus_report() {
        let g = generate(&FamilySpec::HypercubeMinus(3), 0).unwrap();
        let r = analyze(&g, None);
        assert_eq!(r.k, 4);
        assert!(!r.flags.modular && r.patterns.q3minus.is_some());
        assert!(r.witnesses.iter().any(|w| w["triple"] == json!([3, 5, 6])));
    }

    #[test]
    fn disconnected_and_trivial() {
        let r = analyze(&Graph::from_edges(3, [(0, 1)]).unwrap(), None);
        assert_eq!(r.k, 0);
        assert_eq!(r.flags.meshed, None);
        assert_eq!(r.conditions[0].c0, None);
        let r = analyze(&Graph::empty(1), None);
        assert!(r.flags.median && r.k == 1);
        let r = analyze(&Graph::empty(0), None);
        assert!(!r.flags.median && r.flags.modular);
    }
}
