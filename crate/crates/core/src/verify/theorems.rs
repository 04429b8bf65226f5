use std::cell::OnceCell;
use std::collections::HashMap;

use serde_json::{json, Value};

use super::{graph_record, oracle, sample_closures, sample_convex_sets, SuiteOptions, TheoremCheck, TheoremId, Verdict};
use crate::bitset::VertexSet;
use crate::conditions::{self, ConditionError};
use crate::distance::DistanceMatrix;
use crate::graph::Graph;
use crate::metric::Metric;
use crate::patterns::{self, Embedding, Pattern};

/// Cap on induced 6-cycles and 4-cycles examined per graph.
const EMBEDDING_CAP: usize = 100_000;

struct Ctx<'a> {
    g: &'a Graph,
    m: Metric,
    opts: &'a SuiteOptions,
    /// Medico set by the definition alone.
    medico: VertexSet,
    cycles: OnceCell<Result<Vec<Embedding>, String>>,
    found: OnceCell<HashMap<&'static str, bool>>,
}

type Check = Result<(), Value>;

fn skipped(reason: &str) -> Verdict {
    Verdict::Skipped { reason: reason.into() }
}

impl<'a> Ctx<'a> {
    fn d(&self) -> &DistanceMatrix {
        self.m.distances()
    }

    fn n(&self) -> usize {
        self.g.order()
    }

    fn k(&self) -> usize {
        self.medico.len()
    }

    fn is_median(&self) -> bool {
        self.n() >= 1 && self.k() == self.n()
    }

    fn medico_list(&self) -> Vec<usize> {
        self.medico.to_vec()
    }

    fn has(&self, pattern: Pattern) -> bool {
        let found = self.found.get_or_init(|| {
            [Pattern::K23, Pattern::K33, Pattern::Q3Minus, Pattern::C6]
                .into_iter()
                .map(|p| (pattern_key(p), patterns::find_induced(self.g, p).is_some()))
                .collect()
        });
        found[pattern_key(pattern)]
    }

    fn cycles(&self) -> Result<&Vec<Embedding>, Value> {
        self.cycles
            .get_or_init(|| patterns::induced_cycles(&self.m, self.opts.max_cycle_len).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(|e| json!({ "error": e }))
    }

    fn fail(&self, detail: Value) -> Verdict {
        let mut w = graph_record(self.g);
        w["detail"] = detail;
        Verdict::Fail { witness: w }
    }

    fn finish(&self, r: Check) -> Verdict {
        match r {
            Ok(()) => Verdict::Pass,
            Err(detail) => self.fail(detail),
        }
    }

    fn run(&self, id: TheoremId) -> Verdict {
        use TheoremId::*;
        let needs_vertices = !matches!(id, PropN12);
        if needs_vertices && self.n() == 0 {
            return skipped("empty graph");
        }
        let needs_k = matches!(
            id,
            CycleC4 | C6Q3Minus | K33Free | CnDist | QuartetC4 | TwoQuartets | NoConvexCycle | IRhoConvex
        );
        if needs_k && self.k() == 0 {
            return skipped("no medico vertex");
        }
        match id {
            CharC1 => self.finish(self.char_c1()),
            CharC0C2 => self.finish(self.char_c0c2()),
            CharVConvex => {
                if !self.m.is_connected() {
                    return skipped("disconnected");
                }
                self.finish(self.char_vconvex())
            }
            Imrich => self.finish(self.imrich()),
            Mulder => self.finish(self.mulder()),
            MedModularK23Free => self.finish(self.med_modular_k23free()),
            ModularMeshed => self.finish(self.modular_meshed()),
            CharModMed => self.charmodmed(),
            PropN12 => self.finish(self.prop_n12()),
            CycleC4 => self.finish(self.cycle_c4()),
            C6Q3Minus => self.finish(self.c6_q3m()),
            K33Free => self.finish(self.k33free()),
            Bipartite => self.finish(self.bipartite()),
            CnDist => self.finish(self.cndist()),
            QuartetC4 => self.finish(self.quartet_c4()),
            TwoQuartets => self.finish(self.two_quartets()),
            NoConvexCycle => self.finish(self.no_convex_cycle()),
            ConvexModular1Med => {
                let modular = conditions::is_modular(&self.m);
                if !(modular && self.k() >= 1) {
                    return skipped("needs a modular graph with a medico vertex");
                }
                self.finish(self.convex_modular_1med())
            }
            IRhoConvex => self.finish(self.i_rho_convex()),
        }
    }

    fn compare_sets(&self, side: &str, other: &VertexSet) -> Check {
        if &self.medico == other {
            Ok(())
        } else {
            Err(json!({
                "definition": self.medico,
                side: other,
                "differ": self.medico.union(other).difference(&self.medico.intersection(other)),
            }))
        }
    }

    fn char_c1(&self) -> Check {
        let c1 = VertexSet::from_vertices(self.n(), (0..self.n()).filter(|&mu| conditions::check_c1(&self.m, mu)));
        self.compare_sets("c1", &c1)?;
        self.compare_sets("interval_table", &self.m.medico_set())
    }

    fn char_c0c2(&self) -> Check {
        let side = if self.m.is_connected() && self.m.is_bipartite() {
            VertexSet::from_vertices(
                self.n(),
                (0..self.n()).filter(|&mu| conditions::check_c0(&self.m, mu) == Ok(true) && conditions::check_c2(&self.m, mu)),
            )
        } else {
            VertexSet::new(self.n())
        };
        self.compare_sets("c0_c2_bipartite_connected", &side)
    }

    /// `mu` is medico iff it is medico in every sampled `mu`-convex subgraph
    /// (the whole graph is always among the samples).
    fn char_vconvex(&self) -> Check {
        for mu in 0..self.n() {
            let (closures, _) = sample_closures(&self.m, mu, self.opts);
            let bad = closures.iter().find(|t| !self.closure_facts(mu, t, false).medico_in_h);
            if self.medico.contains(mu) == bad.is_some() {
                return Err(json!({ "mu": mu, "definition": self.medico.contains(mu), "closure": bad }));
            }
        }
        Ok(())
    }

    fn imrich(&self) -> Check {
        let imrich = self.m.imrich_condition();
        if imrich == self.is_median() {
            Ok(())
        } else {
            Err(json!({ "median": self.is_median(), "imrich": imrich, "triple": self.m.imrich_witness() }))
        }
    }

    fn mulder(&self) -> Check {
        let side = self.m.is_connected()
            && self.m.is_interval_monotone() == Ok(true)
            && (0..self.n()).all(|mu| conditions::check_c0(&self.m, mu) == Ok(true));
        if side == self.is_median() {
            Ok(())
        } else {
            Err(json!({ "median": self.is_median(), "connected_monotone_c0": side }))
        }
    }

    fn med_modular_k23free(&self) -> Check {
        let modular = conditions::is_modular(&self.m);
        let k23 = self.has(Pattern::K23);
        if (modular && !k23) == self.is_median() {
            Ok(())
        } else {
            Err(json!({ "median": self.is_median(), "modular": modular, "has_k23": k23 }))
        }
    }

    fn modular_meshed(&self) -> Check {
        let modular = conditions::is_modular(&self.m);
        let by_definition = oracle::is_modular(self.d());
        let meshed = conditions::is_meshed(&self.m).unwrap_or(false);
        let rhs = self.m.is_connected() && self.m.is_bipartite() && meshed;
        let among_k_median = self.k() == 0 || modular == meshed;
        if modular == by_definition && modular == rhs && among_k_median {
            Ok(())
        } else {
            Err(json!({
                "modular": modular,
                "modular_by_definition": by_definition,
                "meshed": meshed,
                "connected": self.m.is_connected(),
                "bipartite": self.m.is_bipartite(),
                "k": self.k(),
            }))
        }
    }

    fn charmodmed(&self) -> Verdict {
        let mut side = VertexSet::new(self.n());
        for mu in 0..self.n() {
            match conditions::charmodmed_check(&self.m, mu) {
                Ok(true) => {
                    side.insert(mu);
                }
                Ok(false) => {}
                Err(ConditionError::NotModular) => return skipped("not modular"),
                Err(ConditionError::Incomplete) => return skipped("K2,3 enumeration incomplete"),
                Err(ConditionError::Disconnected) => return skipped("disconnected"),
            }
        }
        self.finish(self.compare_sets("charmodmed", &side))
    }

    fn prop_n12(&self) -> Check {
        let (n, k) = (self.n(), self.k());
        if n >= 3 && (k + 1 == n || k + 2 == n) {
            Err(json!({ "n": n, "k": k }))
        } else {
            Ok(())
        }
    }

    fn cycle_c4(&self) -> Check {
        for (a, b) in self.g.edges() {
            if patterns::edge_on_cycle(self.g, a, b).unwrap() && patterns::edge_on_induced_c4(self.g, a, b).unwrap().is_none() {
                return Err(json!({ "edge": [a, b] }));
            }
        }
        Ok(())
    }

    fn c6_q3m(&self) -> Check {
        let (c6, q3m) = (self.has(Pattern::C6), self.has(Pattern::Q3Minus));
        if c6 != q3m {
            return Err(json!({ "has_c6": c6, "has_q3minus": q3m }));
        }
        let all = patterns::find_all_induced(self.g, Pattern::C6, EMBEDDING_CAP);
        for e in &all.embeddings {
            for mu in self.medico_list() {
                let p = patterns::delta_profile(&self.m, e, mu).map_err(|err| json!({ "error": err.to_string() }))?;
                if patterns::classify_profile(&p).is_none() {
                    return Err(json!({ "cycle": e.vertices, "mu": mu, "profile": p }));
                }
            }
        }
        Ok(())
    }

    fn k33free(&self) -> Check {
        match patterns::find_induced(self.g, Pattern::K33) {
            None => Ok(()),
            Some(e) => Err(json!({ "k33": e.vertices })),
        }
    }

    /// Medico graphs are bipartite with distance gap exactly one across
    /// every edge; C1 alone already forbids equal distances across an
    /// edge; and bipartiteness matches the equal-distance edge criterion.
    fn bipartite(&self) -> Check {
        let d = self.d();
        if self.k() >= 1 && !self.m.is_bipartite() {
            return Err(json!({ "k": self.k(), "bipartite": false }));
        }
        for mu in self.medico_list() {
            for (a, b) in self.g.edges() {
                if d.get(mu, a).unwrap().abs_diff(d.get(mu, b).unwrap()) != 1 {
                    return Err(json!({ "mu": mu, "edge": [a, b] }));
                }
            }
        }
        for mu in 0..self.n() {
            if conditions::check_c1(&self.m, mu) {
                if let Some((a, b)) = self.g.edges().find(|&(a, b)| d.get(mu, a) == d.get(mu, b)) {
                    return Err(json!({ "c1_vertex": mu, "edge": [a, b] }));
                }
            }
        }
        if self.m.is_connected() {
            let equal_edge = self.g.edges().any(|(a, b)| (0..self.n()).any(|x| d.get(x, a) == d.get(x, b)));
            if equal_edge == self.m.is_bipartite() {
                return Err(json!({ "bipartite": self.m.is_bipartite(), "equal_distance_edge": equal_edge }));
            }
        }
        Ok(())
    }

    fn cndist(&self) -> Check {
        let d = self.d();
        for c in self.cycles()? {
            let r = &c.vertices;
            let l = r.len();
            for mu in self.medico_list() {
                let dist: Vec<u32> = r.iter().map(|&v| d.get(mu, v).unwrap()).collect();
                let k = *dist.iter().min().unwrap();
                for j in (0..l).filter(|&j| dist[j] == k) {
                    for i in 0..l {
                        let steps = j.abs_diff(i).min(l - j.abs_diff(i)) as u32;
                        let excess = dist[i] - k;
                        if excess > steps || !(steps - excess).is_multiple_of(2) {
                            return Err(json!({ "cycle": r, "mu": mu, "closest": r[j], "vertex": r[i], "distances": dist }));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn is_quartet(&self, x: usize, z: usize, y: usize, w: usize) -> bool {
        let d = self.d();
        let all_distinct = x != z && x != y && x != w && z != y && z != w && y != w;
        all_distinct
            && self.g.has_edge(x, y)
            && self.g.has_edge(z, y)
            && d.get(x, z) == Some(2)
            && d.get(x, w) == d.get(z, w)
            && d.get(y, w).zip(d.get(x, w)).is_some_and(|(dy, dx)| dy == dx + 1)
    }

    fn quartet_c4(&self) -> Check {
        let d = self.d();
        let c4s = patterns::find_all_induced(self.g, Pattern::C4, EMBEDDING_CAP).embeddings;
        for mu in self.medico_list() {
            for q in conditions::enumerate_quartets(&self.m, mu) {
                let closing = self.g.neighbors(q.x).intersection(self.g.neighbors(q.z)).iter().find(|&u| {
                    u != q.y && !self.g.has_edge(u, q.y) && d.get(u, mu) == Some(q.level - 1)
                });
                if closing.is_none() {
                    return Err(json!({ "mu": mu, "quartet": q, "induced_c4": null }));
                }
            }
            for c in &c4s {
                let r = &c.vertices;
                let dist: Vec<u32> = r.iter().map(|&v| d.get(mu, v).unwrap()).collect();
                let min = *dist.iter().min().unwrap();
                let closest: Vec<usize> = (0..4).filter(|&i| dist[i] == min).collect();
                let ok = closest.len() == 1 && {
                    let u = closest[0];
                    self.is_quartet(r[(u + 1) % 4], r[(u + 3) % 4], r[(u + 2) % 4], mu)
                };
                if !ok {
                    return Err(json!({ "mu": mu, "c4": r, "distances": dist }));
                }
            }
            if let Some(q) = conditions::mu_meshed_witness(&self.m, mu).unwrap() {
                return Err(json!({ "mu": mu, "not_mu_meshed": q }));
            }
            for c in self.cycles()? {
                let r = &c.vertices;
                let l = r.len();
                if !(0..l).any(|i| self.is_quartet(r[(i + l - 1) % l], r[(i + 1) % l], r[i], mu)) {
                    return Err(json!({ "mu": mu, "cycle_without_quartet": r }));
                }
            }
        }
        Ok(())
    }

    /// Whether two quartets `(x,z,y,mu)`, `(x,z',y,mu)` with `z != z'` exist.
    fn two_quartets_at(&self, mu: usize) -> Option<(usize, usize, usize, usize)> {
        let mut by_centre: HashMap<(usize, usize), usize> = HashMap::new();
        for q in conditions::enumerate_quartets(&self.m, mu) {
            for (a, b) in [(q.x, q.z), (q.z, q.x)] {
                if let Some(&other) = by_centre.get(&(q.y, a)) {
                    if other != b {
                        return Some((a, other, b, q.y));
                    }
                } else {
                    by_centre.insert((q.y, a), b);
                }
            }
        }
        None
    }

    fn two_quartets(&self) -> Check {
        let (k23, q3m) = (self.has(Pattern::K23), self.has(Pattern::Q3Minus));
        for mu in self.medico_list() {
            let two = self.two_quartets_at(mu);
            if two.is_some() && !(k23 || q3m) {
                return Err(json!({ "mu": mu, "quartets": two, "has_k23": k23, "has_q3minus": q3m }));
            }
            if !q3m && k23 != two.is_some() {
                return Err(json!({ "mu": mu, "q3minus_free": true, "has_k23": k23, "two_quartets": two }));
            }
        }
        Ok(())
    }

    fn no_convex_cycle(&self) -> Check {
        for c in self.cycles()? {
            if c.vertices.len() > 4 && patterns::is_convex_cycle(&self.m, c) {
                return Err(json!({ "convex_cycle": c.vertices }));
            }
        }
        Ok(())
    }

    fn convex_modular_1med(&self) -> Check {
        let median = self.is_median();
        for s in sample_convex_sets(&self.m, self.opts, 0) {
            let (h, _) = self.g.induced_subgraph(&s);
            let hk = Metric::new(h).k_median_number();
            if hk == 0 || (median && hk != s.len()) {
                return Err(json!({ "convex_set": s, "k_of_subgraph": hk, "median": median }));
            }
        }
        Ok(())
    }

    /// Facts about the `mu`-convex closure `t`, judged as an induced graph.
    fn closure_facts(&self, mu: usize, t: &VertexSet, full: bool) -> ClosureFacts {
        let d = self.d();
        let (h, map) = self.g.induced_subgraph(t);
        let hm = Metric::new(h);
        let local = map.iter().position(|&v| v == mu).unwrap();
        let medico_in_h = hm.is_medico(local);
        if !full {
            return ClosureFacts { medico_in_h, ..ClosureFacts::default() };
        }
        let forced = |a: usize, b: usize| {
            t.iter().any(|x| {
                let on = |p: usize, q: usize| match (d.get(mu, p), d.get(q, x), d.get(mu, x)) {
                    (Some(s), Some(e), Some(total)) => s + 1 + e == total,
                    _ => false,
                };
                on(a, b) || on(b, a)
            })
        };
        let induced = hm.graph().edges().all(|(a, b)| forced(map[a], map[b]));
        let isometric = self.m.is_isometric(t);
        let mut medians_agree = true;
        'outer: for i in 0..map.len() {
            for j in i + 1..map.len() {
                if i == local || j == local {
                    continue;
                }
                let in_h = hm.median_set(local, i, j).unwrap().median_set;
                let mapped = VertexSet::from_vertices(self.n(), in_h.iter().map(|x| map[x]));
                if mapped != oracle::median_set(d, mu, map[i], map[j]) {
                    medians_agree = false;
                    break 'outer;
                }
            }
        }
        ClosureFacts {
            medico_in_h,
            induced,
            isometric,
            medians_agree,
        }
    }

    fn i_rho_convex(&self) -> Check {
        for mu in self.medico_list() {
            for v in 0..self.n() {
                let s = oracle::interval(self.d(), mu, v);
                let closed = self.m.v_convex_closure(mu, &s).unwrap() == s;
                let facts = self.closure_facts(mu, &s, true);
                if !(closed && facts.isometric && facts.medico_in_h) {
                    return Err(json!({ "mu": mu, "interval_to": v, "mu_convex": closed, "facts": facts.to_json() }));
                }
            }
            let (closures, draws) = sample_closures(&self.m, mu, self.opts);
            for t in &closures {
                let facts = self.closure_facts(mu, t, true);
                if !facts.all() {
                    return Err(json!({ "mu": mu, "closure": t, "draws": draws, "facts": facts.to_json() }));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Default)]
struct ClosureFacts {
    medico_in_h: bool,
    induced: bool,
    isometric: bool,
    medians_agree: bool,
}

impl ClosureFacts {
    fn all(&self) -> bool {
        self.medico_in_h && self.induced && self.isometric && self.medians_agree
    }

    fn to_json(&self) -> Value {
        json!({
            "medico_in_subgraph": self.medico_in_h,
            "induced": self.induced,
            "isometric": self.isometric,
            "medians_agree": self.medians_agree,
        })
    }
}

fn pattern_key(p: Pattern) -> &'static str {
    match p {
        Pattern::K23 => "k23",
        Pattern::K33 => "k33",
        Pattern::Q3Minus => "q3minus",
        _ => "c6",
    }
}

/// Runs the selected checks on `g`, in the order given.
pub fn run_theorem_suite(g: &Graph, which: &[TheoremId], opts: &SuiteOptions) -> Vec<TheoremCheck> {
    let m = Metric::new(g.clone());
    let medico = oracle::medico_set(m.distances());
    let ctx = Ctx {
        g,
        m,
        opts,
        medico,
        cycles: OnceCell::new(),
        found: OnceCell::new(),
    };
    which
        .iter()
        .map(|&id| TheoremCheck {
            theorem: id,
            verdict: ctx.run(id),
        })
        .collect()
}
