//! Acceptance gate. Prints one line per criterion and exits non-zero if any
//! criterion fails. Expected values are either literal small-graph facts or
//! computed here by brute force that shares no code with the library.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use medico::conditions;
use medico::format::graph6_stream;
use medico::generators::{generate, generate_with, random_bipartite_connected, standard_families, FamilySpec, RESAMPLE_CAP};
use medico::patterns::{self, Pattern};
use medico::rng::SplitMix64;
use medico::verify::{run_theorem_suite, sample_closures, search, Problem, SearchOptions, SuiteOptions, TheoremCheck, TheoremId};
use medico::{analyze, Graph, Metric};
use rayon::prelude::*;

const CORPUS_SEED: u64 = 20_240_601;
const RANDOM_GRAPHS: usize = 10_000;

type Outcome = Result<String, String>;

struct Gate {
    failed: usize,
}

impl Gate {
    fn run(&mut self, id: u32, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) {
        let t = Instant::now();
        let mut outcome = f();
        let elapsed = t.elapsed();
        if let (Ok(msg), Some(limit)) = (&outcome, limit) {
            if elapsed > limit {
                outcome = Err(format!("{msg}; took {elapsed:.2?}, limit {limit:.0?}"));
            }
        }
        match outcome {
            Ok(msg) => println!("PASS  {id}. {name}: {msg} [{elapsed:.2?}]"),
            Err(msg) => {
                self.failed += 1;
                println!("FAIL  {id}. {name}: {msg} [{elapsed:.2?}]");
            }
        }
    }
}

// ---------- independent brute force ----------

const INF: u32 = u32::MAX;

fn floyd(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.order();
    let mut d = vec![vec![INF; n]; n];
    for (u, row) in d.iter_mut().enumerate() {
        row[u] = 0;
        for v in g.neighbors(u) {
            row[v] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] != INF && d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

fn between(d: &[Vec<u32>], a: usize, x: usize, b: usize) -> bool {
    d[a][b] != INF && d[a][x] != INF && d[x][b] != INF && d[a][x] + d[x][b] == d[a][b]
}

fn medians(d: &[Vec<u32>], u: usize, v: usize, w: usize) -> Vec<usize> {
    (0..d.len()).filter(|&x| between(d, u, x, v) && between(d, u, x, w) && between(d, v, x, w)).collect()
}

fn brute_medico(g: &Graph) -> Vec<usize> {
    let d = floyd(g);
    let n = g.order();
    if d.iter().flatten().any(|&x| x == INF) {
        return Vec::new();
    }
    (0..n)
        .filter(|&mu| {
            (0..n).all(|v| (v + 1..n).all(|w| v == mu || w == mu || medians(&d, mu, v, w).len() == 1))
        })
        .collect()
}

fn brute_modular(g: &Graph) -> bool {
    let d = floyd(g);
    let n = g.order();
    (0..n).all(|u| (u..n).all(|v| (v..n).all(|w| !medians(&d, u, v, w).is_empty())))
}

/// Union of the vertices of every shortest `u`-`v` path, found by listing
/// all simple paths from `u`.
fn paths_interval(g: &Graph, u: usize, v: usize) -> Option<Vec<usize>> {
    fn walk(g: &Graph, at: usize, target: usize, path: &mut Vec<usize>, best: &mut Option<(usize, Vec<bool>)>) {
        if at == target {
            let len = path.len();
            match best {
                Some((l, _)) if *l < len => {}
                Some((l, on)) if *l == len => path.iter().for_each(|&x| on[x] = true),
                _ => {
                    let mut on = vec![false; g.order()];
                    path.iter().for_each(|&x| on[x] = true);
                    *best = Some((len, on));
                }
            }
            return;
        }
        for y in g.neighbors(at) {
            if !path.contains(&y) {
                path.push(y);
                walk(g, y, target, path, best);
                path.pop();
            }
        }
    }
    let mut best = None;
    walk(g, u, v, &mut vec![u], &mut best);
    best.map(|(_, on)| (0..g.order()).filter(|&x| on[x]).collect())
}

/// Induced copy of `p` in `g` by trying every injective vertex map.
fn brute_induced(g: &Graph, p: &Graph) -> bool {
    fn extend(g: &Graph, p: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == p.order() {
            return true;
        }
        for x in 0..g.order() {
            if used[x] || (0..i).any(|j| p.has_edge(i, j) != g.has_edge(x, map[j])) {
                continue;
            }
            used[x] = true;
            map.push(x);
            if extend(g, p, map, used) {
                return true;
            }
            map.pop();
            used[x] = false;
        }
        false
    }
    p.order() <= g.order() && extend(g, p, &mut Vec::new(), &mut vec![false; g.order()])
}

// ---------- corpus ----------

struct Entry {
    label: String,
    graph: Graph,
}

/// Standard families followed by random connected bipartite graphs with
/// `n` uniform in 3..=10 and edge probability uniform in [0.2, 0.8).
fn corpus() -> Vec<Entry> {
    let mut out: Vec<Entry> = standard_families()
        .into_iter()
        .map(|s| Entry { label: s.to_string(), graph: generate(&s, 0).expect("family") })
        .collect();
    let mut rng = SplitMix64::new(CORPUS_SEED);
    for i in 0..RANDOM_GRAPHS {
        let n = 3 + rng.below(8) as usize;
        let p = 0.2 + 0.6 * rng.next_f64();
        let g = generate_with(&FamilySpec::RandomBipartiteConnected { n, p }, &mut rng).expect("random graph");
        out.push(Entry { label: format!("random#{i} (n={n}, p={p:.3})"), graph: g });
    }
    out
}

fn replay(e: &Entry) -> String {
    let edges: Vec<(usize, usize)> = e.graph.edges().collect();
    format!("{} n={} edges={:?}", e.label, e.graph.order(), edges)
}

fn suite_failures(corpus: &[Entry], ids: &[TheoremId]) -> Vec<String> {
    let opts = SuiteOptions::default();
    corpus
        .par_iter()
        .flat_map_iter(|e| {
            run_theorem_suite(&e.graph, ids, &opts)
                .into_iter()
                .filter(|c: &TheoremCheck| c.verdict.is_fail())
                .map(move |c| format!("{c} on {}", replay(e)))
        })
        .collect()
}

fn first_few(v: &[String]) -> String {
    let shown: Vec<&str> = v.iter().take(3).map(String::as_str).collect();
    format!("{} violations, first: {}", v.len(), shown.join(" | "))
}

// ---------- criteria ----------

fn named_k_values() -> Outcome {
    let k = |s: FamilySpec| Metric::new(generate(&s, 0).unwrap()).k_median_number();
    let mut cases = vec![
        ("K2,3", k(FamilySpec::CompleteBipartite(2, 3)), 2),
        ("Q3-", k(FamilySpec::HypercubeMinus(3)), 4),
        ("K3,3", k(FamilySpec::CompleteBipartite(3, 3)), 0),
        ("C4", k(FamilySpec::Cycle(4)), 4),
        ("Q3", k(FamilySpec::Hypercube(3)), 8),
        ("Q4", k(FamilySpec::Hypercube(4)), 16),
    ];
    for m in 3..=6 {
        cases.push(("C2m", k(FamilySpec::Cycle(2 * m)), 0));
    }
    let q3m = generate(&FamilySpec::HypercubeMinus(3), 0).unwrap();
    cases.push(("Q3- non-medico", q3m.order() - Metric::new(q3m).k_median_number(), 3));
    let bad: Vec<String> = cases
        .iter()
        .filter(|(_, got, want)| got != want)
        .map(|(name, got, want)| format!("{name}: k={got}, expected {want}"))
        .collect();
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }

    let mut rng = SplitMix64::new(CORPUS_SEED);
    let mut trees = 0;
    for n in 1..=64 {
        let mut specs = vec![FamilySpec::Path(n), FamilySpec::Star(n - 1)];
        specs.extend((0..4).map(|_| FamilySpec::RandomTree(n)));
        for s in specs {
            let g = generate_with(&s, &mut rng).unwrap();
            let k = Metric::new(g.clone()).k_median_number();
            if k != n {
                return Err(format!("tree {s} (n={n}) has k={k}: {:?}", g.edges().collect::<Vec<_>>()));
            }
            trees += 1;
        }
    }
    Ok(format!("{} named graphs and {trees} trees with n<=64 match", cases.len()))
}

fn prop_n12(corpus: &[Entry]) -> Outcome {
    let bad: Vec<String> = corpus
        .par_iter()
        .filter_map(|e| {
            let n = e.graph.order();
            let k = Metric::new(e.graph.clone()).k_median_number();
            (n >= 3 && (k + 1 == n || k + 2 == n)).then(|| format!("k={k} on {}", replay(e)))
        })
        .collect();
    let suite = suite_failures(corpus, &[TheoremId::PropN12]);
    if bad.is_empty() && suite.is_empty() {
        Ok(format!("{} graphs, none with k in {{n-1, n-2}}", corpus.len()))
    } else {
        Err(first_few(&[bad, suite].concat()))
    }
}

fn characterizations(corpus: &[Entry]) -> Outcome {
    use TheoremId::*;
    let ids = [CharC1, CharC0C2, CharVConvex, Imrich, Mulder, MedModularK23Free, ModularMeshed, CharModMed];
    let mut bad = suite_failures(corpus, &ids);
    bad.extend(corpus.par_iter().filter_map(|e| {
        let lib = Metric::new(e.graph.clone()).medico_set().to_vec();
        let brute = brute_medico(&e.graph);
        (lib != brute).then(|| format!("medico {lib:?} vs brute force {brute:?} on {}", replay(e)))
    }).collect::<Vec<_>>());
    if bad.is_empty() {
        Ok(format!("{} graphs x {} characterizations plus brute-force medico sets agree", corpus.len(), ids.len()))
    } else {
        Err(first_few(&bad))
    }
}

fn structural(corpus: &[Entry]) -> Outcome {
    use TheoremId::*;
    let ids = [Bipartite, K33Free, CycleC4, C6Q3Minus, NoConvexCycle, CnDist, QuartetC4, TwoQuartets];
    let mut bad = suite_failures(corpus, &ids);
    // Edge gap and bipartiteness again, straight from the brute-force distances.
    bad.extend(corpus.par_iter().filter_map(|e| {
        let medico = brute_medico(&e.graph);
        if medico.is_empty() {
            return None;
        }
        let d = floyd(&e.graph);
        let gap = medico.iter().all(|&mu| e.graph.edges().all(|(a, b)| d[mu][a].abs_diff(d[mu][b]) == 1));
        (!gap || !e.graph.is_bipartite()).then(|| format!("edge gap / bipartite on {}", replay(e)))
    }).collect::<Vec<_>>());
    let with_medico = corpus.iter().filter(|e| !brute_medico(&e.graph).is_empty()).count();
    if bad.is_empty() {
        Ok(format!("{with_medico} graphs with k>=1, zero violations"))
    } else {
        Err(first_few(&bad))
    }
}

fn mu_convexity(corpus: &[Entry]) -> Outcome {
    let mut bad = suite_failures(corpus, &[TheoremId::IRhoConvex]);
    let opts = SuiteOptions::default();
    let (min_draws, pairs) = corpus
        .par_iter()
        .map(|e| {
            let m = Metric::new(e.graph.clone());
            m.medico_set().iter().fold((usize::MAX, 0usize), |(lo, c), mu| {
                let (_, draws) = sample_closures(&m, mu, &opts);
                (lo.min(draws), c + 1)
            })
        })
        .reduce(|| (usize::MAX, 0), |a, b| (a.0.min(b.0), a.1 + b.1));
    if min_draws < 50 {
        bad.push(format!("only {min_draws} closures drawn for some medico vertex"));
    }
    if bad.is_empty() {
        Ok(format!("{pairs} (graph, medico) pairs, at least {min_draws} closures each, zero violations"))
    } else {
        Err(first_few(&bad))
    }
}

fn small_order_oracles() -> Outcome {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/all_graphs_n7.g6");
    let file = File::open(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let graphs: Vec<Graph> = graph6_stream(BufReader::new(file)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let pats = [Pattern::C4, Pattern::K23, Pattern::K33, Pattern::Q3Minus, Pattern::C6];
    let mismatches: Vec<String> = graphs
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, g)| {
            let mut out = Vec::new();
            let m = Metric::new(g.clone());
            let n = g.order();
            for u in 0..n {
                for v in u..n {
                    let lib = m.interval(u, v).ok().map(|s| s.to_vec());
                    let brute = paths_interval(g, u, v);
                    if lib != brute {
                        out.push(format!("graph {i}: I({u},{v}) {lib:?} vs {brute:?}"));
                    }
                }
            }
            for p in pats {
                let found = patterns::find_induced(g, p);
                if found.as_ref().is_some_and(|e| !e.is_induced_in(g)) || found.is_some() != brute_induced(g, &p.graph()) {
                    out.push(format!("graph {i}: pattern {p} mismatch"));
                }
            }
            if conditions::is_modular(&m) != brute_modular(g) {
                out.push(format!("graph {i}: modularity mismatch"));
            }
            out.into_iter()
        })
        .collect();
    if graphs.len() != 1253 {
        return Err(format!("expected 1253 graphs with n<=7, read {}", graphs.len()));
    }
    if mismatches.is_empty() {
        Ok(format!("{} graphs: intervals, {} patterns and modularity match brute force", graphs.len(), pats.len()))
    } else {
        Err(first_few(&mismatches))
    }
}

fn open_problems(corpus: &[Entry]) -> Outcome {
    let mut lines = Vec::new();
    for problem in [Problem::P1, Problem::P3] {
        let mut findings = Vec::new();
        let source = corpus.iter().map(|e| Ok::<_, ()>(e.graph.clone()));
        let summary = search(problem, source, &SearchOptions::default(), |h| {
            findings.push(serde_json::to_string(h).unwrap())
        })
        .map_err(|_| "stream error".to_string())?;
        for f in &findings {
            println!("      finding {problem}: {f}");
        }
        lines.push(format!("{problem}: {summary}"));
    }
    Ok(lines.join(", "))
}

fn performance() -> Outcome {
    let q6 = generate(&FamilySpec::Hypercube(6), 0).unwrap();
    let t = Instant::now();
    let r = analyze(&q6, None);
    let q6_time = t.elapsed();
    if r.k != 64 || !r.flags.median {
        return Err(format!("Q6 analysis gave k={}", r.k));
    }
    if q6_time > Duration::from_secs(2) {
        return Err(format!("Q6 took {q6_time:.2?}"));
    }
    let mut rng = SplitMix64::new(CORPUS_SEED);
    let g = random_bipartite_connected(256, 0.05, &mut rng, RESAMPLE_CAP).map_err(|e| e.to_string())?;
    if !Metric::new(g.clone()).has_interval_table() {
        return Err("n=256 did not use the interval table".into());
    }
    let t = Instant::now();
    let r = analyze(&g, None);
    let big_time = t.elapsed();
    if big_time > Duration::from_secs(60) {
        return Err(format!("n=256 took {big_time:.2?}"));
    }
    Ok(format!("Q6 in {q6_time:.2?}; n=256 m={} k={} in {big_time:.2?}", r.m, r.k))
}

fn main() -> ExitCode {
    let mut gate = Gate { failed: 0 };
    let secs = Duration::from_secs;
    gate.run(1, "named k-values", Some(secs(5)), named_k_values);
    let t = Instant::now();
    let corpus = corpus();
    println!("      corpus: {} graphs built in {:.2?}", corpus.len(), t.elapsed());
    gate.run(2, "no k in {n-1, n-2}", Some(secs(300)), || prop_n12(&corpus));
    gate.run(3, "characterization equivalence", None, || characterizations(&corpus));
    gate.run(4, "structural necessary conditions", None, || structural(&corpus));
    gate.run(5, "mu-convexity", None, || mu_convexity(&corpus));
    gate.run(6, "small-order oracle equivalence", Some(secs(600)), small_order_oracles);
    gate.run(7, "open-problem searches", None, || open_problems(&corpus));
    gate.run(8, "performance", None, performance);
    if gate.failed == 0 {
        println!("acceptance: all 8 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} of 8 criteria FAILED", gate.failed);
        ExitCode::FAILURE
    }
}
