//! Command-line front end. [`run`] takes explicit streams so it can be
//! driven in-process; the `medico` binary passes the real ones.
//!
//! Exit codes: 0 success, 1 usage or invalid family spec, 2 unreadable or
//! malformed input, 3 a theorem check failed or a search produced hits.

use std::ffi::OsString;
use std::io::{self, BufRead, Write};

use clap::{Args, Parser, Subcommand};

use crate::format::{graph6_stream, parse_edgelist, to_edgelist, to_graph6, Format, StreamError};
use crate::generators::{generate_with, random_corpus, FamilySpec, GenError};
use crate::graph::Graph;
use crate::report::analyze;
use crate::rng::SplitMix64;
use crate::verify::{run_theorem_suite, search, Problem, SearchOptions, SuiteOptions, TheoremId};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_FOUND: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "medico", version, about = "Medico vertices, k-median numbers and median-graph diagnostics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full analysis of each input graph.
    Analyze(InputArgs),
    /// Cross-check theorems against the definition on each input graph.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// `all` or a comma-separated list of theorem ids.
        #[arg(long, default_value = "all")]
        theorems: String,
        #[arg(long, default_value_t = SuiteOptions::default().seed)]
        seed: u64,
    },
    /// Counterexample search for one of the open problems.
    Search(SearchArgs),
    /// Generate graphs from a named family.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// graph6 or edgelist; inferred from the extension, or sniffed on stdin.
    #[arg(long)]
    format: Option<Format>,
    /// Emit JSON (one document per graph).
    #[arg(long)]
    json: bool,
    /// Input file, or `-` for standard input.
    input: String,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["stream", "random"]))]
struct SearchArgs {
    /// 1, 2 or 3.
    #[arg(long)]
    problem: Problem,
    /// graph6 stream file, or `-` for standard input.
    #[arg(long)]
    stream: Option<String>,
    /// Random connected bipartite graphs: `n,p,count`.
    #[arg(long)]
    random: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, env = "MEDICO_JOBS", default_value_t = 0)]
    jobs: usize,
    /// Stop after this many graphs.
    #[arg(long)]
    budget: Option<usize>,
    /// Also print problem-2 specimens (graphs that pass the battery).
    #[arg(long)]
    specimens: bool,
}

#[derive(Args, Debug)]
struct GenArgs {
    /// path, cycle, complete_bipartite, hypercube, hypercube_minus, grid,
    /// star, random_tree or random_bipartite_connected.
    family: String,
    params: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value = "graph6")]
    out_format: Format,
}

/// A failure carrying its exit code.
struct Exit(i32, String);

impl From<io::Error> for Exit {
    fn from(e: io::Error) -> Self {
        Exit(EXIT_INPUT, format!("i/o error: {e}"))
    }
}

impl From<GenError> for Exit {
    fn from(e: GenError) -> Self {
        match e {
            GenError::InvalidSpec(_) => Exit(EXIT_USAGE, e.to_string()),
            GenError::ResampleCapExceeded(_) => Exit(EXIT_INPUT, e.to_string()),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Analyze(input) => cmd_analyze(&input, stdin, stdout),
        Command::Verify { input, theorems, seed } => cmd_verify(&input, &theorems, seed, stdin, stdout),
        Command::Search(args) => cmd_search(&args, stdin, stdout, stderr),
        Command::Gen(args) => cmd_gen(&args, stdout),
    };
    match result {
        Ok(code) => code,
        Err(Exit(code, msg)) => {
            let _ = writeln!(stderr, "medico: {msg}");
            code
        }
    }
}

fn read_input(path: &str, stdin: &mut dyn BufRead) -> Result<Vec<u8>, Exit> {
    let mut bytes = Vec::new();
    if path == "-" {
        stdin.read_to_end(&mut bytes)?;
    } else {
        bytes = std::fs::read(path).map_err(|e| Exit(EXIT_INPUT, format!("{path}: {e}")))?;
    }
    Ok(bytes)
}

/// graph6 unless the first meaningful line looks like an edge list.
fn sniff(bytes: &[u8]) -> Format {
    let text = String::from_utf8_lossy(bytes);
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with(">>graph6<<"))
        .or_else(|| text.lines().map(str::trim).find(|l| l.starts_with(">>graph6<<")));
    match line {
        Some(l) if l.starts_with(">>graph6<<") || l.bytes().all(|b| (63..=126).contains(&b)) => Format::Graph6,
        None => Format::Graph6,
        _ => Format::EdgeList,
    }
}

fn load_graphs(input: &InputArgs, stdin: &mut dyn BufRead) -> Result<(Vec<Graph>, Format), Exit> {
    let bytes = read_input(&input.input, stdin)?;
    let format = input.format.unwrap_or_else(|| {
        if input.input == "-" {
            sniff(&bytes)
        } else {
            Format::from_path(&input.input)
        }
    });
    let graphs = match format {
        Format::Graph6 => graph6_stream(&bytes[..])
            .collect::<Result<Vec<_>, StreamError>>()
            .map_err(|e| Exit(EXIT_INPUT, e.to_string()))?,
        Format::EdgeList => {
            let text = std::str::from_utf8(&bytes).map_err(|_| Exit(EXIT_INPUT, "input is not UTF-8".into()))?;
            vec![parse_edgelist(text).map_err(|e| Exit(EXIT_INPUT, e.to_string()))?]
        }
    };
    Ok((graphs, format))
}

fn cmd_analyze(input: &InputArgs, stdin: &mut dyn BufRead, out: &mut dyn Write) -> Result<i32, Exit> {
    let (graphs, format) = load_graphs(input, stdin)?;
    for (i, g) in graphs.iter().enumerate() {
        let report = analyze(g, Some(format));
        if input.json {
            writeln!(out, "{}", serde_json::to_string(&report).expect("report serializes"))?;
        } else {
            if graphs.len() > 1 {
                writeln!(out, "# graph {i}")?;
            }
            writeln!(out, "{report}")?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(input: &InputArgs, theorems: &str, seed: u64, stdin: &mut dyn BufRead, out: &mut dyn Write) -> Result<i32, Exit> {
    let ids = TheoremId::parse_list(theorems).map_err(|e| Exit(EXIT_USAGE, e))?;
    let (graphs, _) = load_graphs(input, stdin)?;
    let opts = SuiteOptions { seed, ..SuiteOptions::default() };
    let mut failed = false;
    for (i, g) in graphs.iter().enumerate() {
        let checks = run_theorem_suite(g, &ids, &opts);
        failed |= checks.iter().any(|c| c.verdict.is_fail());
        if input.json {
            let doc = serde_json::json!({ "schema": 1, "graph": i, "checks": checks });
            writeln!(out, "{doc}")?;
        } else {
            if graphs.len() > 1 {
                writeln!(out, "# graph {i}")?;
            }
            for c in &checks {
                writeln!(out, "{c}")?;
            }
        }
    }
    Ok(if failed { EXIT_FOUND } else { EXIT_OK })
}

fn parse_random(spec: &str) -> Result<(usize, f64, usize), Exit> {
    let bad = || Exit(EXIT_USAGE, format!("--random expects n,p,count, got {spec:?}"));
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let [n, p, count] = parts[..] else { return Err(bad()) };
    Ok((n.parse().map_err(|_| bad())?, p.parse().map_err(|_| bad())?, count.parse().map_err(|_| bad())?))
}

fn cmd_search(args: &SearchArgs, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Exit> {
    let opts = SearchOptions {
        jobs: args.jobs,
        budget: args.budget,
        suite: SuiteOptions { seed: args.seed, ..SuiteOptions::default() },
        ..SearchOptions::default()
    };
    let mut write_error = None;
    let mut emit = |h: &crate::verify::Hit| {
        if h.kind == crate::verify::HitKind::Specimen && !args.specimens {
            return;
        }
        if let Err(e) = writeln!(out, "{}", serde_json::to_string(h).expect("hit serializes")) {
            write_error.get_or_insert(e);
        }
    };
    let summary = if let Some(spec) = &args.random {
        let (n, p, count) = parse_random(spec)?;
        let family = FamilySpec::RandomBipartiteConnected { n, p };
        family.validate()?;
        search(args.problem, random_corpus(&family, count, args.seed), &opts, &mut emit)?
    } else {
        let path = args.stream.as_deref().expect("clap enforces a source");
        let stream_error = |e: StreamError| Exit(EXIT_INPUT, e.to_string());
        if path == "-" {
            search(args.problem, graph6_stream(stdin), &opts, &mut emit).map_err(stream_error)?
        } else {
            let file = std::fs::File::open(path).map_err(|e| Exit(EXIT_INPUT, format!("{path}: {e}")))?;
            search(args.problem, graph6_stream(io::BufReader::new(file)), &opts, &mut emit).map_err(stream_error)?
        }
    };
    if let Some(e) = write_error {
        return Err(e.into());
    }
    writeln!(err, "{}: {summary}", args.problem)?;
    Ok(if summary.hits > 0 { EXIT_FOUND } else { EXIT_OK })
}

fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<i32, Exit> {
    let params: Vec<&str> = args.params.iter().map(String::as_str).collect();
    let spec = FamilySpec::parse(&args.family, &params)?;
    let mut rng = SplitMix64::new(args.seed);
    for i in 0..args.count {
        let g = generate_with(&spec, &mut rng)?;
        match args.out_format {
            Format::Graph6 => {
                let line = to_graph6(&g).map_err(|e| Exit(EXIT_USAGE, format!("{e}; use --out-format edgelist")))?;
                writeln!(out, "{line}")?;
            }
            Format::EdgeList => {
                if args.count > 1 {
                    writeln!(out, "# graph {i}")?;
                }
                write!(out, "{}", to_edgelist(&g))?;
            }
        }
    }
    Ok(EXIT_OK)
}
