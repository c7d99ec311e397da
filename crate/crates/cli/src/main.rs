//! `bnsep`: analyze Boolean networks and signed digraphs from the command line.
//!
//! Exit codes: 0 success, 1 input error, 2 budget exceeded, 3 a checked
//! invariant failed (a structural result contradicted, a fixture mismatch).

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bnsep::ensemble::{
    census, conjecture_search, examine_graph, graph_classify, robust_falsify, Budgets,
    Conjecture, DetailLevel, GraphOutcome, RobustOptions, SearchMode, SignWeights, CENSUS_MAX_N,
};
use bnsep::expr::{compile, parse_network};
use bnsep::fixtures;
use bnsep::graph::{DEFAULT_CYCLE_CAP, DEFAULT_SEARCH_BUDGET};
use bnsep::network::DEFAULT_MAX_N;
use bnsep::{classify, interaction_graph, BooleanNetwork, Property, SignedDigraph};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use bnsep_cli::dot;
use bnsep_cli::report::*;

#[derive(Parser, Debug)]
#[command(name = "bnsep", version, about = "Attractor separation in Boolean networks")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Maximum number of cycles enumerated per graph.
    #[arg(long, global = true, default_value_t = DEFAULT_CYCLE_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
    cycle_cap: u64,
    /// Maximum number of networks enumerated on one graph.
    #[arg(long, global = true, default_value_t = 100_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    enum_budget: u64,
    /// Node budget of each signed path search.
    #[arg(long, global = true, default_value_t = DEFAULT_SEARCH_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    search_budget: u64,
    /// Seed for randomized modes (required by them).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write a DOT drawing to this path.
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
    /// Largest number of components accepted.
    #[arg(long, global = true, env = "BNSEP_MAX_N", default_value_t = DEFAULT_MAX_N)]
    max_n: usize,
}

impl RunConfig {
    fn budgets(&self) -> Budgets {
        Budgets {
            cycle_cap: self.cycle_cap as usize,
            enum_budget: self.enum_budget,
            search_budget: self.search_budget,
            max_n: self.max_n,
            ..Budgets::default()
        }
    }

    fn seed(&self, what: &str) -> Result<u64, Failure> {
        self.seed
            .ok_or_else(|| Failure::Input(format!("{what} is randomized: pass --seed")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DotTarget {
    /// The asynchronous graph of a `.bn` network.
    Async,
    /// The signed interaction graph of a `.bn` network, or a `.sdg` graph.
    Graph,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Attractors, subspaces, properties and interaction graph of a `.bn` network.
    Analyze { file: PathBuf },
    /// Cycles, feedback numbers, switches and embeddings of a `.sdg` graph.
    Graph { file: PathBuf },
    /// Classifies every network whose interaction graph is the given `.sdg` graph.
    ClassifyGraph { file: PathBuf },
    /// Every network on n <= 3 components, with every structural result checked.
    Census {
        n: usize,
        /// Include one summary per graph.
        #[arg(long)]
        graphs: bool,
        /// Directory for witness networks of counterexamples.
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// Searches for counterexamples to a conjecture (C1, C2, C3 or an id).
    Conjecture {
        id: String,
        /// Number of vertices (not needed with --graph).
        n: Option<usize>,
        /// Random graphs instead of all graphs (needs --seed).
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// Largest F(G) decided per random graph.
        #[arg(long, default_value_t = 20_000)]
        network_budget: u64,
        /// Relative weights of the sign sets none,+,-,± per ordered pair.
        #[arg(long, value_delimiter = ',', num_args = 4)]
        weights: Option<Vec<f64>>,
        /// Check this one `.sdg` graph.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// Writes a DOT drawing to standard output (or to --dot).
    Dot {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = DotTarget::Async)]
        target: DotTarget,
    },
    /// Replays the bundled worked examples against their known verdicts.
    Fixtures {
        /// Only this fixture.
        name: Option<String>,
        /// Write every fixture as a `.bn` or `.sdg` file into this directory.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Looks for a family of networks on spanning subgraphs of a `.sdg`
    /// graph whose union lacks a property.
    Robust {
        file: PathBuf,
        #[arg(long)]
        property: String,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long)]
        replay: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_bn(path: &Path, max_n: usize) -> Result<(Vec<String>, BooleanNetwork), Failure> {
    let text = read(path)?;
    let src = parse_network(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let f = compile(&src, max_n).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok((src.names(), f))
}

fn load_sdg(path: &Path) -> Result<SignedDigraph, Failure> {
    let text = read(path)?;
    SignedDigraph::parse_sdg(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Output of one command: JSON value, text, and whether it signals an
/// invariant failure.
struct Output {
    json: String,
    text: String,
    failed: Option<String>,
}

impl Output {
    fn new<T: Serialize>(value: &T, text: String) -> Self {
        Output {
            json: serde_json::to_string_pretty(value).expect("reports serialize"),
            text,
            failed: None,
        }
    }
}

fn replay_dir(dir: &Option<PathBuf>) -> Result<Option<&PathBuf>, Failure> {
    if let Some(d) = dir {
        fs::create_dir_all(d).map_err(|e| Failure::Input(format!("{}: {e}", d.display())))?;
    }
    Ok(dir.as_ref())
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let cfg = &cli.run;
    let budgets = cfg.budgets();
    match &cli.command {
        Command::Analyze { file } => {
            let (names, f) = load_bn(file, cfg.max_n)?;
            let g = interaction_graph(&f);
            let rep = AnalyzeReport {
                components: names,
                classification: classify(&f).report(),
                graph: GraphSection::build(&g, budgets.cycle_cap, budgets.search_budget)?,
            };
            if let Some(p) = &cfg.dot {
                write_file(p, &dot::async_dot(&f))?;
            }
            Ok(Output::new(&rep, rep.text()))
        }
        Command::Graph { file } => {
            let g = load_sdg(file)?;
            let rep = GraphReport::build(&g, budgets.cycle_cap, budgets.search_budget)?;
            if let Some(p) = &cfg.dot {
                write_file(p, &dot::graph_dot(&g, &dot::numbered(g.n())))?;
            }
            Ok(Output::new(&rep, rep.text()))
        }
        Command::ClassifyGraph { file } => {
            let g = load_sdg(file)?;
            let v = graph_classify(&g, &budgets)?;
            Ok(Output::new(&v, graph_verdict_text(&v)))
        }
        Command::Census { n, graphs, replay } => {
            if *n > CENSUS_MAX_N {
                return Err(Failure::Budget(format!("census needs n <= {CENSUS_MAX_N}")));
            }
            let detail = if *graphs { DetailLevel::Graphs } else { DetailLevel::Summary };
            let r = census(*n, &budgets, detail)?;
            let mut out = Output::new(&r, census_text(&r));
            if !r.is_clean() {
                if let Some(dir) = replay_dir(replay)? {
                    for (k, c) in r.counterexamples.iter().enumerate() {
                        let text = format!("# {} fails on {}\n{}", c.theorem.id(), c.graph, c.witness);
                        write_file(&dir.join(format!("census-{n}-{k}.bn")), &text)?;
                    }
                }
                out.failed = Some(format!(
                    "{} chain violations, {} counterexamples",
                    r.chain_violations,
                    r.counterexamples.len()
                ));
            }
            Ok(out)
        }
        Command::Conjecture { id, n, random, samples, network_budget, weights, graph, replay } => {
            let conj: Conjecture = id.parse().map_err(Failure::Input)?;
            if let Some(path) = graph {
                let g = load_sdg(path)?;
                let outcome = examine_graph(conj, &g, &budgets, *network_budget);
                if let (GraphOutcome::Violation(v), Some(dir)) = (&outcome, replay_dir(replay)?) {
                    let text = format!("# {conj} violated on {}: {}\n{}", v.graph, v.reason, v.witness);
                    write_file(&dir.join(format!("{conj}-0.bn")), &text)?;
                }
                let rep = SingleGraphReport {
                    conjecture: conj.to_string(),
                    graph: g.encoding(),
                    outcome,
                };
                let text = format!("{conj} on {}: {:?}\n", rep.graph, rep.outcome);
                return Ok(Output::new(&rep, text));
            }
            let n = n.ok_or_else(|| Failure::Input("give a vertex count or --graph".into()))?;
            let mode = if *random {
                let w = match weights.as_deref() {
                    Some([none, positive, negative, both]) => SignWeights {
                        none: *none,
                        positive: *positive,
                        negative: *negative,
                        both: *both,
                    },
                    _ => SignWeights::default(),
                };
                SearchMode::Random {
                    seed: cfg.seed("a random search")?,
                    samples: *samples,
                    weights: w,
                    network_budget: *network_budget,
                }
            } else {
                SearchMode::Exhaustive
            };
            let r = conjecture_search(conj, n, mode, &budgets)?;
            if let Some(dir) = replay_dir(replay)? {
                for (k, v) in r.violations.iter().enumerate() {
                    let text = format!("# {conj} violated on {}: {}\n{}", v.graph, v.reason, v.witness);
                    write_file(&dir.join(format!("{conj}-{k}.bn")), &text)?;
                }
            }
            Ok(Output::new(&r, search_text(&r)))
        }
        Command::Dot { file, target } => {
            let text = if file.extension().is_some_and(|e| e == "sdg") {
                if *target == DotTarget::Async {
                    return Err(Failure::Input("a .sdg graph has no asynchronous graph".into()));
                }
                let g = load_sdg(file)?;
                dot::graph_dot(&g, &dot::numbered(g.n()))
            } else {
                let (names, f) = load_bn(file, cfg.max_n)?;
                match target {
                    DotTarget::Async => dot::async_dot(&f),
                    DotTarget::Graph => dot::graph_dot(&interaction_graph(&f), &names),
                }
            };
            if let Some(p) = &cfg.dot {
                write_file(p, &text)?;
            }
            Ok(Output {
                json: serde_json::to_string_pretty(&text).expect("strings serialize"),
                text,
                failed: None,
            })
        }
        Command::Fixtures { name, export } => {
            if let Some(dir) = export {
                fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
                for f in fixtures::NETWORKS {
                    write_file(&dir.join(format!("{}.bn", f.name)), &format!("# {}\n{}", f.summary, f.source))?;
                }
                for g in fixtures::GRAPHS {
                    write_file(&dir.join(format!("{}.sdg", g.name)), &format!("# {}\n{}", g.summary, g.sdg))?;
                }
            }
            let all = replay_fixtures(name.as_deref(), &budgets)?;
            let mut out = Output::new(&all, fixtures_text(&all));
            let bad: Vec<&str> = all.iter().filter(|f| !f.passed()).map(|f| f.name.as_str()).collect();
            if !bad.is_empty() {
                out.failed = Some(format!("fixtures not reproduced: {}", bad.join(", ")));
            }
            Ok(out)
        }
        Command::Robust { file, property, samples, replay } => {
            let g = load_sdg(file)?;
            let p = Property::from_id(property)
                .ok_or_else(|| Failure::Input(format!("unknown property `{property}`")))?;
            let mut opts = RobustOptions::new(p, cfg.seed("the robust search")?);
            opts.samples = *samples;
            let r = robust_falsify(&g, &opts, &budgets)?;
            if let (Some(fam), Some(dir)) = (&r.counterexample, replay_dir(replay)?) {
                for (k, f) in fam.iter().enumerate() {
                    let text = format!("# member {} of a family whose union is not {p}\n{f}", k + 1);
                    write_file(&dir.join(format!("robust-{p}-{k}.bn")), &text)?;
                }
            }
            Ok(Output::new(&r, robust_text(&r)))
        }
    }
}

fn replay_fixtures(only: Option<&str>, budgets: &Budgets) -> Result<Vec<FixtureOutcome>, Failure> {
    let mut all = Vec::new();
    let wanted = |name: &str| only.is_none_or(|o| o == name);
    for fx in fixtures::NETWORKS.iter().filter(|f| wanted(f.name)) {
        let c = classify(&fx.network());
        let mut checks = BTreeMap::new();
        for &(p, v) in fx.expected {
            checks.insert(format!("{p} = {v}"), c.has(p) == v);
        }
        for want in fx.attractors {
            let found = c.attractors.iter().any(|a| {
                let mut got = a.states.labels();
                got.sort();
                let mut w: Vec<String> = want.iter().map(|s| s.to_string()).collect();
                w.sort();
                got == w
            });
            checks.insert(format!("attractor {{{}}}", want.join(",")), found);
        }
        for pat in fx.subspaces {
            let found = c.attractors.iter().any(|a| a.subspace.pattern() == *pat);
            checks.insert(format!("smallest subspace {pat}"), found);
        }
        all.push(FixtureOutcome {
            name: fx.name.into(),
            summary: fx.summary.into(),
            checks,
        });
    }
    for gx in fixtures::GRAPHS.iter().filter(|g| wanted(g.name)) {
        let v = graph_classify(&gx.graph(), budgets)?;
        let mut checks = BTreeMap::new();
        checks.insert(format!("|F(G)| = {}", gx.network_count), v.networks as usize == gx.network_count);
        for &(p, want) in gx.expected {
            checks.insert(format!("graph-level {p} = {want}"), v.holds(p) == want);
        }
        all.push(FixtureOutcome {
            name: gx.name.into(),
            summary: gx.summary.into(),
            checks,
        });
    }
    if all.is_empty() {
        return Err(Failure::Input(format!("no fixture named `{}`", only.unwrap_or(""))));
    }
    Ok(all)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.run.threads {
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t as usize).build_global();
    }
    match run(&cli) {
        Ok(out) => {
            match cli.run.format {
                Format::Json => println!("{}", out.json),
                Format::Text => print!("{}", out.text),
            }
            match out.failed {
                Some(why) => {
                    eprintln!("bnsep: {why}");
                    ExitCode::from(3)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("bnsep: {}", e.message());
            ExitCode::from(e.code() as u8)
        }
    }
}
