//! `rainbow`: solve, check and explore rainbow matchings and coloured digraphs from the shell.
//!
//! Exit codes: 0 success, 1 valid result short of its target, 2 bad input, 3 budget exhausted.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use rainbow::bounds::{parse_epsilon, parse_integer, threshold_table};
use rainbow::budget::SearchBudget;
use rainbow::connectivity::{
    build_dm, find_kd_connected_set, low_expansion_ball, rainbow_path_through, ConnectivityError,
};
use rainbow::digraph::{ColourMode, LabelledDigraph};
use rainbow::generate::{
    generate_instance, rainbow_complete_digraph, random_proper_digraph, InstanceKind, InstanceSpec,
};
use rainbow::golden::{golden_solve, GoldenConfig, GoldenError, LogBase};
use rainbow::io::{parse_digraph, parse_edge_list, write_edge_list};
use rainbow::latin::{extract_transversal, parse_latin, square_to_graph, write_latin, LatinRectangle};
use rainbow::menger::{
    build_counterexample, fractional_menger, subdivide, verify_property_one, verify_property_two,
};
use rainbow::oracle::{exact_max_rainbow_matching, Constraints, KdMode, OracleError};
use rainbow::switching::{solve_switching_engine, EngineConfig};
use rainbow::{
    greedy_rainbow_matching, verify_rainbow_matching, ColouredBipartiteMultigraph, Edge, RainbowMatching,
};

#[derive(Parser)]
#[command(
    name = "rainbow",
    version,
    about = "Rainbow matchings, Latin square transversals and coloured digraph tools"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    /// `L R C` header followed by `x y c` lines.
    Edges,
    /// A Latin square grid, one row per line.
    Latin,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Greedy,
    Engine,
    Golden,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Base {
    Natural,
    Two,
    Ten,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConnectivityOp {
    Ball,
    Dm,
    Kdset,
    MengerPath,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Random,
    Latin,
}

#[derive(Args)]
struct BudgetArgs {
    /// Search nodes before giving up.
    #[arg(long, default_value_t = 10_000_000)]
    nodes: u64,
    /// Seconds before giving up.
    #[arg(long, default_value_t = 30.0)]
    time_limit: f64,
    /// Longest switching the engine tries.
    #[arg(long)]
    depth_cap: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            node_limit: self.nodes,
            time_limit: Duration::from_secs_f64(self.time_limit),
            depth_cap: self.depth_cap,
            seed: self.seed,
            ..SearchBudget::default()
        }
    }

    fn engine(&self) -> EngineConfig {
        EngineConfig {
            depth_cap: self.depth_cap,
            budget: self.budget(),
            ..EngineConfig::default()
        }
    }
}

#[derive(Args)]
struct InstanceArgs {
    file: PathBuf,
    /// Input layout; files ending in `.latin` default to a grid, everything else to an edge list.
    #[arg(long, value_enum)]
    input: Option<InputFormat>,
    /// Require the colour classes to be pairwise edge-disjoint.
    #[arg(long)]
    edge_disjoint: bool,
}

#[derive(Args)]
struct DigraphArgs {
    /// Read the digraph from a file (`n`, then `v <vertex> <colour>` and `e <from> <to> <colour>`).
    #[arg(long)]
    digraph: Option<PathBuf>,
    /// Generate a random properly coloured digraph on this many vertices.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 5)]
    degree: usize,
    /// Edge colours available to the generator; defaults to three times the degree.
    #[arg(long)]
    palette: Option<usize>,
    /// Use the complete digraph on this many vertices with every colour distinct.
    #[arg(long)]
    complete: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Find a large rainbow matching.
    Solve {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum, default_value_t = Algorithm::Engine)]
        algorithm: Algorithm,
        /// Include the solver's step log.
        #[arg(long)]
        trace: bool,
        /// Golden solver: split even when a full matching is found directly.
        #[arg(long)]
        force_split: bool,
        #[arg(long, value_enum, default_value_t = Base::Natural)]
        log_base: Base,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Largest partial transversal of a Latin square.
    Transversal {
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check a matching (edge lines or a JSON report) against a graph.
    Verify {
        #[command(flatten)]
        instance: InstanceArgs,
        matching: PathBuf,
    },
    /// Exact maximum rainbow matching.
    OracleMax {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Rainbow connectivity tools on a coloured digraph.
    Connectivity {
        #[arg(long, value_enum)]
        op: ConnectivityOp,
        #[command(flatten)]
        source: DigraphArgs,
        #[arg(long, default_value_t = 0)]
        vertex: usize,
        #[arg(long, default_value = "0.5")]
        epsilon: String,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// kdset: avoid colours instead of vertices.
        #[arg(long)]
        coloured: bool,
        /// menger-path: comma-separated vertices to visit in order.
        #[arg(long, value_delimiter = ',')]
        anchors: Vec<usize>,
        /// menger-path: comma-separated colours to avoid.
        #[arg(long, value_delimiter = ',')]
        avoid: Vec<usize>,
        /// menger-path: longest leg.
        #[arg(long, default_value_t = 4)]
        length: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// The path family where k colours never separate but all rainbow paths meet.
    Menger {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        /// Solve the fractional packing and cover programs.
        #[arg(long)]
        lp: bool,
        /// Subdivide every edge to remove parallel edges.
        #[arg(long)]
        simple: bool,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[arg(long, default_value_t = 10_000)]
        path_limit: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Size thresholds at a given ε.
    Bounds {
        /// A decimal or a fraction such as `1/3`.
        #[arg(long)]
        epsilon: String,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value = "1e10")]
        k1: String,
    },
    /// Generate a seeded instance.
    Gen {
        #[arg(long, value_enum, default_value_t = Kind::Random)]
        kind: Kind,
        /// Number of colours (the order, for Latin squares).
        #[arg(long)]
        n: usize,
        #[arg(long)]
        class_size: Option<usize>,
        #[arg(long)]
        left: Option<usize>,
        #[arg(long)]
        right: Option<usize>,
        #[arg(long)]
        edge_disjoint: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Latin squares: print the grid instead of the edge list.
        #[arg(long)]
        grid: bool,
    },
}

/// A failure that ends the run with a non-zero code.
enum Failure {
    Input(String),
    Budget(String),
}

impl Failure {
    fn input(e: impl std::fmt::Display) -> Self {
        Failure::Input(e.to_string())
    }
}

/// What a command produced and the exit code it maps to. `json: None` prints the text as is.
struct Outcome {
    json: Option<Value>,
    text: String,
    code: u8,
}

#[derive(Serialize)]
struct MatchingReport {
    instance: String,
    algorithm: &'static str,
    size: usize,
    target: usize,
    matching: RainbowMatching,
    verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Value>,
}

impl MatchingReport {
    fn text(&self) -> String {
        let mut out = format!(
            "{}: {} found a rainbow matching of size {} (target {}), verified: {}\n",
            self.instance, self.algorithm, self.size, self.target, self.verified
        );
        for e in self.matching.edges() {
            let _ = writeln!(out, "{} {} {}", e.x, e.y, e.c);
        }
        out
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.command);
    match result {
        Ok(outcome) => {
            let body = match (&outcome.json, cli.format) {
                (Some(json), Format::Json) => {
                    serde_json::to_string_pretty(json).expect("reports serialise") + "\n"
                }
                _ => outcome.text,
            };
            // a closed pipe downstream is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            ExitCode::from(outcome.code)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("budget exhausted: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Solve {
            instance,
            algorithm,
            trace,
            force_split,
            log_base,
            budget,
        } => solve(&instance, algorithm, trace, force_split, log_base, &budget),
        Command::Transversal { file, budget } => transversal(&file, &budget),
        Command::Verify { instance, matching } => verify(&instance, &matching),
        Command::OracleMax { instance, budget } => {
            let g = load_instance(&instance)?;
            let (matching, exhausted) = exact(&g, &budget.budget());
            let outcome = matching_outcome(&g, &instance.file, "oracle", matching, None);
            finish_exact(outcome, exhausted)
        }
        Command::Connectivity {
            op,
            source,
            vertex,
            epsilon,
            m,
            k,
            coloured,
            anchors,
            avoid,
            length,
            budget,
        } => {
            let d = load_digraph(&source, budget.seed)?;
            let params = ConnectivityParams {
                vertex,
                epsilon,
                m,
                k,
                coloured,
                anchors,
                avoid,
                length,
            };
            connectivity(op, &d, &params, &budget.budget())
        }
        Command::Menger {
            k,
            m,
            lp,
            simple,
            tolerance,
            path_limit,
            budget,
        } => menger(k, m, lp, simple, tolerance, path_limit, &budget.budget()),
        Command::Bounds { epsilon, m, k, k1 } => bounds(&epsilon, m, k, &k1),
        Command::Gen {
            kind,
            n,
            class_size,
            left,
            right,
            edge_disjoint,
            seed,
            grid,
        } => gen(kind, n, class_size, left, right, edge_disjoint, seed, grid),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_instance(args: &InstanceArgs) -> Result<ColouredBipartiteMultigraph, Failure> {
    let text = read(&args.file)?;
    let format = args.input.unwrap_or_else(|| {
        if args.file.extension().is_some_and(|e| e == "latin") {
            InputFormat::Latin
        } else {
            InputFormat::Edges
        }
    });
    match format {
        InputFormat::Edges => parse_edge_list(&text, args.edge_disjoint).map_err(Failure::input),
        InputFormat::Latin => {
            let l = parse_latin(&text).map_err(Failure::input)?;
            square_to_graph(&l).map_err(Failure::input)
        }
    }
}

fn load_digraph(args: &DigraphArgs, seed: u64) -> Result<LabelledDigraph, Failure> {
    match (&args.digraph, args.random, args.complete) {
        (Some(path), None, None) => parse_digraph(&read(path)?).map_err(Failure::input),
        (None, Some(n), None) => Ok(random_proper_digraph(
            n,
            args.degree,
            args.palette.unwrap_or(3 * args.degree),
            seed,
        )),
        (None, None, Some(q)) => Ok(rainbow_complete_digraph(q)),
        _ => Err(Failure::Input(
            "give exactly one of --digraph, --random, --complete".into(),
        )),
    }
}

fn matching_outcome(
    g: &ColouredBipartiteMultigraph,
    file: &Path,
    algorithm: &'static str,
    matching: RainbowMatching,
    trace: Option<Value>,
) -> Outcome {
    let matching = matching.canonical();
    let report = MatchingReport {
        instance: file.display().to_string(),
        algorithm,
        size: matching.len(),
        target: g.colour_count(),
        verified: verify_rainbow_matching(g, &matching).is_ok(),
        matching,
        trace,
    };
    let code = if !report.verified || report.size < report.target {
        1
    } else {
        0
    };
    Outcome {
        json: Some(serde_json::to_value(&report).expect("reports serialise")),
        text: report.text(),
        code,
    }
}

/// Exact maximum, or the best found and `true` if the budget ran out.
fn exact(g: &ColouredBipartiteMultigraph, budget: &SearchBudget) -> (RainbowMatching, bool) {
    match exact_max_rainbow_matching(g, &Constraints::default(), budget) {
        Ok(m) => (m, false),
        Err(OracleError::BudgetExceeded { best }) => (best, true),
        Err(OracleError::InfeasibleConstraints(_)) => unreachable!("no constraints given"),
    }
}

fn finish_exact(mut outcome: Outcome, exhausted: bool) -> Result<Outcome, Failure> {
    if exhausted {
        outcome.code = 3;
        eprintln!("budget exhausted: result may not be maximum");
    }
    Ok(outcome)
}

fn solve(
    instance: &InstanceArgs,
    algorithm: Algorithm,
    trace: bool,
    force_split: bool,
    log_base: Base,
    budget: &BudgetArgs,
) -> Result<Outcome, Failure> {
    let g = load_instance(instance)?;
    let file = &instance.file;
    match algorithm {
        Algorithm::Greedy => Ok(matching_outcome(
            &g,
            file,
            "greedy",
            greedy_rainbow_matching(&g),
            None,
        )),
        Algorithm::Engine => {
            let result = solve_switching_engine(&g, &budget.engine());
            let steps = trace.then(|| {
                json!({
                    "initial_size": result.initial_size,
                    "steps": result.steps,
                    "hypothesis_met": result.hypothesis_met,
                })
            });
            let mut outcome = matching_outcome(&g, file, "engine", result.matching, steps);
            if outcome.code == 1 && result.budget_exhausted {
                outcome.code = 3;
            }
            Ok(outcome)
        }
        Algorithm::Golden => {
            let config = GoldenConfig {
                log_base: match log_base {
                    Base::Natural => LogBase::Natural,
                    Base::Two => LogBase::Two,
                    Base::Ten => LogBase::Ten,
                },
                force_split,
                engine: budget.engine(),
                ..GoldenConfig::default()
            };
            match golden_solve(&g, &config) {
                Ok((m, t)) => {
                    let t = trace.then(|| serde_json::to_value(&t.levels).expect("trace serialises"));
                    Ok(matching_outcome(&g, file, "golden", m, t))
                }
                Err(e @ (GoldenError::BudgetExceeded | GoldenError::RecursionBudgetExceeded { .. })) => {
                    Err(Failure::Budget(e.to_string()))
                }
                Err(e) => Err(Failure::input(e)),
            }
        }
        Algorithm::Oracle => {
            let (m, exhausted) = exact(&g, &budget.budget());
            finish_exact(matching_outcome(&g, file, "oracle", m, None), exhausted)
        }
    }
}

fn transversal(file: &Path, budget: &BudgetArgs) -> Result<Outcome, Failure> {
    let l: LatinRectangle = parse_latin(&read(file)?).map_err(Failure::input)?;
    let g = square_to_graph(&l).map_err(Failure::input)?;
    let (m, exhausted) = exact(&g, &budget.budget());
    let cells = extract_transversal(&l, &m).map_err(Failure::input)?;
    let mut outcome = matching_outcome(&g, file, "oracle", m, None);
    let cells: Vec<Value> = cells
        .iter()
        .map(|c| json!({"row": c.row, "col": c.col, "symbol": l.token(c.symbol)}))
        .collect();
    if let Some(json) = outcome.json.as_mut() {
        json["cells"] = Value::Array(cells);
    }
    finish_exact(outcome, exhausted)
}

fn parse_matching(text: &str) -> Result<RainbowMatching, Failure> {
    if let Ok(v) = serde_json::from_str::<Value>(text) {
        let list = v.get("matching").cloned().unwrap_or(v);
        return serde_json::from_value(list).map_err(Failure::input);
    }
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let v: Vec<usize> = content
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| Failure::Input(format!("matching line {}: expected `x y c`", i + 1)))?;
        let [x, y, c] = v[..] else {
            return Err(Failure::Input(format!(
                "matching line {}: expected `x y c`",
                i + 1
            )));
        };
        edges.push(Edge::new(x, y, c));
    }
    Ok(RainbowMatching::new(edges))
}

fn verify(instance: &InstanceArgs, matching: &Path) -> Result<Outcome, Failure> {
    let g = load_instance(instance)?;
    let m = parse_matching(&read(matching)?)?;
    let verdict = verify_rainbow_matching(&g, &m);
    let json = json!({
        "instance": instance.file.display().to_string(),
        "size": m.len(),
        "target": g.colour_count(),
        "verified": verdict.is_ok(),
        "violation": verdict.as_ref().err().map(ToString::to_string),
    });
    let text = match &verdict {
        Ok(()) => format!("valid rainbow matching of size {}\n", m.len()),
        Err(v) => format!("invalid: {v}\n"),
    };
    Ok(Outcome {
        json: Some(json),
        text,
        code: u8::from(verdict.is_err()),
    })
}

struct ConnectivityParams {
    vertex: usize,
    epsilon: String,
    m: usize,
    k: usize,
    coloured: bool,
    anchors: Vec<usize>,
    avoid: Vec<usize>,
    length: usize,
}

fn connectivity_failure(e: ConnectivityError) -> Result<Outcome, Failure> {
    match e {
        ConnectivityError::BudgetExceeded => Err(Failure::Budget(e.to_string())),
        ConnectivityError::PreconditionViolated(_) => Err(Failure::input(e)),
        other => Ok(Outcome {
            json: Some(json!({ "found": false, "reason": other.to_string() })),
            text: format!("not found: {other}\n"),
            code: 1,
        }),
    }
}

fn connectivity(
    op: ConnectivityOp,
    d: &LabelledDigraph,
    p: &ConnectivityParams,
    budget: &SearchBudget,
) -> Result<Outcome, Failure> {
    let epsilon = || -> Result<f64, Failure> {
        let e = parse_epsilon(&p.epsilon).map_err(Failure::input)?;
        e.to_f64()
            .ok_or_else(|| Failure::Input("epsilon out of range".into()))
    };
    if matches!(op, ConnectivityOp::Ball) && p.vertex >= d.vertex_count() {
        return Err(Failure::Input(format!("vertex {} out of range", p.vertex)));
    }
    let result = match op {
        ConnectivityOp::Ball => low_expansion_ball(d, p.vertex, epsilon()?, budget).map(|b| {
            let text = format!(
                "t0 = {}, ball of {} vertices, layers {:?}\n",
                b.t0,
                b.vertices.len(),
                b.layer_sizes
            );
            let growth = b.growth_holds(d.vertex_count());
            let mut json = serde_json::to_value(&b).expect("ball serialises");
            json["growth_holds"] = growth.into();
            (json, text)
        }),
        ConnectivityOp::Dm => build_dm(d, p.m, budget).map(|dm| {
            let certificates: Vec<_> = dm.certificates.values().collect();
            let edges: Vec<[usize; 2]> = dm.digraph.edges().iter().map(|e| [e.from, e.to]).collect();
            let text = format!(
                "D_{} has {} edges; min out-degree {} (input {})\n",
                p.m,
                edges.len(),
                dm.digraph.min_out_degree(),
                d.min_out_degree()
            );
            let json = json!({
                "m": p.m,
                "vertices": d.vertex_count(),
                "min_out_degree_input": d.min_out_degree(),
                "min_out_degree": dm.digraph.min_out_degree(),
                "edges": edges,
                "certificates": certificates,
            });
            (json, text)
        }),
        ConnectivityOp::Kdset => {
            let mode = if p.coloured {
                KdMode::Coloured(ColourMode::Total)
            } else {
                KdMode::Uncoloured
            };
            find_kd_connected_set(d, p.k, epsilon()?, mode, budget).map(|s| {
                let text = format!(
                    "({}, {})-connected set of {} vertices (target {:.1}): {:?}\n",
                    s.k,
                    s.d,
                    s.vertices.len(),
                    s.target,
                    s.vertices
                );
                (serde_json::to_value(&s).expect("set serialises"), text)
            })
        }
        ConnectivityOp::MengerPath => {
            let avoid: BTreeSet<usize> = p.avoid.iter().copied().collect();
            if p.anchors.iter().any(|&a| a >= d.vertex_count()) {
                return Err(Failure::Input("anchor out of range".into()));
            }
            rainbow_path_through(d, &p.anchors, &avoid, p.length, budget).map(|path| {
                let rainbow = d.is_rainbow_path(&path, ColourMode::Total, &avoid);
                let text = format!("path {:?} of length {}\n", path.vertices, path.len());
                (
                    json!({ "found": true, "path": path, "length": path.len(), "rainbow": rainbow }),
                    text,
                )
            })
        }
    };
    match result {
        Ok((json, text)) => Ok(Outcome {
            json: Some(json),
            text,
            code: 0,
        }),
        Err(e) => connectivity_failure(e),
    }
}

fn menger(
    k: usize,
    m: usize,
    lp: bool,
    simple: bool,
    tolerance: f64,
    path_limit: usize,
    budget: &SearchBudget,
) -> Result<Outcome, Failure> {
    let base = build_counterexample(k, m).map_err(Failure::input)?;
    let d = if simple { subdivide(&base) } else { base };
    let (u, v) = (0, m);
    let budget_failure = |e: rainbow::menger::MengerError| match e {
        rainbow::menger::MengerError::BudgetExceeded
        | rainbow::menger::MengerError::PathBudgetExceeded { .. } => Failure::Budget(e.to_string()),
        other => Failure::input(other),
    };
    let one = verify_property_one(&d, u, v, k, budget).map_err(budget_failure)?;
    let two = verify_property_two(&d, u, v, budget).map_err(budget_failure)?;
    let paths = rainbow::oracle::enumerate_rainbow_paths(
        &d,
        u,
        v,
        d.vertex_count().saturating_sub(1),
        ColourMode::Edge,
        &BTreeSet::new(),
        budget,
    )
    .map_err(|e| Failure::Budget(e.to_string()))?;
    let mut json = json!({
        "k": k,
        "m": m,
        "simple": simple,
        "vertices": d.vertex_count(),
        "edges": d.edges().len(),
        "u": u,
        "v": v,
        "path_count": paths.len(),
        "property_one": one,
        "property_two": two,
    });
    let mut text = format!(
        "k = {k}, m = {m}{}: {} rainbow paths; every {k} colours avoidable: {one}; all paths meet: {two}\n",
        if simple { " (subdivided)" } else { "" },
        paths.len()
    );
    if lp {
        let lp = fractional_menger(&d, u, v, tolerance, path_limit, budget).map_err(budget_failure)?;
        let _ = writeln!(
            text,
            "fractional packing {} = cover {} (gap {:e}, {:?} arithmetic)",
            lp.exact_value.clone().unwrap_or_else(|| lp.packing.to_string()),
            lp.cover,
            lp.gap(),
            lp.arithmetic
        );
        json["lp"] = serde_json::to_value(&lp).expect("programs serialise");
    }
    Ok(Outcome {
        json: Some(json),
        text,
        code: if one && two { 0 } else { 1 },
    })
}

fn bounds(epsilon: &str, m: usize, k: usize, k1: &str) -> Result<Outcome, Failure> {
    let e = parse_epsilon(epsilon).map_err(Failure::input)?;
    let k1 = parse_integer(k1).map_err(Failure::input)?;
    let table = threshold_table(&e, m, k, &k1).map_err(Failure::input)?;
    let mut text = String::new();
    for r in &table {
        let _ = writeln!(
            text,
            "{:<26} {:<24} {:>18}  {}{}",
            r.name,
            r.formula,
            r.value.to_string(),
            if r.feasible { "feasible" } else { "infeasible" },
            if r.below_one { " (below 1)" } else { "" }
        );
    }
    let json = json!({ "epsilon": e.to_string(), "m": m, "k": k, "k1": k1.to_string(), "thresholds": table });
    Ok(Outcome {
        json: Some(json),
        text,
        code: 0,
    })
}

#[allow(clippy::too_many_arguments)]
fn gen(
    kind: Kind,
    n: usize,
    class_size: Option<usize>,
    left: Option<usize>,
    right: Option<usize>,
    edge_disjoint: bool,
    seed: u64,
    grid: bool,
) -> Result<Outcome, Failure> {
    let spec = match kind {
        Kind::Latin => InstanceSpec::latin(n, seed),
        Kind::Random => {
            let class = class_size.unwrap_or(n);
            let spec = InstanceSpec::random(n, class, edge_disjoint, seed);
            spec.with_sides(left.unwrap_or(spec.left), right.unwrap_or(spec.right))
        }
    };
    let g = generate_instance(&spec).map_err(Failure::input)?;
    let text = if grid && spec.kind == InstanceKind::Latin {
        let mut cells = vec![vec![0; n]; n];
        for e in g.edges() {
            cells[e.x][e.y] = e.c;
        }
        write_latin(&LatinRectangle::from_grid(cells).map_err(Failure::input)?)
    } else {
        write_edge_list(&g)
    };
    Ok(Outcome {
        json: None,
        text,
        code: 0,
    })
}
