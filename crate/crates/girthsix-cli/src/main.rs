//! Command-line front end for the girthsix library.
//!
//! Exit codes are a stable contract: 0 success or witness, 1 negative
//! verdict, 2 usage or parse failure, 3 search gave up on its node budget.
//! Default output is line-oriented and stable across runs; `--json` switches
//! every verb to one JSON object on stdout.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use girthsix::circuits::{
    find_breakers, girth, is_interesting, pentagon_count, short_circuits, Girth,
};
use girthsix::containment::{
    contains_subdivision, pattern, validate_witness, Containment, SubdivisionWitness,
    DEFAULT_NODE_BUDGET,
};
use girthsix::cuts::{find_shore, is_theta_connected};
use girthsix::graph::{
    encode_graph6, encode_sparse6, fixture, fixture_names, parse_adjacency,
    parse_graph6_or_sparse6, write_adjacency,
};
use girthsix::{Error, MultiGraph};

const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;

/// Environment variable overriding the default subdivision search budget.
const BUDGET_VAR: &str = "GIRTHSIX_NODE_BUDGET";

#[derive(Parser)]
#[command(name = "girthsix", version, about = "Structure toolkit for cubic multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a structural report: order, size, girth, circuits, breakers,
    /// interestingness, theta-connectedness, and any shore.
    Analyze {
        #[command(flatten)]
        target: Target,
        /// Emit one JSON object instead of the line report.
        #[arg(long)]
        json: bool,
    },
    /// Search the target for a subdivision of a pattern graph.
    Search {
        #[command(flatten)]
        target: Target,
        /// Pattern name (petersen, k4, k33, k5) or a graph file path.
        #[arg(long)]
        pattern: String,
        /// Backtracking node budget; defaults to GIRTHSIX_NODE_BUDGET or 10^7.
        #[arg(long)]
        budget: Option<u64>,
        /// Emit one JSON object instead of the certificate text.
        #[arg(long)]
        json: bool,
    },
    /// Print a bundled fixture graph.
    Fixture {
        /// Fixture name; `list` prints the available names.
        name: String,
        /// Output format: adjacency, graph6 or sparse6.
        #[arg(long, default_value = "adjacency")]
        format: String,
    },
    /// Replay a witness certificate against a host and a pattern.
    ValidateWitness {
        /// Path of the certificate file to replay.
        witness: PathBuf,
        #[command(flatten)]
        target: Target,
        /// Pattern name (petersen, k4, k33, k5) or a graph file path.
        #[arg(long)]
        pattern: String,
        /// Emit one JSON object instead of the verdict line.
        #[arg(long)]
        json: bool,
    },
}

/// The graph a verb operates on: a file path or a bundled fixture.
#[derive(Args)]
struct Target {
    /// Path of a graph file (.g6/.s6 records or adjacency text).
    path: Option<PathBuf>,
    /// Use a bundled fixture instead of a file.
    #[arg(long, conflicts_with = "path")]
    fixture: Option<String>,
}

impl Target {
    fn load(&self) -> girthsix::Result<MultiGraph> {
        match (&self.path, &self.fixture) {
            (Some(path), None) => load_graph_file(path),
            (None, Some(name)) => fixture(name),
            _ => Err(Error::Precondition(
                "pass exactly one of a file path or --fixture".into(),
            )),
        }
    }
}

/// Reads one graph from a file: graph6/sparse6 records for `.g6`/`.s6`
/// extensions or `:`/`>>`-shaped first lines, adjacency text otherwise.
fn load_graph_file(path: &Path) -> girthsix::Result<MultiGraph> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
    let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("");
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    if matches!(ext, "g6" | "s6") || first.starts_with(':') || first.starts_with(">>") {
        parse_graph6_or_sparse6(first)
    } else {
        parse_adjacency(&text)
    }
}

/// Resolves `--pattern`: a known pattern name or a graph file.
fn load_pattern(spec: &str) -> girthsix::Result<MultiGraph> {
    match pattern(spec) {
        Ok(g) => Ok(g),
        Err(_) if Path::new(spec).exists() => load_graph_file(Path::new(spec)),
        Err(e) => Err(e),
    }
}

fn default_budget() -> u64 {
    std::env::var(BUDGET_VAR)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_NODE_BUDGET)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(command: Command) -> girthsix::Result<ExitCode> {
    match command {
        Command::Analyze { target, json } => analyze(&target.load()?, json),
        Command::Search { target, pattern, budget, json } => {
            let host = target.load()?;
            let pat = load_pattern(&pattern)?;
            search(&host, &pat, budget.unwrap_or_else(default_budget), json)
        }
        Command::Fixture { name, format } => print_fixture(&name, &format),
        Command::ValidateWitness { target, pattern, witness, json } => {
            let host = target.load()?;
            let pat = load_pattern(&pattern)?;
            let text = fs::read_to_string(&witness)
                .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", witness.display())))?;
            replay(&host, &pat, &text, json)
        }
    }
}

/// `theta-connected` and `shore` become `unknown` past the sweep bound
/// instead of failing the whole report.
fn analyze(g: &MultiGraph, json: bool) -> girthsix::Result<ExitCode> {
    let shorts = short_circuits(g);
    let breakers = find_breakers(g);
    let gir = girth(g);
    let theta = bounded(is_theta_connected(g))?;
    let shore = bounded(find_shore(g))?;
    if json {
        let girth_json = match gir {
            Girth::Finite(k) => serde_json::json!(k),
            Girth::Infinite => serde_json::json!("infinity"),
        };
        let opt_bool = |v: Option<bool>| match v {
            Some(b) => serde_json::json!(b),
            None => serde_json::json!("unknown"),
        };
        let shore_json = match &shore {
            Some(Some(s)) => serde_json::json!({
                "side": s.side.iter().map(|v| v.0).collect::<Vec<_>>(),
                "boundary": s.boundary.len(),
            }),
            Some(None) => serde_json::Value::Null,
            None => serde_json::json!("unknown"),
        };
        let report = serde_json::json!({
            "order": g.order(),
            "size": g.size(),
            "cubic": g.is_cubic(),
            "girth": girth_json,
            "short_circuits": shorts.len(),
            "breakers": breakers.len(),
            "pentagons": pentagon_count(g),
            "interesting": is_interesting(g),
            "theta_connected": opt_bool(theta),
            "shore": shore_json,
        });
        println!("{report}");
    } else {
        println!("order: {}", g.order());
        println!("size: {}", g.size());
        println!("cubic: {}", g.is_cubic());
        println!("girth: {gir}");
        println!("short-circuits: {}", shorts.len());
        for c in &shorts {
            println!("  circuit: {}", circuit_line(c.vertices()));
        }
        println!("breakers: {}", breakers.len());
        for c in &breakers {
            println!("  breaker: {}", circuit_line(c.vertices()));
        }
        println!("pentagons: {}", pentagon_count(g));
        println!("interesting: {}", is_interesting(g));
        match theta {
            Some(b) => println!("theta-connected: {b}"),
            None => println!("theta-connected: unknown (graph exceeds the sweep bound)"),
        }
        match &shore {
            Some(Some(s)) => {
                println!("shore: {}", circuit_line(&s.side.iter().copied().collect::<Vec<_>>()));
                println!("shore-boundary: {}", s.boundary.len());
            }
            Some(None) => println!("shore: none"),
            None => println!("shore: unknown (graph exceeds the sweep bound)"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Flattens a sweep result so oversized graphs degrade to `None` instead of
/// an error.
fn bounded<T>(r: girthsix::Result<T>) -> girthsix::Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::BoundExceeded(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn circuit_line(vs: &[girthsix::VertexId]) -> String {
    vs.iter().map(|v| v.0.to_string()).collect::<Vec<_>>().join(" ")
}

fn search(
    host: &MultiGraph,
    pat: &MultiGraph,
    budget: u64,
    json: bool,
) -> girthsix::Result<ExitCode> {
    match contains_subdivision(host, pat, Some(budget))? {
        Containment::Found(w) => {
            validate_witness(host, pat, &w)?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({ "outcome": "witness", "certificate": w.to_text(pat)? })
                );
            } else {
                print!("{}", w.to_text(pat)?);
            }
            Ok(ExitCode::SUCCESS)
        }
        Containment::Absent => {
            if json {
                println!("{}", serde_json::json!({ "outcome": "none" }));
            } else {
                println!("none");
            }
            Ok(ExitCode::from(EXIT_NEGATIVE))
        }
        Containment::Unknown => {
            if json {
                println!("{}", serde_json::json!({ "outcome": "unknown", "budget": budget }));
            } else {
                println!("unknown (node budget {budget} exhausted)");
            }
            Ok(ExitCode::from(EXIT_UNKNOWN))
        }
    }
}

fn print_fixture(name: &str, format: &str) -> girthsix::Result<ExitCode> {
    if name == "list" {
        for n in fixture_names() {
            println!("{n}");
        }
        return Ok(ExitCode::SUCCESS);
    }
    let g = fixture(name)?;
    match format {
        "adjacency" => print!("{}", write_adjacency(&g)),
        "graph6" => println!("{}", encode_graph6(&g)?),
        "sparse6" => println!("{}", encode_sparse6(&g)?),
        other => {
            return Err(Error::Precondition(format!(
                "unknown format `{other}`, expected adjacency, graph6 or sparse6"
            )))
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn replay(
    host: &MultiGraph,
    pat: &MultiGraph,
    text: &str,
    json: bool,
) -> girthsix::Result<ExitCode> {
    let parsed = SubdivisionWitness::from_text(pat, host, text);
    let verdict = match parsed {
        Ok(w) => match validate_witness(host, pat, &w) {
            Ok(()) => Ok(()),
            Err(Error::InvalidWitness(msg)) => Err(msg),
            Err(e) => return Err(e),
        },
        Err(Error::InvalidWitness(msg)) => Err(msg),
        Err(e) => return Err(e),
    };
    match verdict {
        Ok(()) => {
            if json {
                println!("{}", serde_json::json!({ "outcome": "valid" }));
            } else {
                println!("valid");
            }
            Ok(ExitCode::SUCCESS)
        }
        Err(msg) => {
            if json {
                println!("{}", serde_json::json!({ "outcome": "invalid", "reason": msg }));
            } else {
                println!("invalid: {msg}");
            }
            Ok(ExitCode::from(EXIT_NEGATIVE))
        }
    }
}
