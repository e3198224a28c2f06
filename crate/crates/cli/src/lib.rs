//! Command-line front end for the pebblelab engine.
//!
//! [`run`] executes one parsed command and returns what to print together
//! with the exit code; `main` only does the I/O. Exit codes: 0 success,
//! 2 input error, 3 budget exhausted, 4 verification failure.

pub mod args;
pub mod cache;
pub mod verify;

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

use pebblelab::bounds::best_bounds;
use pebblelab::domination::gamma;
use pebblelab::format::{
    load_distribution, load_graph, parse_family, save_distribution, save_graph, ParseError,
};
use pebblelab::pebble::weight;
use pebblelab::reach::{reachable, solvable};
use pebblelab::search::{optimal_number, SearchError, SearchOptions};
use pebblelab::{Distribution, Graph, MoveSystem, ENGINE_VERSION};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use args::{CacheAction, Cli, Command, GraphSource, OptArgs};
use cache::{Cache, RunRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Io(_) => 1,
        }
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub exit_code: i32,
    /// Whether the result came from the cache.
    pub cached: bool,
}

/// A command result before rendering: JSON plus its exit code.
struct Computed {
    value: Value,
    exit_code: i32,
}

impl Computed {
    fn ok(value: Value) -> Self {
        Self {
            value,
            exit_code: EXIT_OK,
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let cache = cli.cache_dir.as_ref().map(Cache::new);
    let (name, parts, job): (&str, Vec<String>, Job) = match &cli.command {
        Command::Graph { source, stats, out } => {
            return graph_command(source, *stats, out.as_deref(), cli.json);
        }
        Command::Cache {
            action: CacheAction::Gc,
        } => return cache_gc(cache.as_ref(), cli.json),
        Command::Reach { input, target } => {
            let g = read_graph(&input.graph)?;
            let p = read_dist(&input.dist, &g)?;
            let sys = MoveSystem::from(input.system);
            let target = *target;
            let parts = vec![
                save_graph(&g),
                save_distribution(&p),
                sys.name().into(),
                target.to_string(),
            ];
            ("reach", parts, Box::new(move || reach(&g, &p, target, sys)))
        }
        Command::Solvable { input } => {
            let g = read_graph(&input.graph)?;
            let p = read_dist(&input.dist, &g)?;
            let sys = MoveSystem::from(input.system);
            let parts = vec![save_graph(&g), save_distribution(&p), sys.name().into()];
            (
                "solvable",
                parts,
                Box::new(move || solvability(&g, &p, sys)),
            )
        }
        Command::Gamma { graph, k } => {
            let g = read_graph(graph)?;
            let k = k.clone();
            let parts = vec![save_graph(&g), format!("{k:?}")];
            ("gamma", parts, Box::new(move || domination(&g, k)))
        }
        Command::Bounds { graph, k } => {
            let g = read_graph(graph)?;
            let ks = k.clone().unwrap_or(2..=g.diameter() + 1);
            let id = graph_id(graph);
            let parts = vec![save_graph(&g), format!("{ks:?}"), id.clone()];
            ("bounds", parts, Box::new(move || bounds(&g, &id, ks)))
        }
        Command::PiOpt(a) => opt_job("pi-opt", a, MoveSystem::PebblingOnly)?,
        Command::RhoOpt(a) => opt_job("rho-opt", a, MoveSystem::Rubbling)?,
        Command::VerifyPaper { no_filters } => {
            let filters = !*no_filters;
            let parts = vec![format!("filters={filters}")];
            ("verify-paper", parts, Box::new(move || verify_job(filters)))
        }
    };

    let part_refs: Vec<&str> = parts.iter().map(String::as_str).collect();
    let digest = cache::digest(name, &part_refs);
    if let Some(rec) = cache.as_ref().and_then(|c| c.get(name, &digest)) {
        return Ok(Outcome {
            stdout: render(name, &rec.result, cli.json),
            exit_code: rec.exit_code,
            cached: true,
        });
    }
    let start = Instant::now();
    let computed = job()?;
    if let Some(c) = &cache {
        // inconclusive runs depend on the budget and are cheap to redo
        if computed.exit_code != EXIT_INCONCLUSIVE {
            let rec = RunRecord {
                command: name.into(),
                digest,
                engine_version: ENGINE_VERSION.into(),
                exit_code: computed.exit_code,
                wall_time_ms: start.elapsed().as_millis() as u64,
                result: computed.value.clone(),
            };
            if let Err(e) = c.put(&rec) {
                eprintln!("warning: could not write cache entry: {e}");
            }
        }
    }
    Ok(Outcome {
        stdout: render(name, &computed.value, cli.json),
        exit_code: computed.exit_code,
        cached: false,
    })
}

type Job = Box<dyn FnOnce() -> Result<Computed, CliError>>;

fn opt_job(
    name: &'static str,
    a: &OptArgs,
    sys: MoveSystem,
) -> Result<(&'static str, Vec<String>, Job), CliError> {
    let g = read_graph(&a.graph)?;
    let mut opts = SearchOptions {
        filters: !a.no_filters,
        use_theorems: !a.no_theorems,
        k_range: a.k.clone(),
        ..SearchOptions::default()
    };
    if let Some(b) = a.budget {
        opts.budget = b;
    }
    let parts = vec![
        save_graph(&g),
        format!(
            "budget={} filters={} theorems={} k={:?}",
            opts.budget, opts.filters, opts.use_theorems, opts.k_range
        ),
    ];
    Ok((name, parts, Box::new(move || optimum(&g, sys, &opts))))
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    load_graph(&read_text(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_dist(path: &Path, g: &Graph) -> Result<Distribution, CliError> {
    let p = load_distribution(&read_text(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    if p.n() != g.n() {
        return Err(CliError::Input(format!(
            "{}: distribution has {} vertices, graph has {}",
            path.display(),
            p.n(),
            g.n()
        )));
    }
    Ok(p)
}

fn graph_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn random_graph(n: usize, density: f64, seed: u64) -> Result<Graph, CliError> {
    if n == 0 {
        return Err(input("random graph needs at least one vertex"));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(input(format!("density `{density}` is not in [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        let parent = rng.gen_range(0..v);
        edges.push((parent, v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).map_err(input)
}

fn graph_command(
    source: &GraphSource,
    stats: bool,
    out: Option<&Path>,
    json: bool,
) -> Result<Outcome, CliError> {
    let g = match source {
        GraphSource::Family { tokens } => {
            let tokens: Vec<&str> = tokens.iter().map(String::as_str).collect();
            parse_family(1, &tokens).map_err(|e| match e {
                ParseError::UnknownFamily { token, .. } => {
                    CliError::Input(format!("unknown graph family `{token}`"))
                }
                ParseError::Syntax { message, .. } => CliError::Input(message),
                other => input(other),
            })?
        }
        GraphSource::File { path } => read_graph(path)?,
        GraphSource::Random { n, density, seed } => random_graph(*n, *density, *seed)?,
    };
    let mut stdout = String::new();
    if let Some(path) = out {
        fs::write(path, save_graph(&g))
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    if stats {
        let hist: Vec<Value> = g
            .degree_histogram()
            .into_iter()
            .map(|(d, c)| json!({"degree": d, "count": c}))
            .collect();
        let value = json!({
            "n": g.n(),
            "m": g.edge_count(),
            "diameter": g.diameter(),
            "degree_histogram": hist,
        });
        if json {
            stdout = pretty(&value);
        } else {
            let degrees: Vec<String> = g
                .degree_histogram()
                .into_iter()
                .map(|(d, c)| format!("{d}:{c}"))
                .collect();
            stdout = format!(
                "n={} m={} diameter={}\ndegrees {}\n",
                g.n(),
                g.edge_count(),
                g.diameter(),
                degrees.join(" ")
            );
        }
    } else if out.is_none() {
        stdout = save_graph(&g);
    }
    Ok(Outcome {
        stdout,
        exit_code: EXIT_OK,
        cached: false,
    })
}

fn cache_gc(cache: Option<&Cache>, json: bool) -> Result<Outcome, CliError> {
    let cache = cache
        .ok_or_else(|| input("no cache directory; pass --cache-dir or set PEBBLELAB_CACHE"))?;
    let (kept, removed) = cache.gc().map_err(|e| CliError::Io(e.to_string()))?;
    let stdout = if json {
        pretty(&json!({"kept": kept, "removed": removed}))
    } else {
        format!("kept {kept}, removed {removed}\n")
    };
    Ok(Outcome {
        stdout,
        exit_code: EXIT_OK,
        cached: false,
    })
}

fn to_value(v: impl serde::Serialize) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

fn reach(
    g: &Graph,
    p: &Distribution,
    target: usize,
    sys: MoveSystem,
) -> Result<Computed, CliError> {
    let r = reachable(g, p, target, sys).map_err(input)?;
    let mut v = to_value(&r);
    v["system"] = sys.name().into();
    v["weight"] = to_value(weight(g, p, target));
    Ok(Computed::ok(v))
}

fn solvability(g: &Graph, p: &Distribution, sys: MoveSystem) -> Result<Computed, CliError> {
    let s = solvable(g, p, sys).map_err(input)?;
    let mut v = to_value(&s);
    v["system"] = sys.name().into();
    v["size"] = p.size().into();
    Ok(Computed::ok(v))
}

fn domination(g: &Graph, ks: std::ops::RangeInclusive<usize>) -> Result<Computed, CliError> {
    let single = ks.start() == ks.end();
    let certs: Vec<Value> = ks.map(|k| to_value(gamma(g, k))).collect();
    Ok(Computed::ok(if single {
        certs.into_iter().next().expect("one k")
    } else {
        Value::Array(certs)
    }))
}

fn bounds(g: &Graph, id: &str, ks: std::ops::RangeInclusive<usize>) -> Result<Computed, CliError> {
    best_bounds(g, id, ks)
        .map(|r| Computed::ok(to_value(r)))
        .map_err(input)
}

fn optimum(g: &Graph, sys: MoveSystem, opts: &SearchOptions) -> Result<Computed, CliError> {
    match optimal_number(g, sys, opts) {
        Ok(c) => Ok(Computed::ok(to_value(c))),
        Err(SearchError::Inconclusive { lb, ub, budget }) => Ok(Computed {
            value: json!({
                "sys": sys,
                "inconclusive": true,
                "lb": lb,
                "ub": ub,
                "budget": budget,
            }),
            exit_code: EXIT_INCONCLUSIVE,
        }),
        Err(e) => Err(input(e)),
    }
}

fn verify_job(filters: bool) -> Result<Computed, CliError> {
    let report = verify::verify_paper(filters);
    let exit_code = if report.all_passed {
        EXIT_OK
    } else {
        EXIT_VERIFY
    };
    Ok(Computed {
        value: to_value(report),
        exit_code,
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn render(command: &str, v: &Value, json: bool) -> String {
    if json {
        return pretty(v);
    }
    let mut out = String::new();
    match command {
        "reach" => {
            let target = &v["target"];
            if v["reachable"] == true {
                let moves: Vec<String> = v["witness"]
                    .as_array()
                    .into_iter()
                    .flatten()
                    .map(move_text)
                    .collect();
                let plural = if moves.len() == 1 { "" } else { "s" };
                let _ = writeln!(
                    out,
                    "vertex {target} is reachable in {} move{plural}",
                    moves.len()
                );
                for m in moves {
                    let _ = writeln!(out, "  {m}");
                }
            } else {
                let _ = writeln!(
                    out,
                    "vertex {target} is unreachable ({})",
                    v["reason"].as_str().unwrap_or("")
                );
            }
            let _ = writeln!(out, "weight {}", dyadic_text(&v["weight"]));
        }
        "solvable" => {
            let unreachable: Vec<String> = v["table"]
                .as_array()
                .into_iter()
                .flatten()
                .filter(|r| r["reachable"] == false)
                .map(|r| r["target"].to_string())
                .collect();
            if unreachable.is_empty() {
                let _ = writeln!(
                    out,
                    "solvable under {} with {} pebbles",
                    v["system"].as_str().unwrap_or(""),
                    v["size"]
                );
            } else {
                let _ = writeln!(
                    out,
                    "not solvable: unreachable vertices {}",
                    unreachable.join(" ")
                );
            }
        }
        "gamma" => {
            let certs = match v {
                Value::Array(a) => a.clone(),
                other => vec![other.clone()],
            };
            for c in certs {
                let _ = writeln!(out, "gamma_{} = {}  set {}", c["k"], c["gamma"], c["set"]);
            }
        }
        "bounds" => {
            let _ = writeln!(
                out,
                "n={} diameter={} upper bound 2^diam = {}",
                v["n"], v["diameter"], v["diameter_ub"]
            );
            let _ = writeln!(
                out,
                "{:>3} {:>8} {:>8} {:>6} {:>6} {:>6} {:>6}",
                "k", "γ(k-1)", "γ(k-2)", "thm3", "thm5", "mid", "thm6"
            );
            for r in v["rows"].as_array().into_iter().flatten() {
                let cell = |key: &str| match &r[key] {
                    Value::Null => "-".to_string(),
                    x => x.to_string(),
                };
                let _ = writeln!(
                    out,
                    "{:>3} {:>8} {:>8} {:>6} {:>6} {:>6} {:>6}",
                    cell("k"),
                    cell("gamma_k_minus_1"),
                    cell("gamma_k_minus_2"),
                    cell("thm3_rubbling_lb"),
                    cell("thm5_rubbling_lb"),
                    cell("thm4_mid_pebbling_lb"),
                    cell("thm6_pebbling_lb"),
                );
            }
            let _ = writeln!(out, "best rubbling lower bound {}", v["best_rubbling_lb"]);
            let _ = writeln!(out, "best pebbling lower bound {}", v["best_pebbling_lb"]);
        }
        "pi-opt" | "rho-opt" => {
            let sym = if command == "pi-opt" {
                "pi_opt"
            } else {
                "rho_opt"
            };
            if v["inconclusive"] == true {
                let _ = writeln!(
                    out,
                    "inconclusive after {} queries: {} <= {sym} <= {}",
                    v["budget"], v["lb"], v["ub"]
                );
            } else {
                let _ = writeln!(out, "{sym} = {}", v["value"]);
                let support: Vec<String> = v["witness_distribution"]["counts"]
                    .as_array()
                    .into_iter()
                    .flatten()
                    .enumerate()
                    .filter(|(_, c)| c.as_u64() != Some(0))
                    .map(|(i, c)| format!("{i}:{c}"))
                    .collect();
                let _ = writeln!(out, "witness {}", support.join(" "));
                let ev = &v["lower_bound_evidence"];
                let evidence = match ev["kind"].as_str() {
                    Some("theorem-bound") => {
                        format!("{} at k = {}", ev["name"].as_str().unwrap_or(""), ev["k"])
                    }
                    _ => format!(
                        "all {}-pebble distributions unsolvable",
                        ev["exhausted_size"]
                    ),
                };
                let _ = writeln!(out, "lower bound: {evidence}");
            }
        }
        "verify-paper" => {
            for item in v["items"].as_array().into_iter().flatten() {
                let mark = if item["passed"] == true {
                    "PASS"
                } else {
                    "FAIL"
                };
                let _ = writeln!(
                    out,
                    "[{mark}] {} {}: {}",
                    item["id"],
                    item["name"].as_str().unwrap_or(""),
                    item["detail"].as_str().unwrap_or("")
                );
            }
            let verdict = if v["all_passed"] == true {
                "all checks passed"
            } else {
                "verification failed"
            };
            let _ = writeln!(out, "{verdict}");
        }
        _ => out = pretty(v),
    }
    out
}

fn move_text(m: &Value) -> String {
    match m["type"].as_str() {
        Some("pebbling") => format!("{} -> {}", m["from"], m["to"]),
        _ => format!("{} + {} -> {}", m["from1"], m["from2"], m["to"]),
    }
}

fn dyadic_text(d: &Value) -> String {
    let num = match &d["num"] {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    match d["log2_den"].as_u64() {
        Some(0) | None => num,
        Some(e) => format!("{num}/2^{e}"),
    }
}
