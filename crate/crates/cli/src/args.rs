use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pebblelab::MoveSystem;

#[derive(Debug, Parser)]
#[command(
    name = "pebblelab",
    version,
    about = "Exact pebbling and rubbling workbench"
)]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Directory for cached results.
    #[arg(long, global = true, env = "PEBBLELAB_CACHE", value_name = "PATH")]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build, load or describe a graph.
    Graph {
        #[command(subcommand)]
        source: GraphSource,
        /// Print n, m, diameter and the degree histogram.
        #[arg(long, global = true)]
        stats: bool,
        /// Write the graph file here instead of standard output.
        #[arg(long, global = true, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Decide whether a target vertex can receive a pebble.
    Reach {
        #[command(flatten)]
        input: DistInput,
        #[arg(long)]
        target: usize,
    },
    /// Decide whether every vertex can receive a pebble.
    Solvable {
        #[command(flatten)]
        input: DistInput,
    },
    /// Exact distance-k domination number.
    Gamma {
        #[arg(long, value_name = "FILE")]
        graph: PathBuf,
        #[arg(long, value_parser = parse_k_range)]
        k: RangeInclusive<usize>,
    },
    /// Diameter upper bound and domination lower bounds.
    Bounds {
        #[arg(long, value_name = "FILE")]
        graph: PathBuf,
        /// Values of k, `N` or `A..B`; defaults to 2..diameter+1.
        #[arg(long, value_parser = parse_k_range)]
        k: Option<RangeInclusive<usize>>,
    },
    /// Optimal pebbling number.
    PiOpt(OptArgs),
    /// Optimal rubbling number.
    RhoOpt(OptArgs),
    /// Re-derive the reference results on K3□K3□K5 and related graphs.
    VerifyPaper {
        /// Disable enumeration filters (verdicts must not change).
        #[arg(long)]
        no_filters: bool,
    },
    /// Manage the result cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum GraphSource {
    /// A generator such as `hamming 3 2` or `product complete 3 path 4`.
    Family {
        #[arg(required = true, num_args = 1..)]
        tokens: Vec<String>,
    },
    /// A graph file.
    File { path: PathBuf },
    /// A seeded random connected graph.
    Random {
        n: usize,
        /// Probability of each edge beyond a random spanning tree.
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    /// Delete entries from other engine versions and unreadable files.
    Gc,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SystemArg {
    Pebbling,
    Rubbling,
}

impl From<SystemArg> for MoveSystem {
    fn from(s: SystemArg) -> Self {
        match s {
            SystemArg::Pebbling => MoveSystem::PebblingOnly,
            SystemArg::Rubbling => MoveSystem::Rubbling,
        }
    }
}

#[derive(Debug, Args)]
pub struct DistInput {
    #[arg(long, value_name = "FILE")]
    pub graph: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub dist: PathBuf,
    #[arg(long, value_enum, default_value = "pebbling")]
    pub system: SystemArg,
}

#[derive(Debug, Args)]
pub struct OptArgs {
    #[arg(long, value_name = "FILE")]
    pub graph: PathBuf,
    /// Maximum number of reachability queries.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Values of k used for the theorem lower bound.
    #[arg(long, alias = "k-range", value_parser = parse_k_range)]
    pub k: Option<RangeInclusive<usize>>,
    /// Disable enumeration filters.
    #[arg(long)]
    pub no_filters: bool,
    /// Prove the lower bound by enumeration only.
    #[arg(long)]
    pub no_theorems: bool,
}

/// Parses `N` or `A..B` (inclusive).
pub fn parse_k_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("invalid k `{t}`"))
    };
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty k range `{s}`"));
            }
            Ok(a..=b)
        }
        None => num(s).map(|k| k..=k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_ranges() {
        assert_eq!(parse_k_range("2"), Ok(2..=2));
        assert_eq!(parse_k_range("2..4"), Ok(2..=4));
        assert_eq!(parse_k_range("2..=4"), Ok(2..=4));
        assert!(parse_k_range("4..2").is_err());
        assert!(parse_k_range("x").is_err());
    }
}
