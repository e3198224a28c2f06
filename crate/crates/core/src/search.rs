//! Exact optimal pebbling and rubbling numbers.
//!
//! Sizes are scanned upward from the best domination lower bound. At each
//! size every multiset of pebbles is enumerated (stars and bars, descending
//! lexicographic order of the count vector) and tested for solvability; the
//! first solvable distribution settles the value. Solvability is monotone in
//! the number of pebbles, so exhausting size `s - 1` proves `s` optimal.

use serde::Serialize;
use thiserror::Error;

use crate::bounds::{best_bounds, BoundReport, BoundsError};
use crate::graph::{build_complete, cartesian_product, Graph, GraphError};
use crate::pebble::{weight, Distribution, DistributionError, MoveSystem};
use crate::reach::{
    check_reach_input, probe_order, solvable, ReachOptions, ReachResult, Searcher,
    MAX_REACH_PEBBLES,
};
use crate::Dyadic;

/// Prefix pruning keeps an `n x n` table; beyond this the stream only
/// filters complete distributions.
const PRUNE_TABLE_MAX_VERTICES: usize = 512;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("budget of {budget} reachability queries exhausted; optimum lies in [{lb}, {ub}]")]
    Inconclusive { lb: u64, ub: u64, budget: u64 },
    #[error("input distribution is not solvable under {0} moves")]
    Unsolvable(&'static str),
    #[error("upper bound 2^{0} exceeds the {MAX_REACH_PEBBLES}-pebble search limit")]
    TooDeep(usize),
    #[error(transparent)]
    Distribution(#[from] DistributionError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Enumeration filters. Both only remove unsolvable distributions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Filters {
    /// Skip distributions leaving some vertex with weight below one.
    pub weight: bool,
    /// Skip distributions with at most one pebble per vertex that leave a
    /// vertex empty; no pebbling move is available from them.
    pub pebbling_support: bool,
}

impl Filters {
    pub fn none() -> Self {
        Self {
            weight: false,
            pebbling_support: false,
        }
    }

    pub fn for_system(sys: MoveSystem) -> Self {
        Self {
            weight: true,
            pebbling_support: sys == MoveSystem::PebblingOnly,
        }
    }
}

struct Pruner {
    one: u128,
    /// `units[u * n + v]`: scaled weight one pebble on `v` adds at `u`.
    units: Vec<u128>,
    /// `tail[i * n + u]`: largest unit any vertex `>= i` adds at `u`.
    tail: Vec<u128>,
    prefix: Vec<u128>,
}

impl Pruner {
    fn new(g: &Graph) -> Option<Self> {
        let n = g.n();
        if n > PRUNE_TABLE_MAX_VERTICES || g.diameter() > crate::pebble::FAST_WEIGHT_MAX_DIAMETER {
            return None;
        }
        let shift = g.diameter() as u32;
        let units: Vec<u128> = (0..n * n)
            .map(|i| 1u128 << (shift - g.dist(i / n, i % n) as u32))
            .collect();
        let mut tail = vec![0u128; n * n];
        for i in (0..n).rev() {
            for u in 0..n {
                let here = units[u * n + i];
                let later = if i + 1 < n { tail[(i + 1) * n + u] } else { 0 };
                tail[i * n + u] = here.max(later);
            }
        }
        Some(Self {
            one: 1u128 << shift,
            units,
            tail,
            prefix: vec![0; n],
        })
    }

    fn shift_count(&mut self, v: usize, add: u32, remove: u32) {
        let n = self.prefix.len();
        for u in 0..n {
            let unit = self.units[u * n + v];
            self.prefix[u] = self.prefix[u] + unit * u128::from(add) - unit * u128::from(remove);
        }
    }

    /// Could placing `rem` more pebbles on vertices `>= i` lift every weight
    /// to one?
    fn feasible(&self, i: usize, rem: u32) -> bool {
        let n = self.prefix.len();
        let tail = &self.tail[i * n..(i + 1) * n];
        self.prefix
            .iter()
            .zip(tail)
            .all(|(&w, &t)| w + t * u128::from(rem) >= self.one)
    }

    fn complete(&self) -> bool {
        self.prefix.iter().all(|&w| w >= self.one)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Phase {
    Start,
    Running,
    Done,
}

/// Stream of every distribution of `size` pebbles on the graph, each exactly
/// once, in descending lexicographic order of the count vector, minus those
/// removed by the filters.
pub struct DistributionStream<'g> {
    g: &'g Graph,
    filters: Filters,
    counts: Vec<u32>,
    rem: Vec<u32>,
    pruner: Option<Pruner>,
    phase: Phase,
}

pub fn enumerate_distributions(g: &Graph, size: u32, filters: Filters) -> DistributionStream<'_> {
    let n = g.n();
    let mut rem = vec![0; n];
    rem[0] = size;
    DistributionStream {
        g,
        filters,
        counts: vec![0; n],
        rem,
        pruner: if filters.weight { Pruner::new(g) } else { None },
        phase: Phase::Start,
    }
}

impl DistributionStream<'_> {
    fn set(&mut self, v: usize, value: u32) {
        let old = self.counts[v];
        if old != value {
            if let Some(p) = self.pruner.as_mut() {
                p.shift_count(v, value.saturating_sub(old), old.saturating_sub(value));
            }
            self.counts[v] = value;
        }
    }

    /// Retreats to the next unexplored branch; returns the level to resume.
    fn step_back(&mut self) -> Option<usize> {
        let n = self.counts.len();
        self.set(n - 1, 0);
        let j = (0..n - 1).rev().find(|&j| self.counts[j] > 0)?;
        let c = self.counts[j];
        self.set(j, c - 1);
        self.rem[j + 1] = self.rem[j] - (c - 1);
        Some(j + 1)
    }

    fn feasible(&self, i: usize) -> bool {
        self.pruner
            .as_ref()
            .is_none_or(|p| p.feasible(i, self.rem[i]))
    }

    fn accept(&self) -> bool {
        let n = self.counts.len();
        if self.filters.pebbling_support {
            let size: u32 = self.rem[0];
            if self.counts.iter().all(|&c| c <= 1) && (size as usize) < n {
                return false;
            }
        }
        if self.filters.weight {
            return match &self.pruner {
                Some(p) => p.complete(),
                None => {
                    let p = Distribution::from_counts(self.counts.clone());
                    (0..n).all(|u| weight(self.g, &p, u) >= Dyadic::one())
                }
            };
        }
        true
    }

    /// Descends from level `i` to the next accepted leaf.
    fn seek(&mut self, mut i: usize) -> bool {
        loop {
            if self.feasible(i) {
                let r = self.rem[i];
                self.set(i, r);
                if self.accept() {
                    return true;
                }
            }
            match self.step_back() {
                Some(j) => i = j,
                None => return false,
            }
        }
    }
}

impl Iterator for DistributionStream<'_> {
    type Item = Distribution;

    fn next(&mut self) -> Option<Distribution> {
        let found = match self.phase {
            Phase::Done => return None,
            Phase::Start => {
                self.phase = Phase::Running;
                self.seek(0)
            }
            Phase::Running => match self.step_back() {
                Some(j) => self.seek(j),
                None => false,
            },
        };
        if found {
            Some(Distribution::from_counts(self.counts.clone()))
        } else {
            self.phase = Phase::Done;
            None
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Maximum number of reachability queries.
    pub budget: u64,
    pub filters: bool,
    /// Start the scan at the best domination lower bound.
    pub use_theorems: bool,
    /// Values of `k` for the lower bounds; defaults to `2..=diam + 1`.
    pub k_range: Option<std::ops::RangeInclusive<usize>>,
    /// Extra solvable candidates tried before enumeration to tighten the
    /// upper bound.
    pub seeds: Vec<Distribution>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            budget: 50_000_000,
            filters: true,
            use_theorems: true,
            k_range: None,
            seeds: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LowerBoundEvidence {
    /// Every distribution one pebble smaller was enumerated and found
    /// unsolvable.
    ExhaustedAllSmaller {
        exhausted_size: u64,
        filters: bool,
    },
    TheoremBound {
        name: String,
        k: usize,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub distributions_tested: u64,
    pub reach_queries: u64,
    /// `(lb, ub)` after seeding and after each exhausted size.
    pub brackets: Vec<(u64, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OptimumCertificate {
    pub sys: MoveSystem,
    pub value: u64,
    pub witness_distribution: Distribution,
    pub witness_solutions: Vec<ReachResult>,
    pub lower_bound_evidence: LowerBoundEvidence,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundReport>,
    pub stats: SearchStats,
}

struct Solver<'g> {
    g: &'g Graph,
    searcher: Searcher<'g>,
    budget: u64,
    stats: SearchStats,
}

impl Solver<'_> {
    /// Short-circuiting solvability test, charged against the budget.
    fn solves(&mut self, p: &Distribution) -> Option<bool> {
        self.stats.distributions_tested += 1;
        for t in probe_order(self.g, p) {
            if p.count(t) > 0 {
                continue;
            }
            if self.stats.reach_queries >= self.budget {
                return None;
            }
            self.stats.reach_queries += 1;
            if !self.searcher.run(p, t).reachable {
                return Some(false);
            }
        }
        Some(true)
    }
}

fn theorem_name(report: &BoundReport, sys: MoveSystem, value: u64) -> (String, usize) {
    for row in &report.rows {
        let mut candidates = vec![
            ("thm3", row.thm3_rubbling_lb),
            ("thm5", row.thm5_rubbling_lb),
        ];
        if sys == MoveSystem::PebblingOnly {
            candidates.push(("thm6", row.thm6_pebbling_lb));
            candidates.push(("thm4_mid", row.thm4_mid_pebbling_lb));
        }
        if let Some((name, _)) = candidates.into_iter().find(|(_, v)| *v == Some(value)) {
            return (name.to_string(), row.k);
        }
    }
    unreachable!("lower bound {value} not present in report")
}

/// Computes `π_opt` (pebbling-only) or `ρ_opt` (rubbling) exactly.
pub fn optimal_number(
    g: &Graph,
    sys: MoveSystem,
    opts: &SearchOptions,
) -> Result<OptimumCertificate, SearchError> {
    let diam = g.diameter();
    let mut solver = Solver {
        g,
        searcher: Searcher::new(g, sys, ReachOptions::default()),
        budget: opts.budget,
        stats: SearchStats::default(),
    };

    // upper bound: all pebbles on vertex 0, then any tighter seeds
    let mut best: Option<Distribution> = None;
    if diam < 8 {
        best = Some(Distribution::single(g.n(), 0, 1 << diam));
    }
    for seed in &opts.seeds {
        check_reach_input(g, seed)?;
        let better = best.as_ref().is_none_or(|b| seed.size() < b.size());
        if better {
            match solver.solves(seed) {
                Some(true) => best = Some(seed.clone()),
                Some(false) => {}
                None => break,
            }
        }
    }
    let mut ub = match &best {
        Some(b) => b.size(),
        None => return Err(SearchError::TooDeep(diam)),
    };

    let mut lb = 1u64;
    let mut report = None;
    let mut theorem = None;
    if opts.use_theorems {
        let ks = opts.k_range.clone().unwrap_or(2..=diam + 1);
        let r = best_bounds(g, &format!("n={}", g.n()), ks)?;
        let t = match sys {
            MoveSystem::PebblingOnly => r.best_pebbling_lb,
            MoveSystem::Rubbling => r.best_rubbling_lb,
        };
        if t > lb {
            lb = t;
            theorem = Some(theorem_name(&r, sys, t));
        }
        report = Some(r);
    }
    debug_assert!(lb <= ub);
    solver.stats.brackets.push((lb, ub));

    let filters = if opts.filters {
        Filters::for_system(sys)
    } else {
        Filters::none()
    };
    let mut evidence = None;
    let mut size = lb;
    while size < ub {
        let mut found = None;
        for p in enumerate_distributions(g, size as u32, filters) {
            match solver.solves(&p) {
                Some(true) => {
                    found = Some(p);
                    break;
                }
                Some(false) => {}
                None => {
                    return Err(SearchError::Inconclusive {
                        lb: size,
                        ub,
                        budget: opts.budget,
                    })
                }
            }
        }
        if let Some(p) = found {
            ub = size;
            best = Some(p);
            solver.stats.brackets.push((lb, ub));
            break;
        }
        size += 1;
        lb = size;
        evidence = Some(LowerBoundEvidence::ExhaustedAllSmaller {
            exhausted_size: size - 1,
            filters: opts.filters,
        });
        solver.stats.brackets.push((lb, ub));
    }

    let value = ub;
    let lower_bound_evidence = match (evidence, theorem) {
        (Some(e), _) => e,
        (None, Some((name, k))) => LowerBoundEvidence::TheoremBound { name, k },
        (None, None) => {
            debug_assert_eq!(value, 1);
            LowerBoundEvidence::ExhaustedAllSmaller {
                exhausted_size: 0,
                filters: opts.filters,
            }
        }
    };
    let witness_distribution = best.expect("upper bound always has a witness");
    let table = solvable(g, &witness_distribution, sys)?;
    debug_assert!(table.solvable);
    Ok(OptimumCertificate {
        sys,
        value,
        witness_distribution,
        witness_solutions: table.table,
        lower_bound_evidence,
        bounds: report,
        stats: solver.stats,
    })
}

#[derive(Clone, Debug)]
pub struct Lifted {
    pub graph: Graph,
    pub distribution: Distribution,
}

/// Doubles a solvable distribution of `g` onto the copy `g × {0}` inside
/// `g □ K_n`.
pub fn lift_through_product(
    g: &Graph,
    p: &Distribution,
    n: usize,
    sys: MoveSystem,
) -> Result<Lifted, SearchError> {
    if !solvable(g, p, sys)?.solvable {
        return Err(SearchError::Unsolvable(sys.name()));
    }
    let graph = cartesian_product(g, &build_complete(n)?)?;
    let mut distribution = Distribution::empty(graph.n());
    for (v, c) in p.iter_nonzero() {
        distribution.add(v * n, 2 * c);
    }
    Ok(Lifted {
        graph,
        distribution,
    })
}
