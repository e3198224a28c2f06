//! Exact reachability and solvability.
//!
//! Every move removes one pebble from the board, so the states reachable
//! from a distribution form a DAG of depth at most `|P|`. A depth-first walk
//! with a per-query visited set therefore decides reachability exactly. Two
//! sound prunes keep it fast: the weight at the target never increases under
//! any move, so a state whose weight is below one is abandoned, and a move
//! landing on the target ends the walk.

use std::collections::HashSet;

use serde::Serialize;

use crate::graph::Graph;
use crate::pebble::{weight, Distribution, DistributionError, Move, MoveSystem, ScaledWeights};
use crate::Dyadic;

/// Largest distribution size a reachability query accepts; counts are
/// packed into bytes.
pub const MAX_REACH_PEBBLES: u64 = 255;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnreachableReason {
    WeightPruned,
    SearchExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReachResult {
    pub target: usize,
    pub reachable: bool,
    /// Executable sequence ending with a pebble on `target`; empty when the
    /// target already holds one or when unreachable.
    pub witness: Vec<Move>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<UnreachableReason>,
}

#[derive(Clone, Copy, Debug)]
pub struct ReachOptions {
    /// Abandon states whose weight at the target is below one.
    pub weight_prune: bool,
}

impl Default for ReachOptions {
    fn default() -> Self {
        Self { weight_prune: true }
    }
}

pub(crate) fn check_reach_input(g: &Graph, p: &Distribution) -> Result<(), DistributionError> {
    p.check_graph(g)?;
    if p.size() > MAX_REACH_PEBBLES {
        return Err(DistributionError::TooManyPebbles(p.size()));
    }
    Ok(())
}

pub fn reachable(
    g: &Graph,
    p: &Distribution,
    target: usize,
    sys: MoveSystem,
) -> Result<ReachResult, DistributionError> {
    reachable_with(g, p, target, sys, ReachOptions::default())
}

pub fn reachable_with(
    g: &Graph,
    p: &Distribution,
    target: usize,
    sys: MoveSystem,
    opts: ReachOptions,
) -> Result<ReachResult, DistributionError> {
    check_reach_input(g, p)?;
    if target >= g.n() {
        return Err(DistributionError::VertexOutOfRange {
            vertex: target,
            n: g.n(),
        });
    }
    Ok(Searcher::new(g, sys, opts).run(p, target))
}

/// Reusable per-graph search state. The visited set is cleared per query.
pub(crate) struct Searcher<'g> {
    g: &'g Graph,
    sys: MoveSystem,
    opts: ReachOptions,
    scaled: Option<ScaledWeights<'g>>,
    seen: HashSet<Box<[u8]>>,
}

struct Query {
    target: usize,
    /// `Some` when the fixed-point weight prune is active.
    units: Option<Vec<u128>>,
    one: u128,
}

impl<'g> Searcher<'g> {
    pub(crate) fn new(g: &'g Graph, sys: MoveSystem, opts: ReachOptions) -> Self {
        Self {
            g,
            sys,
            opts,
            scaled: ScaledWeights::new(g),
            seen: HashSet::new(),
        }
    }

    pub(crate) fn run(&mut self, p: &Distribution, target: usize) -> ReachResult {
        let done = |reachable, witness, reason| ReachResult {
            target,
            reachable,
            witness,
            reason,
        };
        if p.count(target) >= 1 {
            return done(true, Vec::new(), None);
        }
        if self.opts.weight_prune && weight(self.g, p, target) < Dyadic::one() {
            return done(false, Vec::new(), Some(UnreachableReason::WeightPruned));
        }

        let mut state: Vec<u8> = p.counts().iter().map(|&c| c as u8).collect();
        let (units, one) = match (&self.scaled, self.opts.weight_prune) {
            (Some(sw), true) => (
                Some(
                    (0..self.g.n())
                        .map(|v| sw.unit(target, v))
                        .collect::<Vec<_>>(),
                ),
                sw.one(),
            ),
            _ => (None, 0),
        };
        let w = units
            .as_ref()
            .map(|u| state.iter().zip(u).map(|(&c, &x)| u128::from(c) * x).sum())
            .unwrap_or(0);
        let q = Query { target, units, one };

        self.seen.clear();
        let mut witness = Vec::new();
        if self.dfs(&q, &mut state, w, &mut witness) {
            witness.reverse();
            done(true, witness, None)
        } else {
            done(false, Vec::new(), Some(UnreachableReason::SearchExhausted))
        }
    }

    /// Moves available in `state`, in the canonical order: pebbling moves by
    /// ascending source then target, then strict rubbling moves.
    fn moves(&self, state: &[u8], out: &mut Vec<Move>) {
        out.clear();
        let g = self.g;
        for from in 0..state.len() {
            if state[from] >= 2 {
                out.extend(
                    g.neighbors(from)
                        .iter()
                        .map(|&to| Move::Pebbling { from, to }),
                );
            }
        }
        if self.sys == MoveSystem::Rubbling {
            for from1 in 0..state.len() {
                if state[from1] == 0 {
                    continue;
                }
                for from2 in from1 + 1..state.len() {
                    if state[from2] == 0 {
                        continue;
                    }
                    out.extend(
                        g.neighbors(from1)
                            .iter()
                            .filter(|&&to| g.is_adjacent(from2, to))
                            .map(|&to| Move::StrictRubbling { from1, from2, to }),
                    );
                }
            }
        }
    }

    fn dfs(&mut self, q: &Query, state: &mut [u8], w: u128, witness: &mut Vec<Move>) -> bool {
        let mut moves = Vec::new();
        self.moves(state, &mut moves);
        if let Some(m) = moves.iter().find(|m| m.to() == q.target) {
            witness.push(*m);
            return true;
        }
        for m in moves {
            let next_w = self.apply(state, &m, q, w);
            let pruned = q.units.is_some() && next_w < q.one;
            if !pruned
                && self.seen.insert(state.to_vec().into_boxed_slice())
                && self.dfs(q, state, next_w, witness)
            {
                self.undo(state, &m);
                witness.push(m);
                return true;
            }
            self.undo(state, &m);
        }
        false
    }

    #[inline]
    fn apply(&self, state: &mut [u8], m: &Move, q: &Query, w: u128) -> u128 {
        match *m {
            Move::Pebbling { from, to } => {
                state[from] -= 2;
                state[to] += 1;
                match &q.units {
                    Some(u) => w - 2 * u[from] + u[to],
                    None => 0,
                }
            }
            Move::StrictRubbling { from1, from2, to } => {
                state[from1] -= 1;
                state[from2] -= 1;
                state[to] += 1;
                match &q.units {
                    Some(u) => w - u[from1] - u[from2] + u[to],
                    None => 0,
                }
            }
        }
    }

    #[inline]
    fn undo(&self, state: &mut [u8], m: &Move) {
        match *m {
            Move::Pebbling { from, to } => {
                state[from] += 2;
                state[to] -= 1;
            }
            Move::StrictRubbling { from1, from2, to } => {
                state[from1] += 1;
                state[from2] += 1;
                state[to] -= 1;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Solvability {
    pub solvable: bool,
    pub table: Vec<ReachResult>,
}

/// Decides reachability of every vertex, keeping the full table.
pub fn solvable(
    g: &Graph,
    p: &Distribution,
    sys: MoveSystem,
) -> Result<Solvability, DistributionError> {
    check_reach_input(g, p)?;
    let mut searcher = Searcher::new(g, sys, ReachOptions::default());
    let table: Vec<ReachResult> = (0..g.n()).map(|t| searcher.run(p, t)).collect();
    Ok(Solvability {
        solvable: table.iter().all(|r| r.reachable),
        table,
    })
}

/// Targets ordered by descending distance from the support vertex with the
/// largest weight; the likeliest failures come first.
pub(crate) fn probe_order(g: &Graph, p: &Distribution) -> Vec<usize> {
    let anchor = match ScaledWeights::new(g) {
        Some(sw) => p
            .iter_nonzero()
            .map(|(v, _)| (sw.at(p.counts(), v), std::cmp::Reverse(v)))
            .max()
            .map(|(_, std::cmp::Reverse(v))| v),
        None => p
            .iter_nonzero()
            .map(|(v, _)| (weight(g, p, v), std::cmp::Reverse(v)))
            .max()
            .map(|(_, std::cmp::Reverse(v))| v),
    };
    let mut order: Vec<usize> = (0..g.n()).collect();
    if let Some(a) = anchor {
        order.sort_by_key(|&v| (std::cmp::Reverse(g.dist(a, v)), v));
    }
    order
}
