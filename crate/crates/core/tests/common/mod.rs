//! Independent oracles and generators shared by the integration suites.
//!
//! Nothing here calls into the memoised search: the oracles work directly
//! from the move definitions so they can cross-check it.

#![allow(dead_code)]

use pebblelab::graph::Graph;
use pebblelab::pebble::{apply_move, Distribution, Move, MoveSystem};
use pebblelab::search::{optimal_number, SearchOptions};
use pebblelab::VertexSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SUITE_SEED: u64 = 0x5eed_2024;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random connected graph: a random spanning tree plus each remaining pair
/// with probability `density`.
pub fn random_connected(rng: &mut impl Rng, n: usize, density: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        edges.push((parent.min(order[i]), parent.max(order[i])));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("spanning tree keeps the graph connected")
}

/// The seeded suite: 200 connected graphs on 4..=8 vertices.
pub fn suite() -> Vec<Graph> {
    let mut r = rng(SUITE_SEED);
    (0..200)
        .map(|_| {
            let n = r.gen_range(4..=8);
            let density = r.gen_range(0.0..0.6);
            random_connected(&mut r, n, density)
        })
        .collect()
}

/// Every move defined on the graph, valid or not under `p`'s counts.
fn all_moves(g: &Graph, sys: MoveSystem) -> Vec<Move> {
    let mut moves = Vec::new();
    for (u, v) in g.edges() {
        moves.push(Move::Pebbling { from: u, to: v });
        moves.push(Move::Pebbling { from: v, to: u });
    }
    if sys == MoveSystem::Rubbling {
        for to in 0..g.n() {
            let nb = g.neighbors(to);
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    moves.push(Move::StrictRubbling {
                        from1: a,
                        from2: b,
                        to,
                    });
                }
            }
        }
    }
    moves
}

/// Reachability by enumerating every executable move sequence, with no
/// memoisation and no pruning.
pub fn naive_reachable(g: &Graph, p: &Distribution, target: usize, sys: MoveSystem) -> bool {
    let moves = all_moves(g, sys);
    fn go(g: &Graph, p: &Distribution, target: usize, moves: &[Move]) -> bool {
        if p.count(target) >= 1 {
            return true;
        }
        moves.iter().any(|m| match apply_move(g, p, m) {
            Ok(next) => go(g, &next, target, moves),
            Err(_) => false,
        })
    }
    go(g, p, target, &moves)
}

pub fn naive_solvable(g: &Graph, p: &Distribution, sys: MoveSystem) -> bool {
    (0..g.n()).all(|t| naive_reachable(g, p, t, sys))
}

/// All count vectors of `size` pebbles over `n` vertices.
pub fn all_distributions(n: usize, size: u32) -> Vec<Distribution> {
    fn go(n: usize, i: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Distribution>) {
        if i + 1 == n {
            cur.push(rem);
            out.push(Distribution::from_counts(cur.clone()));
            cur.pop();
            return;
        }
        for c in 0..=rem {
            cur.push(c);
            go(n, i + 1, rem - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 0, size, &mut Vec::new(), &mut out);
    out
}

pub fn random_distribution(rng: &mut impl Rng, n: usize, size: u32) -> Distribution {
    let mut p = Distribution::empty(n);
    for _ in 0..size {
        p.add(rng.gen_range(0..n), 1);
    }
    p
}

/// Smallest `s` such that some `s`-subset dominates at radius `k`, by
/// trying every subset.
pub fn naive_gamma(g: &Graph, k: usize) -> usize {
    let n = g.n();
    assert!(n <= 20);
    let mut best = n;
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let dominated = (0..n).all(|v| (0..n).any(|u| mask & (1 << u) != 0 && g.dist(u, v) <= k));
        if dominated {
            best = size;
        }
    }
    best
}

pub fn subset(n: usize, members: &[usize]) -> VertexSet {
    VertexSet::from_indices(n, members.iter().copied())
}

/// Exact optimum with theorem seeding and enumeration filters switched off.
pub fn brute_force_optimum(g: &Graph, sys: MoveSystem) -> u64 {
    let opts = SearchOptions {
        use_theorems: false,
        filters: false,
        ..SearchOptions::default()
    };
    optimal_number(g, sys, &opts)
        .expect("small graphs finish")
        .value
}
