//! Simple connected graphs with precomputed all-pairs distances, plus the
//! generators for the families used throughout the crate.

use std::collections::VecDeque;

use thiserror::Error;

use crate::vertex_set::VertexSet;

/// Default cap on the number of vertices any builder may produce.
pub const DEFAULT_VERTEX_BUDGET: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("{family} requires {requirement}, got {got}")]
    InvalidParameter {
        family: &'static str,
        requirement: &'static str,
        got: usize,
    },
    #[error("graph would have {requested} vertices, exceeding the budget of {budget}")]
    VertexBudget { requested: usize, budget: usize },
    #[error("non-simple graph: self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("non-simple graph: duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("edge endpoint {vertex} outside 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("disconnected graph: vertex {0} is unreachable from vertex 0")]
    Disconnected(usize),
}

/// Immutable simple connected graph on vertices `0..n`.
///
/// Labels are display metadata only; every algorithm works on indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    adj_bits: Vec<VertexSet>,
    labels: Vec<Vec<String>>,
    dist: Vec<u16>,
    diameter: usize,
}

impl Graph {
    /// Validates an edge list and precomputes distances.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let labels = (0..n).map(|i| vec![i.to_string()]).collect();
        Self::with_labels(n, edges, labels)
    }

    pub(crate) fn with_labels(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        labels: Vec<Vec<String>>,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if n > u16::MAX as usize {
            return Err(GraphError::VertexBudget {
                requested: n,
                budget: u16::MAX as usize,
            });
        }
        debug_assert_eq!(labels.len(), n);
        let mut adj_bits = vec![VertexSet::empty(n); n];
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { vertex, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if adj_bits[u].contains(v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj_bits[u].insert(v);
            adj_bits[v].insert(u);
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }

        let mut dist = vec![u16::MAX; n * n];
        let mut queue = VecDeque::with_capacity(n);
        for s in 0..n {
            let row = &mut dist[s * n..(s + 1) * n];
            row[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let du = row[u];
                for &w in &adj[u] {
                    if row[w] == u16::MAX {
                        row[w] = du + 1;
                        queue.push_back(w);
                    }
                }
            }
            if let Some(unreached) = row.iter().position(|&d| d == u16::MAX) {
                return Err(GraphError::Disconnected(unreached));
            }
        }
        let diameter = dist.iter().copied().max().unwrap_or(0) as usize;

        Ok(Self {
            n,
            adj,
            adj_bits,
            labels,
            dist,
            diameter,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn neighbor_set(&self, v: usize) -> &VertexSet {
        &self.adj_bits[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj_bits[u].contains(v)
    }

    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> usize {
        self.dist[u * self.n + v] as usize
    }

    /// Row of the distance table for `u`.
    pub fn dist_row(&self, u: usize) -> &[u16] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    pub fn eccentricity(&self, v: usize) -> usize {
        self.dist_row(v).iter().copied().max().unwrap_or(0) as usize
    }

    pub fn radius(&self) -> usize {
        (0..self.n).map(|v| self.eccentricity(v)).min().unwrap_or(0)
    }

    /// Display label: a single component as-is, a tuple as `(a,b,c)`.
    pub fn label(&self, v: usize) -> String {
        let parts = &self.labels[v];
        if parts.len() == 1 {
            parts[0].clone()
        } else {
            format!("({})", parts.join(","))
        }
    }

    pub(crate) fn label_parts(&self, v: usize) -> &[String] {
        &self.labels[v]
    }

    pub fn degree_histogram(&self) -> Vec<(usize, usize)> {
        let mut degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        degrees.sort_unstable();
        histogram(degrees)
    }

    /// Number of ordered vertex pairs at each distance `0..=diameter`.
    pub fn distance_histogram(&self) -> Vec<usize> {
        let mut counts = vec![0; self.diameter + 1];
        for &d in &self.dist {
            counts[d as usize] += 1;
        }
        counts
    }

    /// Vertices within distance `k` of `v`.
    pub fn ball(&self, v: usize, k: usize) -> VertexSet {
        VertexSet::from_indices(
            self.n,
            self.dist_row(v)
                .iter()
                .enumerate()
                .filter(|(_, &d)| d as usize <= k)
                .map(|(u, _)| u),
        )
    }

    /// `N[S]`: the set together with every vertex adjacent to it.
    pub fn closed_neighborhood(&self, s: &VertexSet) -> VertexSet {
        let mut out = s.clone();
        for v in s.iter() {
            out.union_with(&self.adj_bits[v]);
        }
        out
    }

    /// `N(S) = N[S] \ S`.
    pub fn open_neighborhood(&self, s: &VertexSet) -> VertexSet {
        let mut out = self.closed_neighborhood(s);
        out.difference_with(s);
        out
    }
}

fn histogram(sorted: Vec<usize>) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for d in sorted {
        match out.last_mut() {
            Some((value, count)) if *value == d => *count += 1,
            _ => out.push((d, 1)),
        }
    }
    out
}

fn check_budget(requested: Option<usize>, budget: usize) -> Result<usize, GraphError> {
    match requested {
        Some(r) if r <= budget => Ok(r),
        Some(r) => Err(GraphError::VertexBudget {
            requested: r,
            budget,
        }),
        None => Err(GraphError::VertexBudget {
            requested: usize::MAX,
            budget,
        }),
    }
}

pub fn build_complete(m: usize) -> Result<Graph, GraphError> {
    if m == 0 {
        return Err(GraphError::InvalidParameter {
            family: "complete",
            requirement: "m >= 1",
            got: m,
        });
    }
    check_budget(Some(m), DEFAULT_VERTEX_BUDGET)?;
    let edges = (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v)));
    Graph::from_edges(m, edges)
}

pub fn build_path(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidParameter {
            family: "path",
            requirement: "n >= 1",
            got: n,
        });
    }
    check_budget(Some(n), DEFAULT_VERTEX_BUDGET)?;
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
}

pub fn build_cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParameter {
            family: "cycle",
            requirement: "n >= 3",
            got: n,
        });
    }
    check_budget(Some(n), DEFAULT_VERTEX_BUDGET)?;
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
}

/// `G □ H` with vertex `(a, b)` at index `a * |H| + b`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    cartesian_product_with_budget(g, h, DEFAULT_VERTEX_BUDGET)
}

pub fn cartesian_product_with_budget(
    g: &Graph,
    h: &Graph,
    budget: usize,
) -> Result<Graph, GraphError> {
    let nh = h.n();
    let n = check_budget(g.n().checked_mul(nh), budget)?;
    let mut edges = Vec::with_capacity(g.n() * h.edge_count() + nh * g.edge_count());
    for a in 0..g.n() {
        for (b, b2) in h.edges() {
            edges.push((a * nh + b, a * nh + b2));
        }
    }
    for (a, a2) in g.edges() {
        for b in 0..nh {
            edges.push((a * nh + b, a2 * nh + b));
        }
    }
    let labels = (0..n)
        .map(|i| {
            let mut parts = g.label_parts(i / nh).to_vec();
            parts.extend_from_slice(h.label_parts(i % nh));
            parts
        })
        .collect();
    Graph::with_labels(n, edges, labels)
}

/// Words of length `k` over an `m`-letter alphabet, adjacent when they
/// differ in exactly one position.
pub fn build_hamming(m: usize, k: usize) -> Result<Graph, GraphError> {
    build_hamming_with_budget(m, k, DEFAULT_VERTEX_BUDGET)
}

pub fn build_hamming_with_budget(m: usize, k: usize, budget: usize) -> Result<Graph, GraphError> {
    if m == 0 {
        return Err(GraphError::InvalidParameter {
            family: "hamming",
            requirement: "alphabet size m >= 1",
            got: m,
        });
    }
    if k == 0 {
        return Err(GraphError::InvalidParameter {
            family: "hamming",
            requirement: "word length k >= 1",
            got: k,
        });
    }
    let exp = u32::try_from(k).ok();
    let n = check_budget(exp.and_then(|e| m.checked_pow(e)), budget)?;

    let word = |mut idx: usize| {
        let mut letters = vec![0; k];
        for slot in letters.iter_mut().rev() {
            *slot = idx % m;
            idx /= m;
        }
        letters
    };
    let mut edges = Vec::new();
    let mut place = 1;
    for _ in 0..k {
        // changing the letter at the position with weight `place`
        for u in 0..n {
            let letter = (u / place) % m;
            for other in letter + 1..m {
                edges.push((u, u + (other - letter) * place));
            }
        }
        place *= m;
    }
    let labels = (0..n)
        .map(|i| word(i).into_iter().map(|c| c.to_string()).collect())
        .collect();
    Graph::with_labels(n, edges, labels)
}
