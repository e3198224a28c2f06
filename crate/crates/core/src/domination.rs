//! Exact distance-k domination numbers.
//!
//! Domination is treated as set cover: each vertex contributes its ball of
//! radius `k`, stored as a bitset. Set sizes are tried in ascending order and
//! each size is decided by a depth-first search over vertex subsets in
//! lexicographic order, so the first dominating set found is the
//! lexicographically smallest of minimum size.

use serde::Serialize;

use crate::graph::Graph;
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowerBoundProof {
    /// Every smaller set was ruled out by the search.
    ExhaustedAllSmaller,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominationCertificate {
    pub k: usize,
    pub gamma: usize,
    pub set: VertexSet,
    pub proved_optimal: bool,
    pub lower_bound_proof: LowerBoundProof,
}

impl DominationCertificate {
    /// Re-checks the witness set against `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        self.set.len() == self.gamma && is_distance_k_dominating(g, &self.set, self.k)
    }
}

pub fn is_distance_k_dominating(g: &Graph, s: &VertexSet, k: usize) -> bool {
    (0..g.n()).all(|v| {
        let row = g.dist_row(v);
        s.iter().any(|u| row[u] as usize <= k)
    })
}

/// Returns `γ_k(g)` with a lexicographically smallest minimum witness.
pub fn gamma(g: &Graph, k: usize) -> DominationCertificate {
    let n = g.n();
    let certificate = |set: VertexSet| DominationCertificate {
        k,
        gamma: set.len(),
        set,
        proved_optimal: true,
        lower_bound_proof: LowerBoundProof::ExhaustedAllSmaller,
    };
    if k == 0 {
        return certificate(VertexSet::full(n));
    }
    if let Some(center) = (0..n).find(|&v| g.eccentricity(v) <= k) {
        return certificate(VertexSet::from_indices(n, [center]));
    }

    let cover = BallCover::new(g, k);
    // no set smaller than n / (largest ball) can cover n vertices
    let mut size = n.div_ceil(cover.max_ball).max(2);
    loop {
        if let Some(set) = cover.find(size) {
            return certificate(set);
        }
        size += 1;
    }
}

/// Does some set of exactly `size` vertices dominate at radius `k`?
pub fn dominating_set_of_size(g: &Graph, k: usize, size: usize) -> Option<VertexSet> {
    if size == 0 {
        return None;
    }
    if size >= g.n() {
        return Some(VertexSet::full(g.n()));
    }
    let cover = BallCover::new(g, k);
    cover.find(size).map(|mut set| {
        // pad with the smallest unused vertices
        for v in 0..g.n() {
            if set.len() == size {
                break;
            }
            set.insert(v);
        }
        set
    })
}

struct BallCover {
    n: usize,
    balls: Vec<VertexSet>,
    /// Largest index inside each ball: the last candidate able to cover it.
    last_cover: Vec<usize>,
    max_ball: usize,
}

impl BallCover {
    fn new(g: &Graph, k: usize) -> Self {
        let n = g.n();
        let balls: Vec<VertexSet> = (0..n).map(|v| g.ball(v, k)).collect();
        let last_cover = (0..n)
            .map(|v| (0..n).rev().find(|&u| g.dist(u, v) <= k).unwrap_or(v))
            .collect();
        let max_ball = balls.iter().map(VertexSet::len).max().unwrap_or(1);
        Self {
            n,
            balls,
            last_cover,
            max_ball,
        }
    }

    /// Lexicographically smallest set of at most `size` vertices covering
    /// everything, if one exists.
    fn find(&self, size: usize) -> Option<VertexSet> {
        let mut chosen = Vec::with_capacity(size);
        let covered = VertexSet::empty(self.n);
        self.extend(0, size, &covered, &mut chosen)
            .then(|| VertexSet::from_indices(self.n, chosen))
    }

    fn extend(
        &self,
        start: usize,
        picks: usize,
        covered: &VertexSet,
        chosen: &mut Vec<usize>,
    ) -> bool {
        let undominated = self.n - covered.len();
        if undominated == 0 {
            return true;
        }
        if picks == 0 || picks * self.max_ball < undominated {
            return false;
        }
        // every undominated vertex needs a pick no later than its last cover
        let limit = (0..self.n)
            .filter(|&v| !covered.contains(v))
            .map(|v| self.last_cover[v])
            .min()
            .unwrap_or(self.n - 1);
        let mut next = covered.clone();
        for v in start..=limit {
            let ball = &self.balls[v];
            // a pick adding nothing cannot belong to a minimum set
            if ball.is_subset(covered) {
                continue;
            }
            next.clone_from(covered);
            next.union_with(ball);
            chosen.push(v);
            if self.extend(v + 1, picks - 1, &next, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_complete, build_cycle, build_hamming, build_path};

    #[test]
    fn trivial_cases() {
        let p4 = build_path(4).unwrap();
        assert!(is_distance_k_dominating(&p4, &VertexSet::full(4), 0));
        assert!(!is_distance_k_dominating(
            &p4,
            &VertexSet::from_indices(4, [0, 1, 2]),
            0
        ));
        assert_eq!(gamma(&p4, 0).gamma, 4);
        for m in 1..6 {
            let c = gamma(&build_complete(m).unwrap(), 1);
            assert_eq!(c.gamma, 1);
            assert_eq!(c.set.to_vec(), vec![0]);
        }
    }

    #[test]
    fn paths_and_cycles() {
        let c = gamma(&build_path(7).unwrap(), 1);
        assert_eq!(c.gamma, 3);
        assert_eq!(c.set.to_vec(), vec![0, 2, 5]);
        assert!(c.verify(&build_path(7).unwrap()));
        assert_eq!(gamma(&build_cycle(9).unwrap(), 1).gamma, 3);
        assert_eq!(gamma(&build_cycle(10).unwrap(), 2).gamma, 2);
    }

    #[test]
    fn constant_words_dominate() {
        let g = build_hamming(3, 2).unwrap();
        // aa, bb, cc
        let constants = VertexSet::from_indices(9, [0, 4, 8]);
        assert!(is_distance_k_dominating(&g, &constants, 1));
    }

    #[test]
    fn fixed_size_query() {
        let g = build_path(7).unwrap();
        assert!(dominating_set_of_size(&g, 1, 2).is_none());
        let s = dominating_set_of_size(&g, 1, 4).unwrap();
        assert_eq!(s.len(), 4);
        assert!(is_distance_k_dominating(&g, &s, 1));
    }
}
