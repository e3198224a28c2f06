//! Pebble distributions, pebbling and strict rubbling moves, and the
//! distance-weighted potential of a distribution.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dyadic::Dyadic;
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("vertex {vertex} outside 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid pebbling move {from}->{to}: vertices are not adjacent")]
    NotAdjacent { from: usize, to: usize },
    #[error("invalid rubbling move: both sources are vertex {0}")]
    SameSource(usize),
    #[error("move {0} is not allowed under the current distribution")]
    NotAllowed(Move),
    #[error("strict rubbling move {0} is not available under pebbling-only moves")]
    WrongSystem(Move),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DistributionError {
    #[error("distribution covers {got} vertices but the graph has {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("distribution holds {0} pebbles; reachability search supports at most 255")]
    TooManyPebbles(u64),
    #[error("vertex {vertex} outside 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// Nonnegative pebble counts indexed by vertex, with the total cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Distribution {
    counts: Vec<u32>,
    size: u64,
}

impl Distribution {
    pub fn empty(n: usize) -> Self {
        Self {
            counts: vec![0; n],
            size: 0,
        }
    }

    pub fn from_counts(counts: Vec<u32>) -> Self {
        let size = counts.iter().map(|&c| u64::from(c)).sum();
        Self { counts, size }
    }

    /// `count` pebbles on a single vertex.
    pub fn single(n: usize, vertex: usize, count: u32) -> Self {
        let mut p = Self::empty(n);
        p.add(vertex, count);
        p
    }

    pub fn n(&self) -> usize {
        self.counts.len()
    }

    /// Total pebble count `|P|`.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn count(&self, v: usize) -> u32 {
        self.counts[v]
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn add(&mut self, v: usize, count: u32) {
        self.counts[v] += count;
        self.size += u64::from(count);
    }

    pub fn iter_nonzero(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(v, &c)| (v, c))
    }

    /// Vertices holding at least one pebble.
    pub fn support(&self) -> VertexSet {
        VertexSet::from_indices(self.n(), self.iter_nonzero().map(|(v, _)| v))
    }

    /// `P|_S`: keeps the counts on `s`, zero elsewhere.
    pub fn restrict(&self, s: &VertexSet) -> Distribution {
        Self::from_counts(
            self.counts
                .iter()
                .enumerate()
                .map(|(v, &c)| if s.contains(v) { c } else { 0 })
                .collect(),
        )
    }

    pub(crate) fn check_graph(&self, g: &Graph) -> Result<(), DistributionError> {
        if self.n() != g.n() {
            return Err(DistributionError::SizeMismatch {
                expected: g.n(),
                got: self.n(),
            });
        }
        Ok(())
    }
}

impl Serialize for Distribution {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Distribution", 2)?;
        s.serialize_field("size", &self.size)?;
        s.serialize_field("counts", &self.counts)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for Distribution {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            counts: Vec<u32>,
        }
        Raw::deserialize(deserializer).map(|raw| Distribution::from_counts(raw.counts))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveSystem {
    PebblingOnly,
    Rubbling,
}

impl MoveSystem {
    pub fn name(self) -> &'static str {
        match self {
            MoveSystem::PebblingOnly => "pebbling",
            MoveSystem::Rubbling => "rubbling",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Move {
    /// Two pebbles leave `from`, one arrives at the neighbor `to`.
    Pebbling { from: usize, to: usize },
    /// One pebble leaves each of `from1` and `from2`, one arrives at their
    /// common neighbor `to`.
    #[serde(rename = "rubbling")]
    StrictRubbling {
        from1: usize,
        from2: usize,
        to: usize,
    },
}

impl Move {
    pub fn to(&self) -> usize {
        match *self {
            Move::Pebbling { to, .. } | Move::StrictRubbling { to, .. } => to,
        }
    }

    pub fn validate(&self, g: &Graph) -> Result<(), MoveError> {
        let n = g.n();
        let in_range = |vertex: usize| {
            if vertex < n {
                Ok(())
            } else {
                Err(MoveError::VertexOutOfRange { vertex, n })
            }
        };
        let adjacent = |from: usize, to: usize| {
            if g.is_adjacent(from, to) {
                Ok(())
            } else {
                Err(MoveError::NotAdjacent { from, to })
            }
        };
        match *self {
            Move::Pebbling { from, to } => {
                in_range(from)?;
                in_range(to)?;
                adjacent(from, to)
            }
            Move::StrictRubbling { from1, from2, to } => {
                in_range(from1)?;
                in_range(from2)?;
                in_range(to)?;
                if from1 == from2 {
                    return Err(MoveError::SameSource(from1));
                }
                adjacent(from1, to)?;
                adjacent(from2, to)
            }
        }
    }
}

impl std::fmt::Display for Move {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Move::Pebbling { from, to } => write!(f, "{from}->{to}"),
            Move::StrictRubbling { from1, from2, to } => write!(f, "{from1}+{from2}->{to}"),
        }
    }
}

/// Whether `m` may be executed under `p`. Structurally invalid moves are an
/// error, distinct from `Ok(false)`.
pub fn is_allowed(
    g: &Graph,
    p: &Distribution,
    m: &Move,
    sys: MoveSystem,
) -> Result<bool, MoveError> {
    m.validate(g)?;
    Ok(match *m {
        Move::Pebbling { from, .. } => p.count(from) >= 2,
        Move::StrictRubbling { from1, from2, .. } => {
            sys == MoveSystem::Rubbling && p.count(from1) >= 1 && p.count(from2) >= 1
        }
    })
}

/// Executes one move, returning the new distribution.
pub fn apply_move(g: &Graph, p: &Distribution, m: &Move) -> Result<Distribution, MoveError> {
    if !is_allowed(g, p, m, MoveSystem::Rubbling)? {
        return Err(MoveError::NotAllowed(*m));
    }
    let mut counts = p.counts.clone();
    match *m {
        Move::Pebbling { from, to } => {
            counts[from] -= 2;
            counts[to] += 1;
        }
        Move::StrictRubbling { from1, from2, to } => {
            counts[from1] -= 1;
            counts[from2] -= 1;
            counts[to] += 1;
        }
    }
    Ok(Distribution {
        counts,
        size: p.size - 1,
    })
}

/// Replays a move sequence under `sys`, failing on the first move that is
/// invalid or not allowed.
pub fn replay(
    g: &Graph,
    p: &Distribution,
    moves: &[Move],
    sys: MoveSystem,
) -> Result<Distribution, MoveError> {
    let mut cur = p.clone();
    for m in moves {
        if !is_allowed(g, &cur, m, sys)? {
            return Err(
                if matches!(m, Move::StrictRubbling { .. }) && sys == MoveSystem::PebblingOnly {
                    MoveError::WrongSystem(*m)
                } else {
                    MoveError::NotAllowed(*m)
                },
            );
        }
        cur = apply_move(g, &cur, m)?;
    }
    Ok(cur)
}

/// Exact `W_P(u) = sum_v P(v) 2^-d(u,v)`.
pub fn weight(g: &Graph, p: &Distribution, u: usize) -> Dyadic {
    let row = g.dist_row(u);
    let den = p
        .iter_nonzero()
        .map(|(v, _)| u32::from(row[v]))
        .max()
        .unwrap_or(0);
    let num = p.iter_nonzero().fold(BigUint::from(0u32), |acc, (v, c)| {
        acc + (BigUint::from(c) << (den - u32::from(row[v])))
    });
    Dyadic::new(num, den)
}

/// Largest diameter for which weights fit the fixed-point `u128` fast path.
pub(crate) const FAST_WEIGHT_MAX_DIAMETER: usize = 64;

/// Weight at each target scaled by `2^diam`, as integers. `None` when the
/// graph is too deep for the fixed-point representation.
pub(crate) struct ScaledWeights<'g> {
    g: &'g Graph,
    shift: u32,
}

impl<'g> ScaledWeights<'g> {
    pub(crate) fn new(g: &'g Graph) -> Option<Self> {
        (g.diameter() <= FAST_WEIGHT_MAX_DIAMETER).then(|| Self {
            g,
            shift: g.diameter() as u32,
        })
    }

    /// Value of `W = 1` on the scaled axis.
    #[inline]
    pub(crate) fn one(&self) -> u128 {
        1u128 << self.shift
    }

    /// Scaled contribution of one pebble on `v` to the weight at `target`.
    #[inline]
    pub(crate) fn unit(&self, target: usize, v: usize) -> u128 {
        1u128 << (self.shift - self.g.dist(target, v) as u32)
    }

    pub(crate) fn at<C: Copy + Into<u128>>(&self, counts: &[C], target: usize) -> u128 {
        let row = self.g.dist_row(target);
        counts
            .iter()
            .zip(row)
            .map(|(&c, &d)| c.into() << (self.shift - u32::from(d)))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_complete, build_path};

    #[test]
    fn support_and_restrict() {
        assert!(Distribution::empty(4).support().is_empty());
        let p = Distribution::single(4, 2, 2);
        assert_eq!(p.support().to_vec(), vec![2]);

        let p = Distribution::from_counts(vec![1, 0, 3, 2]);
        assert_eq!(p.restrict(&VertexSet::full(4)), p);
        assert_eq!(p.restrict(&VertexSet::empty(4)), Distribution::empty(4));
        assert_eq!(p.restrict(&p.support()), p);
        assert_eq!(p.restrict(&VertexSet::from_indices(4, [2])).size(), 3);
    }

    #[test]
    fn allowed_moves() {
        let p3 = build_path(3).unwrap();
        let two = Distribution::single(3, 0, 2);
        let m = Move::Pebbling { from: 0, to: 1 };
        assert_eq!(
            is_allowed(&p3, &two, &m, MoveSystem::PebblingOnly),
            Ok(true)
        );
        let one = Distribution::single(3, 0, 1);
        assert_eq!(is_allowed(&p3, &one, &m, MoveSystem::Rubbling), Ok(false));

        let ends = Distribution::from_counts(vec![1, 0, 1]);
        let r = Move::StrictRubbling {
            from1: 0,
            from2: 2,
            to: 1,
        };
        assert_eq!(
            is_allowed(&p3, &ends, &r, MoveSystem::PebblingOnly),
            Ok(false)
        );
        assert_eq!(is_allowed(&p3, &ends, &r, MoveSystem::Rubbling), Ok(true));
    }

    #[test]
    fn structural_errors_differ_from_not_allowed() {
        let p3 = build_path(3).unwrap();
        let p = Distribution::single(3, 0, 4);
        assert_eq!(
            is_allowed(
                &p3,
                &p,
                &Move::Pebbling { from: 0, to: 2 },
                MoveSystem::Rubbling
            ),
            Err(MoveError::NotAdjacent { from: 0, to: 2 })
        );
        assert_eq!(
            is_allowed(
                &p3,
                &p,
                &Move::StrictRubbling {
                    from1: 0,
                    from2: 0,
                    to: 1
                },
                MoveSystem::Rubbling
            ),
            Err(MoveError::SameSource(0))
        );
        assert!(matches!(
            apply_move(
                &p3,
                &Distribution::empty(3),
                &Move::Pebbling { from: 0, to: 1 }
            ),
            Err(MoveError::NotAllowed(_))
        ));
    }

    #[test]
    fn rubbling_sources_may_be_adjacent() {
        let k3 = build_complete(3).unwrap();
        let p = Distribution::from_counts(vec![1, 1, 0]);
        let r = Move::StrictRubbling {
            from1: 0,
            from2: 1,
            to: 2,
        };
        assert_eq!(is_allowed(&k3, &p, &r, MoveSystem::Rubbling), Ok(true));
    }

    #[test]
    fn applying_moves() {
        let k2 = build_complete(2).unwrap();
        let m = Move::Pebbling { from: 0, to: 1 };
        let p = apply_move(&k2, &Distribution::single(2, 0, 2), &m).unwrap();
        assert_eq!(p.counts(), &[0, 1]);

        let p = Distribution::single(2, 0, 4);
        let p = apply_move(&k2, &apply_move(&k2, &p, &m).unwrap(), &m).unwrap();
        assert_eq!((p.counts(), p.size()), (&[0, 2][..], 2));

        let p3 = build_path(3).unwrap();
        let r = Move::StrictRubbling {
            from1: 0,
            from2: 2,
            to: 1,
        };
        let p = apply_move(&p3, &Distribution::from_counts(vec![1, 0, 1]), &r).unwrap();
        assert_eq!((p.counts(), p.size()), (&[0, 1, 0][..], 1));
    }

    #[test]
    fn weights() {
        let p5 = build_path(5).unwrap();
        assert_eq!(
            weight(&p5, &Distribution::single(5, 2, 1), 2),
            Dyadic::one()
        );
        for k in 0..5 {
            let p = Distribution::single(5, k, 1 << k);
            assert_eq!(weight(&p5, &p, 0), Dyadic::one());
        }
        let p3 = build_path(3).unwrap();
        assert_eq!(
            weight(&p3, &Distribution::single(3, 0, 2), 2),
            Dyadic::new(1u32, 1)
        );
        assert_eq!(
            weight(&p3, &Distribution::single(3, 0, 3), 2),
            Dyadic::new(3u32, 2)
        );
        assert_eq!(weight(&p3, &Distribution::empty(3), 1), Dyadic::zero());
    }

    #[test]
    fn scaled_weights_agree_with_exact() {
        let p5 = build_path(5).unwrap();
        let sw = ScaledWeights::new(&p5).unwrap();
        let p = Distribution::from_counts(vec![3, 0, 1, 0, 5]);
        for t in 0..5 {
            let exact = weight(&p5, &p, t);
            let scaled = Dyadic::new(sw.at(p.counts(), t), p5.diameter() as u32);
            assert_eq!(exact, scaled);
        }
    }
}
