//! Upper and lower bounds on the optimal pebbling and rubbling numbers.
//!
//! All lower bounds are driven by distance domination numbers: with fewer
//! than `γ_{k-1}` pebbles some vertex lies at distance `k` from the support
//! and so carries weight below one.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use serde::Serialize;
use thiserror::Error;

use crate::domination::gamma;
use crate::graph::Graph;

/// Largest `k` (and diameter) for which `2^k` fits in a `u64`.
pub const MAX_EXPONENT: usize = 63;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("{bound} requires k >= {min}, got {k}")]
    KTooSmall {
        bound: &'static str,
        min: usize,
        k: usize,
    },
    #[error("2^{0} does not fit in 64 bits")]
    ExponentTooLarge(usize),
    #[error("{0} requires a graph with at least one edge")]
    Edgeless(&'static str),
}

fn pow2(e: usize) -> Result<u64, BoundsError> {
    if e > MAX_EXPONENT {
        return Err(BoundsError::ExponentTooLarge(e));
    }
    Ok(1u64 << e)
}

fn require_k(bound: &'static str, min: usize, k: usize) -> Result<(), BoundsError> {
    if k < min {
        return Err(BoundsError::KTooSmall { bound, min, k });
    }
    pow2(k).map(|_| ())
}

/// `2^diam(g)`: all pebbles on one vertex always solve.
pub fn diameter_upper_bound(g: &Graph) -> Result<u64, BoundsError> {
    pow2(g.diameter())
}

/// `min(γ_{k-1}, 2^k)`, a lower bound on the optimal rubbling number.
pub fn thm3_from_gammas(k: usize, gamma_km1: u64) -> Result<u64, BoundsError> {
    require_k("thm3", 2, k)?;
    Ok(gamma_km1.min(pow2(k)?))
}

/// `min(2^k, max(⌈γ_{k-1}/2⌉ + 2^{k-2}, γ_{k-1}), γ_{k-2})`.
///
/// The half term is rounded up; the optimum is an integer, so the ceiling of
/// a rational lower bound is still a lower bound.
pub fn thm5_from_gammas(k: usize, gamma_km1: u64, gamma_km2: u64) -> Result<u64, BoundsError> {
    require_k("thm5", 2, k)?;
    let half_plus = gamma_km1.div_ceil(2) + pow2(k - 2)?;
    Ok(pow2(k)?.min(half_plus.max(gamma_km1)).min(gamma_km2))
}

/// `min(2^k, γ_{k-1} + 2^{k-2}, γ_{k-2} + 1)`, the first pebbling bound
/// before the case analysis that adds one to the middle term.
pub fn mid_from_gammas(k: usize, gamma_km1: u64, gamma_km2: u64) -> Result<u64, BoundsError> {
    require_k("thm4_mid", 3, k)?;
    Ok(pow2(k)?.min(gamma_km1 + pow2(k - 2)?).min(gamma_km2 + 1))
}

/// `min(2^k, γ_{k-1} + 2^{k-2} + 1, γ_{k-2} + 1)`.
pub fn thm6_from_gammas(k: usize, gamma_km1: u64, gamma_km2: u64) -> Result<u64, BoundsError> {
    require_k("thm6", 3, k)?;
    Ok(pow2(k)?
        .min(gamma_km1 + pow2(k - 2)? + 1)
        .min(gamma_km2 + 1))
}

/// Memoised `γ_k` values for one graph.
pub struct GammaCache<'g> {
    g: &'g Graph,
    values: BTreeMap<usize, u64>,
}

impl<'g> GammaCache<'g> {
    pub fn new(g: &'g Graph) -> Self {
        Self {
            g,
            values: BTreeMap::new(),
        }
    }

    pub fn get(&mut self, k: usize) -> u64 {
        let g = self.g;
        *self
            .values
            .entry(k)
            .or_insert_with(|| gamma(g, k).gamma as u64)
    }
}

pub fn thm3_lower_bound(g: &Graph, k: usize) -> Result<u64, BoundsError> {
    require_k("thm3", 2, k)?;
    thm3_from_gammas(k, gamma(g, k - 1).gamma as u64)
}

pub fn thm5_rubbling_lower_bound(g: &Graph, k: usize) -> Result<u64, BoundsError> {
    require_k("thm5", 2, k)?;
    let mut cache = GammaCache::new(g);
    thm5_from_gammas(k, cache.get(k - 1), cache.get(k - 2))
}

pub fn thm4_mid_lower_bound(g: &Graph, k: usize) -> Result<u64, BoundsError> {
    require_k("thm4_mid", 3, k)?;
    if g.edge_count() == 0 {
        return Err(BoundsError::Edgeless("thm4_mid"));
    }
    let mut cache = GammaCache::new(g);
    mid_from_gammas(k, cache.get(k - 1), cache.get(k - 2))
}

pub fn thm6_pebbling_lower_bound(g: &Graph, k: usize) -> Result<u64, BoundsError> {
    require_k("thm6", 3, k)?;
    if g.edge_count() == 0 {
        return Err(BoundsError::Edgeless("thm6"));
    }
    let mut cache = GammaCache::new(g);
    thm6_from_gammas(k, cache.get(k - 1), cache.get(k - 2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub k: usize,
    pub gamma_k_minus_1: Option<u64>,
    pub gamma_k_minus_2: Option<u64>,
    pub thm3_rubbling_lb: Option<u64>,
    pub thm5_rubbling_lb: Option<u64>,
    pub thm4_mid_pebbling_lb: Option<u64>,
    pub thm6_pebbling_lb: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub graph: String,
    pub n: usize,
    pub diameter: usize,
    pub diameter_ub: u64,
    pub rows: Vec<BoundRow>,
    pub best_rubbling_lb: u64,
    pub best_rubbling_k: Option<usize>,
    pub best_pebbling_lb: u64,
    pub best_pebbling_k: Option<usize>,
    pub rounding: &'static str,
}

/// Evaluates every applicable bound for each `k` in `ks`. Rows keep the
/// literal formula values even where a theorem is weak for that `k`.
pub fn best_bounds(
    g: &Graph,
    graph_id: &str,
    ks: RangeInclusive<usize>,
) -> Result<BoundReport, BoundsError> {
    let mut cache = GammaCache::new(g);
    best_bounds_cached(g, graph_id, ks, &mut cache)
}

pub fn best_bounds_cached(
    g: &Graph,
    graph_id: &str,
    ks: RangeInclusive<usize>,
    cache: &mut GammaCache<'_>,
) -> Result<BoundReport, BoundsError> {
    let diameter_ub = diameter_upper_bound(g)?;
    let has_edge = g.edge_count() > 0;
    let mut rows = Vec::new();
    for k in ks {
        if k >= 2 {
            pow2(k)?;
        }
        let gamma_k_minus_1 = (k >= 1).then(|| cache.get(k - 1));
        let gamma_k_minus_2 = (k >= 2).then(|| cache.get(k - 2));
        let mut row = BoundRow {
            k,
            gamma_k_minus_1,
            gamma_k_minus_2,
            thm3_rubbling_lb: None,
            thm5_rubbling_lb: None,
            thm4_mid_pebbling_lb: None,
            thm6_pebbling_lb: None,
        };
        if let (Some(g1), Some(g2)) = (gamma_k_minus_1, gamma_k_minus_2) {
            row.thm3_rubbling_lb = Some(thm3_from_gammas(k, g1)?);
            row.thm5_rubbling_lb = Some(thm5_from_gammas(k, g1, g2)?);
            if k >= 3 && has_edge {
                row.thm4_mid_pebbling_lb = Some(mid_from_gammas(k, g1, g2)?);
                row.thm6_pebbling_lb = Some(thm6_from_gammas(k, g1, g2)?);
            }
        }
        rows.push(row);
    }

    // first k attaining the maximum
    let best = |values: &mut dyn Iterator<Item = (usize, u64)>| {
        values.fold((1u64, None), |(lb, at), (k, v)| {
            if v > lb || (at.is_none() && v >= lb) {
                (v, Some(k))
            } else {
                (lb, at)
            }
        })
    };
    let (best_rubbling_lb, best_rubbling_k) = best(&mut rows.iter().flat_map(|r| {
        [r.thm3_rubbling_lb, r.thm5_rubbling_lb]
            .into_iter()
            .flatten()
            .map(move |v| (r.k, v))
    }));
    let (pebbling_only, pebbling_only_k) = best(&mut rows.iter().flat_map(|r| {
        [r.thm4_mid_pebbling_lb, r.thm6_pebbling_lb]
            .into_iter()
            .flatten()
            .map(move |v| (r.k, v))
    }));
    let (best_pebbling_lb, best_pebbling_k) = if pebbling_only > best_rubbling_lb {
        (pebbling_only, pebbling_only_k)
    } else {
        (best_rubbling_lb, best_rubbling_k)
    };

    Ok(BoundReport {
        graph: graph_id.to_string(),
        n: g.n(),
        diameter: g.diameter(),
        diameter_ub,
        rows,
        best_rubbling_lb,
        best_rubbling_k,
        best_pebbling_lb,
        best_pebbling_k,
        rounding: "ceil",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_complete, build_path, cartesian_product};

    #[test]
    fn diameter_bound() {
        assert_eq!(diameter_upper_bound(&build_complete(7).unwrap()), Ok(2));
        assert_eq!(diameter_upper_bound(&build_path(5).unwrap()), Ok(16));
        assert_eq!(diameter_upper_bound(&build_complete(1).unwrap()), Ok(1));
    }

    #[test]
    fn formulas() {
        assert_eq!(thm3_from_gammas(2, 4), Ok(4));
        assert_eq!(thm3_from_gammas(3, 1), Ok(1));
        assert_eq!(thm3_from_gammas(4, 100), Ok(16));
        // complete-graph view at k = 2: min(4, max(n/2 + 1, n), n) = min(4, n)
        for n in 1..10 {
            assert_eq!(thm5_from_gammas(2, n, n), Ok(n.min(4)));
        }
        assert_eq!(thm5_from_gammas(3, 1000, 1000), Ok(8));
        assert_eq!(thm5_from_gammas(2, 4, 16), Ok(4));
        // the half term rounds up: max(⌈5/2⌉ + 4, 5) = 7
        assert_eq!(thm5_from_gammas(4, 5, 100), Ok(7));
        assert_eq!(thm6_from_gammas(3, 3, 6), Ok(6));
        assert_eq!(mid_from_gammas(3, 3, 6), Ok(5));
        assert!(thm6_from_gammas(5, 40, 1).unwrap() <= 2);
    }

    #[test]
    fn k_validation() {
        assert_eq!(
            thm3_from_gammas(1, 3),
            Err(BoundsError::KTooSmall {
                bound: "thm3",
                min: 2,
                k: 1
            })
        );
        assert!(thm5_from_gammas(1, 3, 3).is_err());
        assert!(thm6_from_gammas(2, 3, 3).is_err());
        assert_eq!(
            thm3_from_gammas(64, 3),
            Err(BoundsError::ExponentTooLarge(64))
        );
        let k1 = build_complete(1).unwrap();
        assert_eq!(
            thm6_pebbling_lower_bound(&k1, 3),
            Err(BoundsError::Edgeless("thm6"))
        );
    }

    #[test]
    fn k4_square() {
        let k4 = build_complete(4).unwrap();
        let g = cartesian_product(&k4, &k4).unwrap();
        assert_eq!(thm3_lower_bound(&g, 2), Ok(4));
        assert_eq!(thm5_rubbling_lower_bound(&g, 2), Ok(4));
    }

    #[test]
    fn report_selects_first_maximum() {
        let k4 = build_complete(4).unwrap();
        let g = cartesian_product(&k4, &k4).unwrap();
        let r = best_bounds(&g, "k4k4", 1..=4).unwrap();
        assert_eq!(r.rows.len(), 4);
        assert_eq!(r.rows[0].thm3_rubbling_lb, None);
        assert_eq!((r.best_rubbling_lb, r.best_rubbling_k), (4, Some(2)));
        assert!(r.best_pebbling_lb >= r.best_rubbling_lb);
        assert_eq!(r.diameter_ub, 4);
    }
}
