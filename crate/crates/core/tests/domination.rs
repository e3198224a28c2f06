mod common;

use pebblelab::domination::{gamma, is_distance_k_dominating};
use pebblelab::graph::{build_complete, build_hamming, cartesian_product};
use pebblelab::VertexSet;

/// All `r`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

#[test]
fn solver_matches_subset_enumeration() {
    let mut r = common::rng(21);
    let mut graphs = common::suite();
    for n in 9..=12 {
        graphs.push(common::random_connected(&mut r, n, 0.15));
    }
    for g in &graphs {
        for k in 0..=g.diameter() {
            let c = gamma(g, k);
            assert_eq!(c.gamma, common::naive_gamma(g, k), "k={k}");
            assert!(c.verify(g));
            // lexicographically smallest among minimum sets
            let first = combinations(g.n(), c.gamma)
                .into_iter()
                .find(|s| is_distance_k_dominating(g, &common::subset(g.n(), s), k))
                .unwrap();
            assert_eq!(c.set.to_vec(), first);
        }
    }
}

#[test]
fn gamma_is_monotone_and_one_iff_small_eccentricity() {
    for g in common::suite() {
        let values: Vec<usize> = (0..=g.diameter() + 1).map(|k| gamma(&g, k).gamma).collect();
        assert!(values.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(values[0], g.n());
        for (k, &v) in values.iter().enumerate() {
            let has_center = (0..g.n()).any(|u| g.eccentricity(u) <= k);
            assert_eq!(v == 1, has_center);
        }
    }
}

#[test]
fn hamming_domination_values() {
    for (m, k) in [(2, 2), (3, 2), (4, 2), (5, 2), (3, 3)] {
        let g = build_hamming(m, k).unwrap();
        let c = gamma(&g, k - 1);
        assert_eq!(c.gamma, m, "m={m} k={k}");
        assert!(c.proved_optimal);
        // constant words
        let constants: Vec<usize> = (0..m)
            .map(|c| (0..k).fold(0, |acc, _| acc * m + c))
            .collect();
        assert!(is_distance_k_dominating(
            &g,
            &common::subset(g.n(), &constants),
            k - 1
        ));
    }
}

#[test]
fn pigeonhole_subsets_fail() {
    for m in 2..=4 {
        let g = build_hamming(m, 2).unwrap();
        for s in combinations(g.n(), m - 1) {
            assert!(!is_distance_k_dominating(&g, &common::subset(g.n(), &s), 1));
        }
    }
}

#[test]
fn complete_graphs_and_products() {
    for m in 1..=6 {
        let km = build_complete(m).unwrap();
        for k in 1..4 {
            assert_eq!(gamma(&km, k).gamma, 1);
        }
    }
    let k3 = build_complete(3).unwrap();
    let k5 = build_complete(5).unwrap();
    let g = cartesian_product(&cartesian_product(&k3, &k3).unwrap(), &k5).unwrap();
    assert_eq!(gamma(&g, 2).gamma, 3);
    assert_eq!(gamma(&g, 3).gamma, 1);
    let g1 = gamma(&g, 1);
    assert!(g1.gamma >= 5);
    assert!(g1.verify(&g));
    assert!(!is_distance_k_dominating(&g, &VertexSet::empty(45), 3));
}
