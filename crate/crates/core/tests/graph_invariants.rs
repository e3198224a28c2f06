mod common;

use pebblelab::format::{load_graph, save_graph};
use pebblelab::graph::{build_complete, build_cycle, build_hamming, build_path, cartesian_product};
use pebblelab::Graph;
use proptest::prelude::*;

fn small_graphs() -> Vec<Graph> {
    let mut out = vec![
        build_complete(1).unwrap(),
        build_complete(2).unwrap(),
        build_complete(3).unwrap(),
        build_path(4).unwrap(),
        build_cycle(5).unwrap(),
        build_path(6).unwrap(),
    ];
    let mut r = common::rng(7);
    for n in 3..=6 {
        out.push(common::random_connected(&mut r, n, 0.3));
    }
    out
}

#[test]
fn distances_agree_with_adjacency() {
    for g in common::suite().iter().chain(small_graphs().iter()) {
        for u in 0..g.n() {
            assert_eq!(g.dist(u, u), 0);
            for v in 0..g.n() {
                assert_eq!(g.dist(u, v), g.dist(v, u));
                assert_eq!(g.dist(u, v) == 1, g.is_adjacent(u, v));
                for w in 0..g.n() {
                    assert!(g.dist(u, w) <= g.dist(u, v) + g.dist(v, w));
                }
            }
        }
    }
}

#[test]
fn product_distance_is_additive() {
    let factors = small_graphs();
    for g in &factors {
        for h in &factors {
            let gh = cartesian_product(g, h).unwrap();
            let nh = h.n();
            for x in 0..gh.n() {
                for y in 0..gh.n() {
                    let expected = g.dist(x / nh, y / nh) + h.dist(x % nh, y % nh);
                    assert_eq!(gh.dist(x, y), expected);
                }
            }
        }
    }
}

fn product_power(m: usize, k: usize) -> Graph {
    let km = build_complete(m).unwrap();
    (1..k).fold(km.clone(), |acc, _| cartesian_product(&acc, &km).unwrap())
}

#[test]
fn hamming_matches_complete_power() {
    for m in 1..=8usize {
        for k in 1..=6usize {
            if m.pow(k as u32) > 64 {
                continue;
            }
            let h = build_hamming(m, k).unwrap();
            let p = product_power(m, k);
            assert_eq!(h.n(), p.n());
            assert_eq!(h.degree_histogram(), p.degree_histogram(), "m={m} k={k}");
            assert_eq!(
                h.distance_histogram(),
                p.distance_histogram(),
                "m={m} k={k}"
            );
            assert!((0..h.n()).all(|v| h.degree(v) == k * (m - 1)));
        }
    }
}

#[test]
fn hamming_three_two_is_triangle_square() {
    let h = build_hamming(3, 2).unwrap();
    let p = product_power(3, 2);
    // index order is the same word order, so the relabeling is the identity
    assert_eq!(h.edges().collect::<Vec<_>>(), p.edges().collect::<Vec<_>>());
    for v in 0..9 {
        assert_eq!(h.label(v), p.label(v));
    }
}

#[test]
fn hamming_diameter_is_word_length() {
    for m in 2..=5 {
        for k in 1..=3 {
            assert_eq!(build_hamming(m, k).unwrap().diameter(), k, "m={m} k={k}");
        }
    }
}

proptest! {
    #[test]
    fn graph_files_round_trip(seed in any::<u64>(), n in 1usize..12, density in 0.0f64..1.0) {
        let mut r = common::rng(seed);
        let g = common::random_connected(&mut r, n, density);
        let back = load_graph(&save_graph(&g)).unwrap();
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        prop_assert!((0..n).all(|v| back.label(v) == g.label(v)));
    }
}
