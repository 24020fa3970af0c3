use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toposom::*;

/// Degree multiset as a histogram.
fn degree_histogram(g: &Graph) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for d in g.degree_sequence() {
        *h.entry(d).or_insert(0) += 1;
    }
    h
}

#[test]
fn random_graph_edge_count_matches_binomial_mean() {
    let n = 56;
    let p = 4.0 / 55.0;
    let pairs = (n * (n - 1) / 2) as f64;
    let draws = 1000;
    let mean = (0..draws)
        .map(|s| gen_random(n, p, Seed(s)).unwrap().edge_count() as f64)
        .sum::<f64>()
        / draws as f64;
    let expected = pairs * p;
    assert!((expected - 112.0).abs() < 1e-9);
    // standard error of the sample mean of a Binomial(C(n,2), p)
    let se = (pairs * p * (1.0 - p) / draws as f64).sqrt();
    assert!((mean - expected).abs() < 3.0 * se, "mean {mean}, expected {expected} ± {}", 3.0 * se);
}

#[test]
fn scale_free_hubs_exceed_random_max_degree() {
    let max_deg = |g: Graph| *g.degree_sequence().iter().max().unwrap() as f64;
    let sf: f64 = (0..100).map(|s| max_deg(gen_scale_free(56, 2, Seed(s)).unwrap())).sum::<f64>() / 100.0;
    let er: f64 = (0..100).map(|s| max_deg(gen_random(56, 4.0 / 55.0, Seed(s)).unwrap())).sum::<f64>() / 100.0;
    assert!(sf > er, "scale-free mean max degree {sf} vs random {er}");
}

#[test]
fn regular_graphs_differ_across_seeds() {
    let a = gen_regular(56, 3, Seed(1)).unwrap();
    let b = gen_regular(56, 3, Seed(2)).unwrap();
    assert_ne!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn regular_degrees_are_exact(n in 5usize..60, r in 1usize..6, seed in any::<u64>()) {
        prop_assume!(r < n && (n * r) % 2 == 0);
        let g = gen_regular(n, r, Seed(seed)).unwrap();
        prop_assert!(g.degree_sequence().iter().all(|&d| d == r));
        prop_assert_eq!(g.edge_count(), n * r / 2);
    }

    #[test]
    fn handshake_and_determinism(kind in 0u8..3, n in 4usize..60, seed in any::<u64>()) {
        let make = || match kind {
            0 => gen_regular(n, 2, Seed(seed)),
            1 => gen_random(n, 0.1, Seed(seed)),
            _ => gen_scale_free(n, 2, Seed(seed)),
        };
        let g = make().unwrap();
        prop_assert_eq!(g.degree_sequence().iter().sum::<usize>(), 2 * g.edge_count());
        prop_assert_eq!(&make().unwrap(), &g);
        if kind == 2 {
            prop_assert_eq!(g.edge_count(), 3 + 2 * (n - 3));
        }
    }

    #[test]
    fn random_extremes(n in 1usize..40, seed in any::<u64>()) {
        prop_assert_eq!(gen_random(n, 1.0, Seed(seed)).unwrap().edge_count(), n * (n - 1) / 2);
        prop_assert_eq!(gen_random(n, 0.0, Seed(seed)).unwrap().edge_count(), 0);
    }

    #[test]
    fn permutation_preserves_edges_and_degrees(n in 2usize..40, seed in any::<u64>(), pseed in any::<u64>()) {
        let g = gen_random(n, 0.3, Seed(seed)).unwrap();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(pseed));
        let h = g.permute(&perm).unwrap();
        prop_assert_eq!(h.edge_count(), g.edge_count());
        prop_assert_eq!(degree_histogram(&h), degree_histogram(&g));
        for (a, b) in g.edges() {
            prop_assert!(h.has_edge(perm[a], perm[b]));
        }
    }
}
