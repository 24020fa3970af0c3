mod common;

use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toposom::spectral::SpectralError;
use toposom::*;

fn assert_close(a: &[f64], b: &[f64], tol: f64) {
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(b) {
        assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
    }
}

#[test]
fn oracle_closed_forms() {
    let one = SymMatrix::from_row_major(1, vec![-2.75]).unwrap();
    assert_eq!(char_poly_roots_oracle(&one).unwrap(), vec![-2.75]);
    let k3 = adjacency(&Graph::complete(3).unwrap());
    assert_close(&char_poly_roots_oracle(&k3).unwrap(), &[2.0, -1.0, -1.0], 1e-12);
    let root17 = 17f64.sqrt();
    assert_eq!(char_poly(&adjacency(&graph_a())), vec![0.0, -4.0, -5.0, 0.0, 1.0]);
    assert_close(
        &char_poly_roots_oracle(&adjacency(&graph_a())).unwrap(),
        &[(1.0 + root17) / 2.0, 0.0, -1.0, (1.0 - root17) / 2.0],
        1e-12,
    );
    assert_eq!(char_poly_roots_oracle(&SymMatrix::zeros(7)), Err(DimensionTooLarge(7)));
}

#[test]
fn jacobi_matches_oracle_on_small_graphs() {
    for n in 1..=4 {
        for g in all_graphs(n) {
            let jacobi = signature_of(&g).unwrap();
            let oracle = char_poly_roots_oracle(&adjacency(&g)).unwrap();
            assert_close(jacobi.values(), &oracle, 1e-8);
        }
    }
}

#[test]
fn complete_graph_spectra() {
    for n in [3usize, 4, 5, 10] {
        let sig = signature_of(&Graph::complete(n).unwrap()).unwrap();
        let mut expect = vec![-1.0; n];
        expect[0] = (n - 1) as f64;
        assert_close(sig.values(), &expect, 1e-9);
    }
}

#[test]
fn nonsymmetric_input_is_rejected() {
    assert!(matches!(
        SymMatrix::from_row_major(3, vec![0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0]),
        Err(SpectralError::NotSymmetric(1, 2))
    ));
}

fn family_graph(kind: u8, n: usize, seed: u64) -> Graph {
    match kind % 3 {
        0 => gen_regular(n, if n % 2 == 0 { 3 } else { 4 }, Seed(seed)).unwrap(),
        1 => gen_random(n, 0.2, Seed(seed)).unwrap(),
        _ => gen_scale_free(n, 2, Seed(seed)).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn signature_is_permutation_invariant(kind in 0u8..3, n in 6usize..30, seed in any::<u64>(), pseed in any::<u64>()) {
        let g = family_graph(kind, n, seed);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(pseed));
        let a = signature_of(&g).unwrap();
        let b = signature_of(&g.permute(&perm).unwrap()).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn spectral_identities(kind in 0u8..3, n in 6usize..30, seed in any::<u64>()) {
        let g = family_graph(kind, n, seed);
        let sig = signature_of(&g).unwrap();
        let deg = g.degree_sequence();
        let avg = deg.iter().sum::<usize>() as f64 / n as f64;
        let max = *deg.iter().max().unwrap() as f64;
        prop_assert!(sig.values().windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(sig.trace().abs() <= 1e-9 * n as f64);
        prop_assert!(avg <= sig.largest() + 1e-9);
        prop_assert!(sig.largest() <= max + 1e-9);
        if kind % 3 == 0 {
            prop_assert!((sig.largest() - deg[0] as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn jacobi_matches_oracle_on_five_nodes(mask in 0u32..1024) {
        let g = &all_graphs(5)[mask as usize];
        let jacobi = signature_of(g).unwrap();
        let oracle = char_poly_roots_oracle(&adjacency(g)).unwrap();
        for (x, y) in jacobi.values().iter().zip(&oracle) {
            prop_assert!((x - y).abs() < 1e-8, "{:?} vs {:?}", jacobi.values(), oracle);
        }
    }

    #[test]
    fn jacobi_on_dense_symmetric_matrices(entries in prop::collection::vec(-5.0f64..5.0, 21)) {
        // 6×6 from the upper triangle
        let mut m = SymMatrix::zeros(6);
        let mut k = 0;
        for i in 0..6 {
            for j in i..6 {
                m.set(i, j, entries[k]);
                k += 1;
            }
        }
        let jacobi = eigenvalues(&m).unwrap();
        let oracle = char_poly_roots_oracle(&m).unwrap();
        for (x, y) in jacobi.values().iter().zip(&oracle) {
            prop_assert!((x - y).abs() < 1e-6);
        }
        let trace: f64 = (0..6).map(|i| m.get(i, i)).sum();
        prop_assert!((jacobi.trace() - trace).abs() < 1e-9);
    }
}
