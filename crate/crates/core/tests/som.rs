use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toposom::som::{neighborhood, squared_distance};
use toposom::*;

fn random_data(seed: u64, n: usize, dim: usize) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| (0..dim).map(|_| rng.gen_range(-10.0..10.0)).collect()).collect()
}

fn config_strategy() -> impl Strategy<Value = TrainConfig> {
    (1usize..40, 0.01f64..1.0, 0.0f64..1.0, 0.05f64..4.0, 0.0f64..1.0, any::<u64>(), 0.0f64..0.5).prop_map(
        |(epochs, alpha0, af, sigma0, sf, seed, jitter)| TrainConfig {
            epochs,
            alpha0,
            alpha_min: (alpha0 * af).max(1e-6),
            sigma0,
            sigma_min: (sigma0 * sf).max(1e-6),
            shuffle_seed: Seed(seed),
            init_jitter: jitter,
        },
    )
}

#[test]
fn well_separated_clusters_are_captured() {
    let centers = [(0.0, 0.0), (20.0, 0.0), (40.0, 0.0), (0.0, 20.0), (20.0, 20.0), (40.0, 20.0)];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let data: Vec<Vec<f64>> = centers
        .iter()
        .flat_map(|&(cx, cy)| {
            let pts: Vec<Vec<f64>> =
                (0..30).map(|_| vec![cx + rng.gen_range(-0.5..0.5), cy + rng.gen_range(-0.5..0.5)]).collect();
            pts
        })
        .collect();
    let cfg = TrainConfig { epochs: 300, shuffle_seed: Seed(2), ..Default::default() };
    let mut som = init_som(HexLattice::default(), &data, &cfg).unwrap();
    let initial = som.quantization_error(&data).unwrap();
    som.train(&data, &cfg).unwrap();
    let last = som.quantization_error(&data).unwrap();
    assert!(last < 0.1 * initial, "QE {initial} -> {last}");
    for &(cx, cy) in &centers {
        let near = som.weights().iter().any(|w| squared_distance(w, &[cx, cy]).sqrt() < 1.0);
        assert!(near, "no neuron near ({cx}, {cy})");
    }
}

#[test]
fn training_is_bitwise_deterministic() {
    let data = random_data(3, 50, 8);
    let cfg = TrainConfig { epochs: 25, shuffle_seed: Seed(9), ..Default::default() };
    let run = || {
        let mut som = init_som(HexLattice::default(), &data, &cfg).unwrap();
        let h = som.train(&data, &cfg).unwrap();
        (som, h)
    };
    let (a, ha) = run();
    let (b, hb) = run();
    assert_eq!(a, b);
    assert_eq!(ha.iter().map(|x| x.to_bits()).collect::<Vec<_>>(), hb.iter().map(|x| x.to_bits()).collect::<Vec<_>>());
}

#[test]
fn init_neurons_nearly_coincide() {
    let data = random_data(5, 200, 12);
    let som = init_som(HexLattice::default(), &data, &TrainConfig::default()).unwrap();
    let mean_norm = data.iter().map(|x| squared_distance(x, &vec![0.0; 12]).sqrt()).sum::<f64>() / 200.0;
    for a in som.weights() {
        for b in som.weights() {
            assert!(squared_distance(a, b).sqrt() <= 1e-3 * mean_norm);
        }
    }
    assert!(som.weights()[0] != som.weights()[1]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn schedules_are_monotone_with_floors(cfg in config_strategy()) {
        for t in 0..cfg.epochs {
            prop_assert!(cfg.alpha(t) >= cfg.alpha_min && cfg.alpha(t) <= cfg.alpha0);
            prop_assert!(cfg.sigma(t) >= cfg.sigma_min && cfg.sigma(t) <= cfg.sigma0);
            if t > 0 {
                prop_assert!(cfg.alpha(t) <= cfg.alpha(t - 1));
                prop_assert!(cfg.sigma(t) <= cfg.sigma(t - 1));
            }
        }
    }

    #[test]
    fn weights_stay_in_bounding_box(cfg in config_strategy(), dseed in any::<u64>(), n in 1usize..20) {
        let data = random_data(dseed, n, 3);
        let som0 = init_som(HexLattice::default(), &data, &cfg).unwrap();
        let mut som = som0.clone();
        som.train(&data, &cfg).unwrap();
        for k in 0..3 {
            let pool = data.iter().map(|x| x[k]).chain(som0.weights().iter().map(|w| w[k]));
            let (lo, hi) = pool.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| (l.min(v), h.max(v)));
            for w in som.weights() {
                prop_assert!(w[k] >= lo && w[k] <= hi);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn update_contracts_towards_sample(wseed in any::<u64>(), alpha in 0.05f64..=1.0, sigma in 0.3f64..3.0) {
        let weights = random_data(wseed, 6, 4);
        let x = random_data(wseed ^ 1, 1, 4).pop().unwrap();
        let mut som = Som::new(HexLattice::default(), weights.clone()).unwrap();
        let c = som.bmu(&x).unwrap();
        som.update(&x, alpha, sigma).unwrap();
        for j in 0..6 {
            let h = neighborhood(som.lattice_distance(j, c).unwrap(), sigma);
            prop_assert!(alpha * h <= 1.0);
            let (after, before) = (squared_distance(&som.weights()[j], &x), squared_distance(&weights[j], &x));
            if alpha * h < 1e-12 {
                // step is below the resolution of the weights
                prop_assert!(after <= before);
            } else {
                prop_assert!(after < before);
            }
        }
    }

    #[test]
    fn bmu_is_translation_invariant(wseed in any::<u64>(), shift in prop::collection::vec(-50.0f64..50.0, 4)) {
        let weights = random_data(wseed, 6, 4);
        let x = random_data(wseed ^ 2, 1, 4).pop().unwrap();
        let moved: Vec<Vec<f64>> = weights.iter().map(|w| w.iter().zip(&shift).map(|(a, b)| a + b).collect()).collect();
        let xs: Vec<f64> = x.iter().zip(&shift).map(|(a, b)| a + b).collect();
        let a = Som::new(HexLattice::default(), weights).unwrap();
        let b = Som::new(HexLattice::default(), moved).unwrap();
        prop_assert_eq!(a.bmu(&x).unwrap(), b.bmu(&xs).unwrap());
    }

    #[test]
    fn full_rate_update_hits_sample(wseed in any::<u64>()) {
        let weights = random_data(wseed, 6, 5);
        let x = random_data(wseed ^ 3, 1, 5).pop().unwrap();
        let mut som = Som::new(HexLattice::default(), weights).unwrap();
        let c = som.update(&x, 1.0, 0.25).unwrap();
        for (w, xi) in som.weights()[c].iter().zip(&x) {
            prop_assert!((w - xi).abs() <= f64::EPSILON * xi.abs().max(1.0));
        }
    }
}
