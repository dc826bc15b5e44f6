use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::Rng;

use hubnet::bench::{dataset_seed, time_series_split, Model};
use hubnet::netmetrics::{
    clustering_coefficient, degree_summary, heterogeneity_cv, louvain_partition, modularity,
    node_degrees, CommunityAssignment, VisitOrder,
};
use hubnet::reservoir::{fit_readout, ReadoutOptions};
use hubnet::seed::rng_from_seed;
use hubnet::tasks::{
    make_one_step_dataset, mnist_sequences, narma10, MnistData, NarmaConfig, Task,
};
use hubnet::{Esn, EsnConfig, Injection, Network, PruneMode, StateMatrix, TopologyConfig};

fn topology_strategy() -> impl Strategy<Value = TopologyConfig> {
    (
        2usize..60,
        0.01f64..=1.0,
        0.0f64..4.0,
        0.0f64..4.0,
        (0.0f64..1.0, 0.0f64..1.0, 0.0f64..1.0),
        any::<bool>(),
        any::<u64>(),
    )
        .prop_map(
            |(n, density, alpha, beta, (dc, nc, reg), hub, seed)| TopologyConfig {
                n,
                density,
                alpha,
                beta,
                lambda_dc: dc,
                lambda_nc: nc,
                lambda_reg: reg + 1e-3,
                mode: if hub {
                    PruneMode::Hub
                } else {
                    PruneMode::Random
                },
                seed,
                ..Default::default()
            },
        )
}

fn small_esn(n: usize, injection: Injection, seed: u64) -> Esn {
    let mut cfg = EsnConfig::default();
    cfg.topology.n = n;
    cfg.topology.mode = match injection {
        Injection::Hub => PruneMode::Hub,
        Injection::Random => PruneMode::Random,
    };
    cfg.injection = injection;
    cfg.seed = seed;
    Esn::new(&cfg).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn exact_density_and_handshake(cfg in topology_strategy()) {
        let net = Network::generate(&cfg).unwrap();
        let total = cfg.n * (cfg.n - 1);
        prop_assert_eq!(net.edge_count(), (cfg.density * total as f64).round() as usize);
        prop_assert!((0..cfg.n).all(|i| net.weights[(i, i)] == 0.0));
        prop_assert_eq!(Network::generate(&cfg).unwrap(), net.clone());

        // degree counts both endpoints of every directed edge
        let deg = node_degrees(&net);
        prop_assert_eq!(deg.0.iter().sum::<usize>(), 2 * net.edge_count());
    }

    #[test]
    fn modularity_and_clustering_bounds(cfg in topology_strategy()) {
        let net = Network::generate(&cfg).unwrap();
        let c = clustering_coefficient(&net);
        prop_assert!((0.0..=1.0).contains(&c));
        if net.edge_count() > 0 {
            let one = CommunityAssignment(vec![0; cfg.n]);
            prop_assert!(modularity(&net, &one).unwrap().abs() < 1e-12);
            let labels = louvain_partition(&net, VisitOrder::Ascending);
            prop_assert!(modularity(&net, &labels).unwrap() >= -1e-12);
        }
    }

    #[test]
    fn states_stay_in_open_unit_interval(
        seed in any::<u64>(),
        n in 20usize..60,
        amp in 0.1f64..=1.0,
        hub in any::<bool>(),
    ) {
        let esn = small_esn(n, if hub { Injection::Hub } else { Injection::Random }, seed);
        let mut rng = rng_from_seed(seed);
        let inputs = DMatrix::from_fn(60, 1, |_, _| rng.random_range(-amp..amp));
        let s0 = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
        let s = esn.harvest(&inputs, &s0).unwrap();
        prop_assert!(s.0.iter().all(|v| v.abs() < 1.0));
    }

    #[test]
    fn hub_mask_dominates_unmasked_degrees(seed in any::<u64>(), n in 20usize..80) {
        let esn = small_esn(n, Injection::Hub, seed);
        let deg = esn.degrees();
        let masked = esn.input_indices().iter().map(|&i| deg.0[i]).min().unwrap();
        let rest = esn.non_input_indices().iter().map(|&i| deg.0[i]).max().unwrap_or(0);
        prop_assert!(masked >= rest);
    }

    #[test]
    fn readout_is_a_least_squares_minimum(seed in any::<u64>(), n in 3usize..30, extra in 0usize..40) {
        let mut rng = rng_from_seed(seed);
        let t = n + extra + 1;
        let s = DMatrix::from_fn(t, n, |_, _| rng.random_range(-1.0..1.0));
        let y = DMatrix::from_fn(t, 1, |_, _| rng.random_range(-1.0..1.0));
        let r = fit_readout(&StateMatrix(s.clone()), &y, ReadoutOptions::default()).unwrap();
        let mse = |w: &DMatrix<f64>| (&s * w - &y).norm_squared() / t as f64;
        let best = mse(&r.w_out);
        for _ in 0..20 {
            let mut d = DMatrix::from_fn(n, 1, |_, _| rng.random_range(-1.0..1.0));
            d /= d.norm();
            for sign in [1e-3, -1e-3] {
                prop_assert!(mse(&(&r.w_out + &d * sign)) >= best);
            }
        }
    }

    #[test]
    fn one_step_datasets_shift_by_one(
        series in prop::collection::vec(-1.0f64..1.0, 3..200),
        frac in 0.0f64..1.0,
    ) {
        let pairs = series.len() - 1;
        let n_train = ((pairs as f64 * frac) as usize).clamp(1, pairs - 1);
        let (train, test) = make_one_step_dataset(&series, n_train, pairs - n_train).unwrap();
        let inputs: Vec<f64> = train.inputs.iter().chain(test.inputs.iter()).copied().collect();
        let targets: Vec<f64> = train.targets.iter().chain(test.targets.iter()).copied().collect();
        for t in 0..pairs - 1 {
            prop_assert_eq!(inputs[t + 1], targets[t]);
        }
    }

    #[test]
    fn narma_series_are_bounded(seed in any::<u64>(), length in 10usize..2000) {
        let cfg = NarmaConfig { length, seed, ..Default::default() };
        let s = narma10(&cfg, &mut rng_from_seed(seed)).unwrap();
        prop_assert!(s.x.iter().all(|v| v.abs() <= 1e3));
    }

    #[test]
    fn mnist_sequences_reassemble_the_image(
        pixels in prop::collection::vec(0u8..=255, 784 * 3),
        labels in prop::collection::vec(0u8..10, 3),
    ) {
        let data = MnistData {
            pixels: pixels.iter().map(|&p| p as f64 / 255.0).collect(),
            labels,
        };
        let seqs = mnist_sequences(&data, &[2, 0, 1]).unwrap();
        for (seq, &img) in seqs.iter().zip(&[2usize, 0, 1]) {
            prop_assert_eq!(seq.label, data.labels[img]);
            for col in 0..28 {
                for row in 0..28 {
                    prop_assert_eq!(seq.inputs[(col, row)].to_bits(), data.pixel(img, row, col).to_bits());
                }
            }
        }
    }
}

#[test]
fn random_mask_ignores_degree() {
    let mut z = Vec::new();
    for seed in 0..100 {
        let esn = small_esn(100, Injection::Random, seed);
        let deg = esn.degrees().as_f64();
        let n = deg.len() as f64;
        let pop_mean = deg.iter().sum::<f64>() / n;
        let pop_var = deg.iter().map(|d| (d - pop_mean).powi(2)).sum::<f64>() / n;
        let k = esn.input_indices().len() as f64;
        // sampling without replacement
        let se = (pop_var / k * (n - k) / (n - 1.0)).sqrt();
        let masked = esn.input_indices().iter().map(|&i| deg[i]).sum::<f64>() / k;
        z.push((masked - pop_mean) / se);
    }
    let mean_z = z.iter().sum::<f64>() / z.len() as f64;
    // the mean of 100 standardized draws has standard error 0.1
    assert!(mean_z.abs() < 2.0 * 0.1, "mean z {mean_z}");
}

#[test]
fn hub_degrees_are_right_skewed() {
    let mut positive = 0;
    for seed in 0..10 {
        let cfg = TopologyConfig {
            n: 300,
            seed,
            ..Default::default()
        };
        let deg = node_degrees(&Network::generate(&cfg).unwrap());
        let summary = degree_summary(&deg);
        assert!(summary.log_mean.is_finite() && summary.log_sd.is_finite());
        let logs: Vec<f64> = deg
            .0
            .iter()
            .filter(|&&d| d > 0)
            .map(|&d| (d as f64).ln())
            .collect();
        let m = logs.iter().sum::<f64>() / logs.len() as f64;
        let sd = (logs.iter().map(|v| (v - m).powi(2)).sum::<f64>() / logs.len() as f64).sqrt();
        let skew = logs.iter().map(|v| ((v - m) / sd).powi(3)).sum::<f64>() / logs.len() as f64;
        assert!(skew.is_finite());
        if summary.skewness > 0.0 {
            positive += 1;
        }
    }
    assert!(positive >= 9, "{positive}/10");
}

#[test]
fn regularizer_only_pruning_approaches_random_cv() {
    let cvs = |mode: PruneMode, lambdas: (f64, f64, f64)| -> Vec<f64> {
        (0..10)
            .map(|seed| {
                let cfg = TopologyConfig {
                    n: 200,
                    lambda_dc: lambdas.0,
                    lambda_nc: lambdas.1,
                    lambda_reg: lambdas.2,
                    mode,
                    seed,
                    ..Default::default()
                };
                heterogeneity_cv(&node_degrees(&Network::generate(&cfg).unwrap())).unwrap()
            })
            .collect()
    };
    let stats = |v: &[f64]| {
        let m = v.iter().sum::<f64>() / v.len() as f64;
        (
            m,
            (v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / v.len() as f64).sqrt(),
        )
    };
    let (reg_mean, reg_sd) = stats(&cvs(PruneMode::Hub, (0.0, 0.0, 1.0)));
    let (rnd_mean, rnd_sd) = stats(&cvs(PruneMode::Random, (0.5, 0.5, 0.0)));
    let (hub_mean, _) = stats(&cvs(PruneMode::Hub, (0.5, 0.5, 0.0)));
    assert!(
        (reg_mean - rnd_mean).abs() <= 2.0 * reg_sd.max(rnd_sd),
        "regularizer CV {reg_mean} vs random {rnd_mean}"
    );
    assert!(hub_mean > reg_mean + 2.0 * reg_sd);
}

#[test]
fn models_share_the_trial_dataset() {
    for task in [Task::MackeyGlass, Task::Narma10] {
        for trial in 0..3 {
            let seed = dataset_seed(5, task, 300, trial);
            let a = time_series_split(task, 300, 100, seed).unwrap();
            let b = time_series_split(task, 300, 100, seed).unwrap();
            assert_eq!(a, b);
        }
    }
    assert_ne!(Model::Esn.id(), Model::HubEsn.id());
}
