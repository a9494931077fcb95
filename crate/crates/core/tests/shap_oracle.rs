//! Validates the fast Shapley path recursion against the exhaustive
//! coalition-sum oracle on randomized tree ensembles, and checks local
//! accuracy end to end on a trained model.

use orbitlink::boost::{BoostedModel, Hyperparameters, TreeNode};
use orbitlink::shap::{check_local_accuracy, exhaustive_shapley, sample_background, tree_shap};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_tree(rng: &mut ChaCha8Rng, width: usize, depth_left: usize) -> TreeNode {
    if depth_left == 0 || rng.gen_bool(0.3) {
        return TreeNode::Leaf {
            weight: rng.gen_range(-2.0..2.0),
            cover: 1.0,
        };
    }
    TreeNode::Internal {
        feature: rng.gen_range(0..width),
        threshold: rng.gen_range(-1.0..1.0),
        left: Box::new(random_tree(rng, width, depth_left - 1)),
        right: Box::new(random_tree(rng, width, depth_left - 1)),
        cover: 1.0,
    }
}

fn random_model(rng: &mut ChaCha8Rng) -> BoostedModel {
    let width = rng.gen_range(2..=10usize);
    let tree_count = rng.gen_range(1..=5usize);
    let trees = (0..tree_count)
        .map(|_| random_tree(rng, width, 3))
        .collect();
    BoostedModel {
        feature_names: (0..width).map(|i| format!("f{i}")).collect(),
        base_score: rng.gen_range(-1.0..1.0),
        learning_rate: rng.gen_range(0.05..1.0),
        trees,
        training_log: Vec::new(),
    }
}

fn random_rows(rng: &mut ChaCha8Rng, count: usize, width: usize) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| (0..width).map(|_| rng.gen_range(-1.5..1.5)).collect())
        .collect()
}

#[test]
fn path_recursion_matches_exhaustive_enumeration_on_random_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    for case in 0..20 {
        let model = random_model(&mut rng);
        let width = model.width();
        let background_rows = rng.gen_range(1..=8usize);
        let background = random_rows(&mut rng, background_rows, width);
        let samples = random_rows(&mut rng, 3, width);
        let report = tree_shap(&model, &samples, &background).unwrap();
        for (i, sample) in samples.iter().enumerate() {
            let oracle = exhaustive_shapley(&model, sample, &background).unwrap();
            for feature in 0..width {
                let fast = report.per_sample[i][feature];
                let slow = oracle[feature];
                assert!(
                    (fast - slow).abs() <= 1e-9,
                    "case {case}, sample {i}, feature {feature}: \
                     fast {fast} vs oracle {slow}"
                );
            }
        }
        check_local_accuracy(&model, &samples, &report, 1e-9).unwrap();
    }
}

#[test]
fn trained_model_attributions_reconstruct_margins() {
    let mut rng = ChaCha8Rng::seed_from_u64(515);
    let width = 6;
    let weights: Vec<f64> = (0..width).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let make = |rng: &mut ChaCha8Rng, rows: usize| -> (Vec<Vec<f64>>, Vec<u8>) {
        loop {
            let features: Vec<Vec<f64>> = (0..rows)
                .map(|_| (0..width).map(|_| rng.gen_range(-2.0..2.0)).collect())
                .collect();
            let labels: Vec<u8> = features
                .iter()
                .map(|row| {
                    let score: f64 = row.iter().zip(&weights).map(|(x, w)| x * w).sum();
                    u8::from(score > 0.0)
                })
                .collect();
            let positives = labels.iter().filter(|&&l| l == 1).count();
            if positives > 0 && positives < rows {
                return (features, labels);
            }
        }
    };
    let (train_x, train_y) = make(&mut rng, 150);
    let (valid_x, valid_y) = make(&mut rng, 60);
    let names: Vec<String> = (0..width).map(|i| format!("f{i}")).collect();
    let params = Hyperparameters {
        max_trees: 30,
        early_stopping_rounds: 5,
        ..Hyperparameters::default()
    };
    let model =
        BoostedModel::train(&names, &train_x, &train_y, &valid_x, &valid_y, &params).unwrap();

    let background = sample_background(&train_x, 25, 7);
    let samples = random_rows(&mut rng, 12, width);
    let report = tree_shap(&model, &samples, &background).unwrap();
    check_local_accuracy(&model, &samples, &report, 1e-6).unwrap();
    for (abs, signed) in report.mean_abs.iter().zip(&report.mean_signed) {
        assert!(*abs >= signed.abs() - 1e-15);
    }
}

#[test]
fn attributions_do_not_depend_on_thread_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let model = random_model(&mut rng);
    let width = model.width();
    let background = random_rows(&mut rng, 6, width);
    let samples = random_rows(&mut rng, 10, width);
    let reports: Vec<String> = [1usize, 4]
        .iter()
        .map(|&threads| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            let report = pool.install(|| tree_shap(&model, &samples, &background).unwrap());
            serde_json::to_string(&report).unwrap()
        })
        .collect();
    assert_eq!(reports[0], reports[1]);
}
