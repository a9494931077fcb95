//! Exact Shapley attributions for boosted-tree predictions.
//!
//! Attributions use the interventional convention: a feature's contribution is
//! measured by swapping it between the explained sample and rows of a fixed
//! background set, on the margin (log-odds) scale. For a single tree each
//! (sample, background) pair is handled by a path recursion that tracks which
//! divergent features the path forces toward the sample (set A) or toward the
//! background row (set B); a leaf reached that way contributes its weight with
//! the exact Shapley coefficients `(|A|-1)!|B|!/(|A|+|B|)!` to the A features
//! and `-|A|!(|B|-1)!/(|A|+|B|)!` to the B features. Summing over trees,
//! scaling by the learning rate, and averaging over the background yields
//! attributions that satisfy local accuracy by construction.
//!
//! [`exhaustive_shapley`] computes the same quantity straight from the
//! coalition-sum definition in time `O(2^F)`; it exists so the fast recursion
//! can be checked against an independent oracle and it refuses models with
//! more than twelve features.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boost::{BoostedModel, TreeNode};
use crate::error::{Error, Result};
use crate::orbit::OrbitAtlas;

/// Largest feature count [`exhaustive_shapley`] will enumerate.
pub const EXHAUSTIVE_FEATURE_LIMIT: usize = 12;

/// Default number of background rows used to represent the data distribution.
pub const DEFAULT_BACKGROUND_SIZE: usize = 100;

/// Per-sample attributions plus their aggregates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapReport {
    /// Feature names in model order.
    pub feature_names: Vec<String>,
    /// One attribution vector per explained sample (samples x features).
    pub per_sample: Vec<Vec<f64>>,
    /// Mean model margin over the background rows; local accuracy reads
    /// `base_value + sum(per_sample[i]) == margin(sample i)`.
    pub base_value: f64,
    /// Per-feature mean absolute attribution, the importance score.
    pub mean_abs: Vec<f64>,
    /// Per-feature mean signed attribution.
    pub mean_signed: Vec<f64>,
    /// Number of background rows the attributions were averaged over.
    pub background_size: usize,
}

/// Importance shares of the five feature categories, each in `[0, 1]` and
/// summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryShares {
    /// `(category name, share of total mean-absolute attribution)` in the
    /// fixed category order.
    pub shares: Vec<(String, f64)>,
}

fn factorials(up_to: usize) -> Vec<f64> {
    let mut table = vec![1.0f64; up_to + 1];
    for i in 1..=up_to {
        table[i] = table[i - 1] * i as f64;
    }
    table
}

fn check_matrix(rows: &[Vec<f64>], width: usize, what: &str) -> Result<()> {
    for (i, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(Error::Shape(format!(
                "{what} row {i} has {} features, expected {width}",
                row.len()
            )));
        }
        if row.iter().any(|v| !v.is_finite()) {
            return Err(Error::Input(format!(
                "{what} row {i} contains a non-finite value"
            )));
        }
    }
    Ok(())
}

/// Draws up to `max_size` rows without replacement to serve as the
/// background set. Fewer rows than `max_size` are returned as-is.
pub fn sample_background(rows: &[Vec<f64>], max_size: usize, seed: u64) -> Vec<Vec<f64>> {
    use rand::Rng;
    use rand::SeedableRng;
    if rows.len() <= max_size {
        return rows.to_vec();
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut indices: Vec<usize> = (0..rows.len()).collect();
    for i in 0..max_size {
        let j = rng.gen_range(i..indices.len());
        indices.swap(i, j);
    }
    indices[..max_size]
        .iter()
        .map(|&i| rows[i].clone())
        .collect()
}

/// Walks one tree for one (sample, background) pair, adding the exact
/// per-feature contributions of every reachable leaf into `phi`.
fn walk_tree(
    node: &TreeNode,
    sample: &[f64],
    reference: &[f64],
    toward_sample: &mut Vec<usize>,
    toward_reference: &mut Vec<usize>,
    factorial: &[f64],
    phi: &mut [f64],
) {
    match node {
        TreeNode::Leaf { weight, .. } => {
            let a = toward_sample.len();
            let b = toward_reference.len();
            if a + b == 0 {
                return;
            }
            let denom = factorial[a + b];
            if a > 0 {
                let credit = weight * factorial[a - 1] * factorial[b] / denom;
                for &feature in toward_sample.iter() {
                    phi[feature] += credit;
                }
            }
            if b > 0 {
                let debit = weight * factorial[a] * factorial[b - 1] / denom;
                for &feature in toward_reference.iter() {
                    phi[feature] -= debit;
                }
            }
        }
        TreeNode::Internal {
            feature,
            threshold,
            left,
            right,
            ..
        } => {
            let child = |toward_left: bool| if toward_left { left } else { right };
            let sample_left = sample[*feature] < *threshold;
            let reference_left = reference[*feature] < *threshold;
            if sample_left == reference_left {
                walk_tree(
                    child(sample_left),
                    sample,
                    reference,
                    toward_sample,
                    toward_reference,
                    factorial,
                    phi,
                );
            } else if toward_sample.contains(feature) {
                walk_tree(
                    child(sample_left),
                    sample,
                    reference,
                    toward_sample,
                    toward_reference,
                    factorial,
                    phi,
                );
            } else if toward_reference.contains(feature) {
                walk_tree(
                    child(reference_left),
                    sample,
                    reference,
                    toward_sample,
                    toward_reference,
                    factorial,
                    phi,
                );
            } else {
                toward_sample.push(*feature);
                walk_tree(
                    child(sample_left),
                    sample,
                    reference,
                    toward_sample,
                    toward_reference,
                    factorial,
                    phi,
                );
                toward_sample.pop();
                toward_reference.push(*feature);
                walk_tree(
                    child(reference_left),
                    sample,
                    reference,
                    toward_sample,
                    toward_reference,
                    factorial,
                    phi,
                );
                toward_reference.pop();
            }
        }
    }
}

fn shap_for_sample(model: &BoostedModel, sample: &[f64], background: &[Vec<f64>]) -> Vec<f64> {
    let width = model.width();
    let factorial = factorials(width.max(1));
    let mut phi = vec![0.0f64; width];
    let mut toward_sample = Vec::with_capacity(width);
    let mut toward_reference = Vec::with_capacity(width);
    for reference in background {
        for tree in &model.trees {
            walk_tree(
                tree,
                sample,
                reference,
                &mut toward_sample,
                &mut toward_reference,
                &factorial,
                &mut phi,
            );
        }
    }
    let scale = model.learning_rate / background.len() as f64;
    for value in &mut phi {
        *value *= scale;
    }
    phi
}

/// Computes interventional Shapley attributions for every sample against the
/// given background set.
pub fn tree_shap(
    model: &BoostedModel,
    samples: &[Vec<f64>],
    background: &[Vec<f64>],
) -> Result<ShapReport> {
    let width = model.width();
    if background.is_empty() {
        return Err(Error::Input(
            "the background set must contain at least one row".into(),
        ));
    }
    check_matrix(samples, width, "sample")?;
    check_matrix(background, width, "background")?;

    let per_sample: Vec<Vec<f64>> = samples
        .par_iter()
        .map(|sample| shap_for_sample(model, sample, background))
        .collect();

    let mut base_value = 0.0;
    for reference in background {
        base_value += model.predict_margin(reference)?;
    }
    base_value /= background.len() as f64;

    let count = samples.len().max(1) as f64;
    let mut mean_abs = vec![0.0f64; width];
    let mut mean_signed = vec![0.0f64; width];
    for row in &per_sample {
        for (feature, &value) in row.iter().enumerate() {
            mean_abs[feature] += value.abs();
            mean_signed[feature] += value;
        }
    }
    for feature in 0..width {
        mean_abs[feature] /= count;
        mean_signed[feature] /= count;
    }

    Ok(ShapReport {
        feature_names: model.feature_names.clone(),
        per_sample,
        base_value,
        mean_abs,
        mean_signed,
        background_size: background.len(),
    })
}

/// Verifies local accuracy: for every sample, the base value plus the
/// attribution sum must reproduce the model margin within `tolerance`.
pub fn check_local_accuracy(
    model: &BoostedModel,
    samples: &[Vec<f64>],
    report: &ShapReport,
    tolerance: f64,
) -> Result<()> {
    if samples.len() != report.per_sample.len() {
        return Err(Error::Shape(format!(
            "{} samples but {} attribution rows",
            samples.len(),
            report.per_sample.len()
        )));
    }
    for (i, (sample, phi)) in samples.iter().zip(&report.per_sample).enumerate() {
        let margin = model.predict_margin(sample)?;
        let reconstructed = report.base_value + phi.iter().sum::<f64>();
        let gap = (margin - reconstructed).abs();
        if gap > tolerance {
            return Err(Error::Analysis(format!(
                "local accuracy violated at sample {i}: margin {margin} vs \
                 reconstruction {reconstructed} (gap {gap:e})"
            )));
        }
    }
    Ok(())
}

/// Shapley attributions for one sample straight from the coalition-sum
/// definition, averaging the model margin over the background inside every
/// coalition evaluation. Exponential in the feature count, so models wider
/// than [`EXHAUSTIVE_FEATURE_LIMIT`] are refused.
pub fn exhaustive_shapley(
    model: &BoostedModel,
    sample: &[f64],
    background: &[Vec<f64>],
) -> Result<Vec<f64>> {
    let width = model.width();
    if width > EXHAUSTIVE_FEATURE_LIMIT {
        return Err(Error::Input(format!(
            "exhaustive enumeration over {width} features is refused; \
             the limit is {EXHAUSTIVE_FEATURE_LIMIT}"
        )));
    }
    if background.is_empty() {
        return Err(Error::Input(
            "the background set must contain at least one row".into(),
        ));
    }
    check_matrix(std::slice::from_ref(&sample.to_vec()), width, "sample")?;
    check_matrix(background, width, "background")?;

    // Margin of every coalition: features inside the mask come from the
    // sample, the rest from the background row, averaged over the background.
    let mut coalition_value = vec![0.0f64; 1usize << width];
    let mut composite = vec![0.0f64; width];
    for (mask, value) in coalition_value.iter_mut().enumerate() {
        let mut total = 0.0;
        for reference in background {
            for feature in 0..width {
                composite[feature] = if mask & (1 << feature) != 0 {
                    sample[feature]
                } else {
                    reference[feature]
                };
            }
            total += model.predict_margin(&composite)?;
        }
        *value = total / background.len() as f64;
    }

    let factorial = factorials(width);
    let mut phi = vec![0.0f64; width];
    for feature in 0..width {
        let bit = 1usize << feature;
        for mask in 0..coalition_value.len() {
            if mask & bit != 0 {
                continue;
            }
            let size = (mask as u32).count_ones() as usize;
            let weight =
                factorial[size] * factorial[width - size - 1] / factorial[width];
            phi[feature] += weight * (coalition_value[mask | bit] - coalition_value[mask]);
        }
    }
    Ok(phi)
}

/// Collapses a report's per-feature importances into the five feature
/// categories. Every feature name must map to a category and the total
/// importance must be positive; the returned shares sum to one.
pub fn aggregate_importance(report: &ShapReport) -> Result<CategoryShares> {
    let atlas = OrbitAtlas::standard();
    let mut totals = vec![0.0f64; crate::orbit::FeatureCategory::ALL.len()];
    for (name, &importance) in report.feature_names.iter().zip(&report.mean_abs) {
        let category = atlas.feature_category(name).ok_or_else(|| {
            Error::Analysis(format!(
                "feature {name} does not belong to any orbit category"
            ))
        })?;
        let slot = crate::orbit::FeatureCategory::ALL
            .iter()
            .position(|c| c == &category)
            .expect("category is one of the five");
        totals[slot] += importance;
    }
    let total: f64 = totals.iter().sum();
    if total <= 0.0 {
        return Err(Error::Analysis(
            "total mean-absolute attribution is zero; shares are undefined".into(),
        ));
    }
    let shares = crate::orbit::FeatureCategory::ALL
        .iter()
        .zip(&totals)
        .map(|(category, &sum)| (category.name().to_string(), sum / total))
        .collect();
    Ok(CategoryShares { shares })
}
