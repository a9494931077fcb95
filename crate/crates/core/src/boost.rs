//! Gradient boosted decision trees for binary classification.
//!
//! The booster minimises logistic loss with second-order (Newton) updates:
//! each round fits a regression tree to the per-row gradients `p - y` and
//! hessians `p (1 - p)`, using the exact greedy split search over midpoint
//! thresholds between strictly distinct feature values. Training is fully
//! deterministic: there is no row or column subsampling, and ties between
//! candidate splits are broken by a total order (higher gain, then lower
//! feature index, then lower threshold).
//!
//! Validation data is mandatory. After every round the model logs the
//! validation AUC, and once training stops the ensemble is truncated to the
//! round with the best logged AUC, so the returned model is the one that
//! actually won on validation rather than the last one built.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics;

/// Training hyperparameters for [`BoostedModel::train`].
///
/// The `seed` field is carried so that run configurations stay reproducible
/// in serialized form, but training itself never consumes randomness: the
/// exact greedy search is deterministic, so the seed has no effect on the
/// fitted model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hyperparameters {
    /// Upper bound on boosting rounds (trees).
    pub max_trees: usize,
    /// Maximum tree depth; the root sits at depth zero. Must be in `1..=8`.
    pub max_depth: usize,
    /// Shrinkage applied to every leaf at prediction time. Must be in `(0, 1]`.
    pub learning_rate: f64,
    /// L2 penalty on leaf weights (the `lambda` in `-G / (H + lambda)`).
    pub l2_leaf_regularization: f64,
    /// Minimum gain a split must exceed to be kept (the `gamma` subtracted
    /// from every candidate gain).
    pub min_split_gain: f64,
    /// Stop after this many rounds without a validation AUC improvement.
    /// Zero disables early stopping.
    pub early_stopping_rounds: usize,
    /// Recorded for config reproducibility; unused by the deterministic
    /// training procedure.
    pub seed: u64,
}

impl Default for Hyperparameters {
    fn default() -> Self {
        Self {
            max_trees: 200,
            max_depth: 4,
            learning_rate: 0.1,
            l2_leaf_regularization: 1.0,
            min_split_gain: 0.0,
            early_stopping_rounds: 20,
            seed: 0,
        }
    }
}

impl Hyperparameters {
    /// Checks that every field is inside its documented range.
    pub fn validate(&self) -> Result<()> {
        if self.max_trees == 0 {
            return Err(Error::Config("max_trees must be at least 1".into()));
        }
        if !(1..=8).contains(&self.max_depth) {
            return Err(Error::Config(format!(
                "max_depth must be in 1..=8, got {}",
                self.max_depth
            )));
        }
        if !self.learning_rate.is_finite()
            || self.learning_rate <= 0.0
            || self.learning_rate > 1.0
        {
            return Err(Error::Config(format!(
                "learning_rate must be in (0, 1], got {}",
                self.learning_rate
            )));
        }
        if !self.l2_leaf_regularization.is_finite() || self.l2_leaf_regularization < 0.0 {
            return Err(Error::Config(format!(
                "l2_leaf_regularization must be finite and non-negative, got {}",
                self.l2_leaf_regularization
            )));
        }
        if !self.min_split_gain.is_finite() || self.min_split_gain < 0.0 {
            return Err(Error::Config(format!(
                "min_split_gain must be finite and non-negative, got {}",
                self.min_split_gain
            )));
        }
        Ok(())
    }
}

/// One node of a fitted regression tree.
///
/// Rows with `row[feature] < threshold` descend left; everything else,
/// including equality, descends right. `cover` is the hessian mass that
/// reached the node during training, so the covers of the two children sum
/// to the cover of their parent (up to floating-point rounding).
///
/// Leaf weights are stored unscaled; [`BoostedModel`] applies the learning
/// rate when it accumulates margins.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TreeNode {
    /// An internal split node.
    Internal {
        /// Column index the split tests.
        feature: usize,
        /// Split point; strictly smaller values go left.
        threshold: f64,
        /// Subtree for rows with `row[feature] < threshold`.
        left: Box<TreeNode>,
        /// Subtree for the remaining rows.
        right: Box<TreeNode>,
        /// Sum of hessians over the training rows that reached this node.
        cover: f64,
    },
    /// A terminal node holding an additive margin contribution.
    Leaf {
        /// Unscaled Newton step `-G / (H + lambda)` for the rows here.
        weight: f64,
        /// Sum of hessians over the training rows that reached this leaf.
        cover: f64,
    },
}

impl TreeNode {
    /// Returns the leaf weight reached by `row`.
    pub fn evaluate(&self, row: &[f64]) -> f64 {
        let mut node = self;
        loop {
            match node {
                TreeNode::Leaf { weight, .. } => return *weight,
                TreeNode::Internal {
                    feature,
                    threshold,
                    left,
                    right,
                    ..
                } => {
                    node = if row[*feature] < *threshold { left } else { right };
                }
            }
        }
    }

    /// Hessian mass that reached this node during training.
    pub fn cover(&self) -> f64 {
        match self {
            TreeNode::Leaf { cover, .. } | TreeNode::Internal { cover, .. } => *cover,
        }
    }

    /// Number of leaves in the subtree.
    pub fn leaf_count(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 1,
            TreeNode::Internal { left, right, .. } => left.leaf_count() + right.leaf_count(),
        }
    }
}

/// A fitted gradient boosted ensemble.
///
/// The predicted margin for a row is
/// `base_score + learning_rate * sum(tree.evaluate(row))`, and the predicted
/// probability is the logistic function of that margin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoostedModel {
    /// Names of the feature columns, in training order.
    pub feature_names: Vec<String>,
    /// Initial margin: the log-odds of the positive rate in training data.
    pub base_score: f64,
    /// Shrinkage applied to every tree's contribution.
    pub learning_rate: f64,
    /// Trees kept after truncating to the best validation round.
    pub trees: Vec<TreeNode>,
    /// Validation AUC after each round that was trained, including rounds
    /// past the best one that truncation later discarded.
    pub training_log: Vec<f64>,
}

struct GrowContext<'a> {
    columns: &'a [Vec<f64>],
    grad: &'a [f64],
    hess: &'a [f64],
    lambda: f64,
    gamma: f64,
    max_depth: usize,
}

#[derive(Debug, Clone, Copy)]
struct SplitCandidate {
    gain: f64,
    feature: usize,
    threshold: f64,
}

impl SplitCandidate {
    /// Total order used to merge per-feature winners: higher gain first,
    /// then lower feature index, then lower threshold.
    fn beats(&self, other: &SplitCandidate) -> bool {
        if self.gain != other.gain {
            return self.gain > other.gain;
        }
        if self.feature != other.feature {
            return self.feature < other.feature;
        }
        self.threshold < other.threshold
    }
}

fn leaf_weight(grad_sum: f64, hess_sum: f64, lambda: f64) -> f64 {
    let denom = hess_sum + lambda;
    if denom > 0.0 {
        -grad_sum / denom
    } else {
        0.0
    }
}

fn half_score(grad_sum: f64, hess_sum: f64, lambda: f64) -> f64 {
    let denom = hess_sum + lambda;
    if denom > 0.0 {
        grad_sum * grad_sum / denom
    } else {
        0.0
    }
}

fn best_split_for_feature(
    ctx: &GrowContext<'_>,
    feature: usize,
    rows: &[u32],
    grad_total: f64,
    hess_total: f64,
) -> Option<SplitCandidate> {
    let column = &ctx.columns[feature];
    let mut order: Vec<u32> = rows.to_vec();
    order.sort_unstable_by(|&a, &b| {
        column[a as usize]
            .partial_cmp(&column[b as usize])
            .expect("feature values are validated finite")
            .then(a.cmp(&b))
    });

    let parent_score = half_score(grad_total, hess_total, ctx.lambda);
    let mut grad_left = 0.0;
    let mut hess_left = 0.0;
    let mut best: Option<SplitCandidate> = None;
    for window in order.windows(2) {
        let (lo, hi) = (window[0] as usize, window[1] as usize);
        grad_left += ctx.grad[lo];
        hess_left += ctx.hess[lo];
        let lo_value = column[lo];
        let hi_value = column[hi];
        if lo_value >= hi_value {
            continue;
        }
        let mut threshold = lo_value + (hi_value - lo_value) / 2.0;
        if !(threshold > lo_value) {
            threshold = hi_value;
        }
        let grad_right = grad_total - grad_left;
        let hess_right = hess_total - hess_left;
        let gain = 0.5
            * (half_score(grad_left, hess_left, ctx.lambda)
                + half_score(grad_right, hess_right, ctx.lambda)
                - parent_score)
            - ctx.gamma;
        let candidate = SplitCandidate {
            gain,
            feature,
            threshold,
        };
        if best.is_none_or(|current| candidate.beats(&current)) {
            best = Some(candidate);
        }
    }
    best
}

fn grow_node(ctx: &GrowContext<'_>, rows: Vec<u32>, depth: usize) -> TreeNode {
    let grad_total: f64 = rows.iter().map(|&i| ctx.grad[i as usize]).sum();
    let hess_total: f64 = rows.iter().map(|&i| ctx.hess[i as usize]).sum();
    let cover = hess_total;
    let as_leaf = || TreeNode::Leaf {
        weight: leaf_weight(grad_total, hess_total, ctx.lambda),
        cover,
    };
    if depth >= ctx.max_depth || rows.len() < 2 {
        return as_leaf();
    }
    let best = (0..ctx.columns.len())
        .into_par_iter()
        .filter_map(|feature| best_split_for_feature(ctx, feature, &rows, grad_total, hess_total))
        .reduce_with(|a, b| if a.beats(&b) { a } else { b });
    let Some(split) = best else {
        return as_leaf();
    };
    if split.gain <= 0.0 {
        return as_leaf();
    }
    let column = &ctx.columns[split.feature];
    let (left_rows, right_rows): (Vec<u32>, Vec<u32>) = rows
        .into_iter()
        .partition(|&i| column[i as usize] < split.threshold);
    debug_assert!(!left_rows.is_empty() && !right_rows.is_empty());
    let left = grow_node(ctx, left_rows, depth + 1);
    let right = grow_node(ctx, right_rows, depth + 1);
    TreeNode::Internal {
        feature: split.feature,
        threshold: split.threshold,
        left: Box::new(left),
        right: Box::new(right),
        cover,
    }
}

fn sigmoid(margin: f64) -> f64 {
    1.0 / (1.0 + (-margin).exp())
}

fn check_rows(rows: &[Vec<f64>], width: usize, what: &str) -> Result<()> {
    for (i, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(Error::Shape(format!(
                "{what} row {i} has {} features, expected {width}",
                row.len()
            )));
        }
        if row.iter().any(|v| !v.is_finite()) {
            return Err(Error::Input(format!(
                "{what} row {i} contains a non-finite feature value"
            )));
        }
    }
    Ok(())
}

fn class_counts(labels: &[u8], what: &str) -> Result<(usize, usize)> {
    let mut positives = 0usize;
    for (i, &label) in labels.iter().enumerate() {
        match label {
            0 => {}
            1 => positives += 1,
            other => {
                return Err(Error::Training(format!(
                    "{what} label at row {i} is {other}, expected 0 or 1"
                )))
            }
        }
    }
    let negatives = labels.len() - positives;
    if positives == 0 || negatives == 0 {
        return Err(Error::Training(format!(
            "{what} labels contain a single class ({positives} positive, {negatives} negative); \
             both classes are required"
        )));
    }
    Ok((positives, negatives))
}

impl BoostedModel {
    /// Fits an ensemble on `train_features` and tracks AUC on the mandatory
    /// validation split after every round.
    ///
    /// Training stops at `max_trees` rounds or earlier when the validation
    /// AUC has not improved for `early_stopping_rounds` consecutive rounds;
    /// either way the returned ensemble keeps only the trees up to the best
    /// validation round.
    pub fn train(
        feature_names: &[String],
        train_features: &[Vec<f64>],
        train_labels: &[u8],
        validation_features: &[Vec<f64>],
        validation_labels: &[u8],
        params: &Hyperparameters,
    ) -> Result<Self> {
        params.validate()?;
        let width = feature_names.len();
        if width == 0 {
            return Err(Error::Shape("at least one feature column is required".into()));
        }
        if train_features.len() != train_labels.len() {
            return Err(Error::Shape(format!(
                "training has {} rows but {} labels",
                train_features.len(),
                train_labels.len()
            )));
        }
        if validation_features.len() != validation_labels.len() {
            return Err(Error::Shape(format!(
                "validation has {} rows but {} labels",
                validation_features.len(),
                validation_labels.len()
            )));
        }
        check_rows(train_features, width, "training")?;
        check_rows(validation_features, width, "validation")?;
        let (positives, negatives) = class_counts(train_labels, "training")?;
        class_counts(validation_labels, "validation")?;

        let n = train_features.len();
        let prior = positives as f64 / (positives + negatives) as f64;
        let base_score = (prior / (1.0 - prior)).ln();

        let mut columns = vec![vec![0.0f64; n]; width];
        for (i, row) in train_features.iter().enumerate() {
            for (f, &value) in row.iter().enumerate() {
                columns[f][i] = value;
            }
        }
        let all_rows: Vec<u32> = (0..n as u32).collect();
        let validation_flags: Vec<bool> =
            validation_labels.iter().map(|&label| label == 1).collect();

        let mut train_margins = vec![base_score; n];
        let mut validation_margins = vec![base_score; validation_features.len()];
        let mut grad = vec![0.0f64; n];
        let mut hess = vec![0.0f64; n];
        let mut trees: Vec<TreeNode> = Vec::new();
        let mut training_log: Vec<f64> = Vec::new();
        let mut best_auc = f64::NEG_INFINITY;
        let mut best_round = 0usize;

        for round in 0..params.max_trees {
            for i in 0..n {
                let p = sigmoid(train_margins[i]);
                grad[i] = p - f64::from(train_labels[i]);
                hess[i] = p * (1.0 - p);
            }
            let ctx = GrowContext {
                columns: &columns,
                grad: &grad,
                hess: &hess,
                lambda: params.l2_leaf_regularization,
                gamma: params.min_split_gain,
                max_depth: params.max_depth,
            };
            let tree = grow_node(&ctx, all_rows.clone(), 0);
            for i in 0..n {
                train_margins[i] += params.learning_rate * tree.evaluate(&train_features[i]);
            }
            for (margin, row) in validation_margins.iter_mut().zip(validation_features) {
                *margin += params.learning_rate * tree.evaluate(row);
            }
            trees.push(tree);
            let auc = metrics::auc_labeled(&validation_margins, &validation_flags)?;
            training_log.push(auc);
            if auc > best_auc {
                best_auc = auc;
                best_round = round;
            } else if params.early_stopping_rounds > 0
                && round - best_round >= params.early_stopping_rounds
            {
                break;
            }
        }
        trees.truncate(best_round + 1);

        Ok(Self {
            feature_names: feature_names.to_vec(),
            base_score,
            learning_rate: params.learning_rate,
            trees,
            training_log,
        })
    }

    /// Number of feature columns the model expects.
    pub fn width(&self) -> usize {
        self.feature_names.len()
    }

    /// Raw additive margin (log-odds) for one row.
    pub fn predict_margin(&self, row: &[f64]) -> Result<f64> {
        if row.len() != self.width() {
            return Err(Error::Shape(format!(
                "row has {} features, model expects {}",
                row.len(),
                self.width()
            )));
        }
        if row.iter().any(|v| !v.is_finite()) {
            return Err(Error::Input(
                "prediction row contains a non-finite feature value".into(),
            ));
        }
        Ok(self
            .trees
            .iter()
            .fold(self.base_score, |margin, tree| {
                margin + self.learning_rate * tree.evaluate(row)
            }))
    }

    /// Margins for a batch of rows.
    pub fn predict_margins(&self, rows: &[Vec<f64>]) -> Result<Vec<f64>> {
        rows.iter().map(|row| self.predict_margin(row)).collect()
    }

    /// Positive-class probabilities for a batch of rows.
    pub fn predict_proba(&self, rows: &[Vec<f64>]) -> Result<Vec<f64>> {
        rows.iter()
            .map(|row| self.predict_margin(row).map(sigmoid))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("f{i}")).collect()
    }

    fn stump_params() -> Hyperparameters {
        Hyperparameters {
            max_trees: 1,
            max_depth: 1,
            learning_rate: 1.0,
            ..Hyperparameters::default()
        }
    }

    fn hand_example() -> (Vec<Vec<f64>>, Vec<u8>) {
        let features = vec![vec![1.0], vec![2.0], vec![-1.0], vec![-2.0]];
        let labels = vec![1, 1, 0, 0];
        (features, labels)
    }

    #[test]
    fn stump_on_separable_points_matches_hand_computation() {
        let (features, labels) = hand_example();
        let model = BoostedModel::train(
            &names(1),
            &features,
            &labels,
            &features,
            &labels,
            &stump_params(),
        )
        .unwrap();
        assert_eq!(model.base_score, 0.0);
        assert_eq!(model.trees.len(), 1);
        match &model.trees[0] {
            TreeNode::Internal {
                feature,
                threshold,
                left,
                right,
                cover,
            } => {
                assert_eq!(*feature, 0);
                assert_eq!(*threshold, 0.0);
                assert!((cover - 1.0).abs() < 1e-12);
                match (left.as_ref(), right.as_ref()) {
                    (
                        TreeNode::Leaf {
                            weight: wl,
                            cover: cl,
                        },
                        TreeNode::Leaf {
                            weight: wr,
                            cover: cr,
                        },
                    ) => {
                        assert!((wl + 2.0 / 3.0).abs() < 1e-12);
                        assert!((wr - 2.0 / 3.0).abs() < 1e-12);
                        assert!((cl - 0.5).abs() < 1e-12);
                        assert!((cr - 0.5).abs() < 1e-12);
                    }
                    other => panic!("expected two leaves, got {other:?}"),
                }
            }
            other => panic!("expected a root split, got {other:?}"),
        }
        assert_eq!(model.training_log, vec![1.0]);
        let probabilities = model.predict_proba(&features).unwrap();
        assert!(probabilities[0] > 0.5 && probabilities[1] > 0.5);
        assert!(probabilities[2] < 0.5 && probabilities[3] < 0.5);
    }

    #[test]
    fn margins_accumulate_base_plus_scaled_leaves() {
        let (features, labels) = hand_example();
        let params = Hyperparameters {
            max_trees: 5,
            max_depth: 2,
            learning_rate: 0.3,
            early_stopping_rounds: 0,
            ..Hyperparameters::default()
        };
        let model =
            BoostedModel::train(&names(1), &features, &labels, &features, &labels, &params)
                .unwrap();
        for row in &features {
            let expected = model.trees.iter().fold(model.base_score, |m, tree| {
                m + model.learning_rate * tree.evaluate(row)
            });
            assert_eq!(model.predict_margin(row).unwrap(), expected);
        }
    }

    #[test]
    fn child_covers_sum_to_parent_cover() {
        let (features, labels) = hand_example();
        let params = Hyperparameters {
            max_trees: 8,
            max_depth: 3,
            early_stopping_rounds: 0,
            ..Hyperparameters::default()
        };
        let model =
            BoostedModel::train(&names(1), &features, &labels, &features, &labels, &params)
                .unwrap();
        fn walk(node: &TreeNode) {
            if let TreeNode::Internal {
                left, right, cover, ..
            } = node
            {
                let sum = left.cover() + right.cover();
                assert!((sum - cover).abs() <= 1e-9 * cover.max(1.0));
                walk(left);
                walk(right);
            }
        }
        for tree in &model.trees {
            walk(tree);
        }
    }

    #[test]
    fn single_class_labels_are_rejected() {
        let features = vec![vec![1.0], vec![2.0]];
        let err = BoostedModel::train(
            &names(1),
            &features,
            &[1, 1],
            &features,
            &[0, 1],
            &Hyperparameters::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Training(_)));
        let err = BoostedModel::train(
            &names(1),
            &features,
            &[0, 1],
            &features,
            &[1, 1],
            &Hyperparameters::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Training(_)));
    }

    #[test]
    fn empty_validation_is_rejected() {
        let features = vec![vec![1.0], vec![2.0]];
        let err = BoostedModel::train(
            &names(1),
            &features,
            &[0, 1],
            &[],
            &[],
            &Hyperparameters::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Training(_)));
    }

    #[test]
    fn non_finite_features_are_rejected() {
        let good = vec![vec![1.0], vec![2.0]];
        let bad = vec![vec![1.0], vec![f64::NAN]];
        let err = BoostedModel::train(
            &names(1),
            &bad,
            &[0, 1],
            &good,
            &[0, 1],
            &Hyperparameters::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Input(_)));
        let err = BoostedModel::train(
            &names(1),
            &good,
            &[0, 1],
            &bad,
            &[0, 1],
            &Hyperparameters::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn shape_mismatches_are_rejected() {
        let features = vec![vec![1.0, 0.0], vec![2.0, 1.0]];
        let err = BoostedModel::train(
            &names(1),
            &features,
            &[0, 1],
            &features,
            &[0, 1],
            &Hyperparameters::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Shape(_)));

        let model = BoostedModel {
            feature_names: names(2),
            base_score: 0.0,
            learning_rate: 0.1,
            trees: Vec::new(),
            training_log: Vec::new(),
        };
        assert!(matches!(
            model.predict_margin(&[1.0]).unwrap_err(),
            Error::Shape(_)
        ));
    }

    #[test]
    fn hyperparameter_ranges_are_validated() {
        let mut params = Hyperparameters {
            max_depth: 0,
            ..Hyperparameters::default()
        };
        assert!(matches!(params.validate().unwrap_err(), Error::Config(_)));
        params.max_depth = 9;
        assert!(params.validate().is_err());
        params.max_depth = 4;
        params.learning_rate = 0.0;
        assert!(params.validate().is_err());
        params.learning_rate = 1.5;
        assert!(params.validate().is_err());
        params.learning_rate = 1.0;
        assert!(params.validate().is_ok());
    }

    #[test]
    fn empty_ensemble_predicts_the_base_probability() {
        let model = BoostedModel {
            feature_names: names(1),
            base_score: 0.0,
            learning_rate: 0.5,
            trees: Vec::new(),
            training_log: Vec::new(),
        };
        assert_eq!(model.predict_proba(&[vec![3.0]]).unwrap(), vec![0.5]);
    }

    #[test]
    fn json_round_trip_preserves_the_model_exactly() {
        let (features, labels) = hand_example();
        let params = Hyperparameters {
            max_trees: 6,
            max_depth: 2,
            early_stopping_rounds: 0,
            ..Hyperparameters::default()
        };
        let model =
            BoostedModel::train(&names(1), &features, &labels, &features, &labels, &params)
                .unwrap();
        let json = serde_json::to_string_pretty(&model).unwrap();
        let restored: BoostedModel = serde_json::from_str(&json).unwrap();
        assert_eq!(restored, model);
        assert_eq!(serde_json::to_string_pretty(&restored).unwrap(), json);
    }

    #[test]
    fn early_stopping_truncates_to_the_best_round() {
        let (features, labels) = hand_example();
        let params = Hyperparameters {
            max_trees: 50,
            max_depth: 1,
            learning_rate: 0.1,
            early_stopping_rounds: 2,
            ..Hyperparameters::default()
        };
        let model =
            BoostedModel::train(&names(1), &features, &labels, &features, &labels, &params)
                .unwrap();
        // The stump separates the data perfectly from round one, so the
        // validation AUC never improves past the first round and early
        // stopping fires after two stale rounds.
        assert_eq!(model.trees.len(), 1);
        assert_eq!(model.training_log.len(), 3);
        assert!(model.training_log.iter().all(|&auc| auc == 1.0));
    }

    #[test]
    fn training_is_deterministic() {
        let (features, labels) = hand_example();
        let params = Hyperparameters {
            max_trees: 10,
            early_stopping_rounds: 0,
            ..Hyperparameters::default()
        };
        let a = BoostedModel::train(&names(1), &features, &labels, &features, &labels, &params)
            .unwrap();
        let b = BoostedModel::train(&names(1), &features, &labels, &features, &labels, &params)
            .unwrap();
        assert_eq!(a, b);
    }
}
