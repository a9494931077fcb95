//! Evaluation metrics: rank-based AUC, thresholded confusion metrics,
//! Pearson correlation matrices, and mean/spread aggregates.

use crate::error::{Error, Result};

fn reject_non_finite(values: &[f64], what: &str) -> Result<()> {
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Metric(format!("{what} contains a non-finite value")));
    }
    Ok(())
}

/// Area under the ROC curve via the rank-sum statistic, with average ranks
/// assigned to tied scores, so a tie between a positive and a negative
/// counts as half a correctly ordered pair.
pub fn auc(positive: &[f64], negative: &[f64]) -> Result<f64> {
    if positive.is_empty() || negative.is_empty() {
        return Err(Error::Metric(
            "AUC needs at least one positive and one negative score".into(),
        ));
    }
    reject_non_finite(positive, "positive scores")?;
    reject_non_finite(negative, "negative scores")?;
    let mut scored: Vec<(f64, bool)> = positive
        .iter()
        .map(|&s| (s, true))
        .chain(negative.iter().map(|&s| (s, false)))
        .collect();
    scored.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut rank_sum_positive = 0.0f64;
    let mut i = 0usize;
    while i < scored.len() {
        let mut j = i;
        while j < scored.len() && scored[j].0 == scored[i].0 {
            j += 1;
        }
        // Ranks are 1-based; tied entries share the average rank.
        let average_rank = (i + 1 + j) as f64 / 2.0;
        for entry in &scored[i..j] {
            if entry.1 {
                rank_sum_positive += average_rank;
            }
        }
        i = j;
    }
    let p = positive.len() as f64;
    let n = negative.len() as f64;
    let u = rank_sum_positive - p * (p + 1.0) / 2.0;
    Ok(u / (p * n))
}

/// AUC over a single score slice with aligned binary labels.
pub fn auc_labeled(scores: &[f64], labels: &[bool]) -> Result<f64> {
    if scores.len() != labels.len() {
        return Err(Error::Metric(format!(
            "scores and labels differ in length: {} vs {}",
            scores.len(),
            labels.len()
        )));
    }
    let positive: Vec<f64> = scores
        .iter()
        .zip(labels)
        .filter(|(_, &l)| l)
        .map(|(&s, _)| s)
        .collect();
    let negative: Vec<f64> = scores
        .iter()
        .zip(labels)
        .filter(|(_, &l)| !l)
        .map(|(&s, _)| s)
        .collect();
    auc(&positive, &negative)
}

/// Confusion counts of a thresholded classifier: a score at or above the
/// threshold predicts the positive class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ConfusionCounts {
    pub true_positives: u64,
    pub false_positives: u64,
    pub true_negatives: u64,
    pub false_negatives: u64,
}

/// Derived threshold metrics. Undefined ratios (empty denominators)
/// resolve to zero rather than an error, so degenerate slices still
/// aggregate.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ThresholdMetrics {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl ConfusionCounts {
    pub fn total(&self) -> u64 {
        self.true_positives + self.false_positives + self.true_negatives + self.false_negatives
    }

    pub fn metrics(&self) -> ThresholdMetrics {
        let tp = self.true_positives as f64;
        let fp = self.false_positives as f64;
        let tn = self.true_negatives as f64;
        let fn_ = self.false_negatives as f64;
        let accuracy = if self.total() == 0 {
            0.0
        } else {
            (tp + tn) / self.total() as f64
        };
        let precision = if tp + fp == 0.0 { 0.0 } else { tp / (tp + fp) };
        let recall = if tp + fn_ == 0.0 { 0.0 } else { tp / (tp + fn_) };
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        ThresholdMetrics {
            accuracy,
            precision,
            recall,
            f1,
        }
    }
}

/// Tallies confusion counts for aligned scores and labels. The threshold
/// must lie strictly inside (0, 1): the scores are probabilities.
pub fn confusion_counts(scores: &[f64], labels: &[bool], threshold: f64) -> Result<ConfusionCounts> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::Metric(format!(
            "threshold must lie in (0, 1), got {threshold}"
        )));
    }
    if scores.len() != labels.len() {
        return Err(Error::Metric(format!(
            "scores and labels differ in length: {} vs {}",
            scores.len(),
            labels.len()
        )));
    }
    reject_non_finite(scores, "scores")?;
    let mut counts = ConfusionCounts {
        true_positives: 0,
        false_positives: 0,
        true_negatives: 0,
        false_negatives: 0,
    };
    for (&score, &label) in scores.iter().zip(labels) {
        let predicted = score >= threshold;
        match (predicted, label) {
            (true, true) => counts.true_positives += 1,
            (true, false) => counts.false_positives += 1,
            (false, false) => counts.true_negatives += 1,
            (false, true) => counts.false_negatives += 1,
        }
    }
    Ok(counts)
}

/// A Pearson correlation matrix over named columns. Columns with zero
/// variance correlate at zero with everything (including themselves) and
/// are flagged.
#[derive(Debug, Clone)]
pub struct CorrelationMatrix {
    pub values: Vec<Vec<f64>>,
    pub degenerate: Vec<bool>,
}

/// Pearson correlations between all column pairs. Requires at least two
/// columns sharing one length of at least three.
pub fn pearson_matrix(columns: &[Vec<f64>]) -> Result<CorrelationMatrix> {
    if columns.len() < 2 {
        return Err(Error::Metric(format!(
            "correlation needs at least two columns, got {}",
            columns.len()
        )));
    }
    let rows = columns[0].len();
    if rows < 3 {
        return Err(Error::Metric(format!(
            "correlation needs at least three rows, got {rows}"
        )));
    }
    for column in columns {
        if column.len() != rows {
            return Err(Error::Metric("correlation columns differ in length".into()));
        }
        reject_non_finite(column, "correlation column")?;
    }
    let means: Vec<f64> = columns
        .iter()
        .map(|c| c.iter().sum::<f64>() / rows as f64)
        .collect();
    let spreads: Vec<f64> = columns
        .iter()
        .zip(&means)
        .map(|(c, &m)| c.iter().map(|v| (v - m) * (v - m)).sum::<f64>().sqrt())
        .collect();
    let degenerate: Vec<bool> = spreads.iter().map(|&s| s == 0.0).collect();
    let k = columns.len();
    let mut values = vec![vec![0.0f64; k]; k];
    for a in 0..k {
        for b in a..k {
            let r = if degenerate[a] || degenerate[b] {
                0.0
            } else if a == b {
                1.0
            } else {
                let cov: f64 = columns[a]
                    .iter()
                    .zip(&columns[b])
                    .map(|(&va, &vb)| (va - means[a]) * (vb - means[b]))
                    .sum();
                cov / (spreads[a] * spreads[b])
            };
            values[a][b] = r;
            values[b][a] = r;
        }
    }
    Ok(CorrelationMatrix { values, degenerate })
}

/// Mean and sample standard deviation of a value slice.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Aggregate {
    pub mean: f64,
    pub std_dev: f64,
    pub count: usize,
}

/// Aggregates values into mean and sample standard deviation; the spread
/// of fewer than two values is zero.
pub fn aggregate(values: &[f64]) -> Result<Aggregate> {
    if values.is_empty() {
        return Err(Error::Metric("cannot aggregate zero values".into()));
    }
    reject_non_finite(values, "aggregate values")?;
    let count = values.len();
    let mean = values.iter().sum::<f64>() / count as f64;
    let std_dev = if count < 2 {
        0.0
    } else {
        let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
        (ss / (count as f64 - 1.0)).sqrt()
    };
    Ok(Aggregate {
        mean,
        std_dev,
        count,
    })
}

/// The four evaluation metrics of one pipeline run.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MetricSet {
    pub auc: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Mean and spread of each metric over repeated runs.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MetricsSummary {
    pub auc: Aggregate,
    pub precision: Aggregate,
    pub recall: Aggregate,
    pub f1: Aggregate,
}

/// Aggregates per-run metric sets into per-metric mean and standard
/// deviation.
pub fn summarize_metric_sets(sets: &[MetricSet]) -> Result<MetricsSummary> {
    let collect = |pick: fn(&MetricSet) -> f64| -> Vec<f64> { sets.iter().map(pick).collect() };
    Ok(MetricsSummary {
        auc: aggregate(&collect(|m| m.auc))?,
        precision: aggregate(&collect(|m| m.precision))?,
        recall: aggregate(&collect(|m| m.recall))?,
        f1: aggregate(&collect(|m| m.f1))?,
    })
}
