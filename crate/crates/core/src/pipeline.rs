//! End-to-end link-prediction runs: split the edges, assemble features on
//! the phase-visible graphs, fit the boosted classifier, and evaluate on
//! the held-out test pairs.
//!
//! A run is specified by a model family. The fused model sees all 27 orbit
//! features; restricted variants keep only the node-orbit or edge-orbit
//! block, or a single named orbit feature. Classical variants train the
//! same classifier on one column holding a similarity index's scores, so
//! an index and its orbit decomposition can be compared under an identical
//! protocol.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::boost::{BoostedModel, Hyperparameters};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metrics::{auc_labeled, confusion_counts, ConfusionCounts, MetricSet};
use crate::orbit::OrbitAtlas;
use crate::predict::{score_many, ClassicalIndex, IndexParams};
use crate::protocol::{
    build_features, feature_names, make_split, sample_training_negatives, train_graph,
    train_validation_graph, FeatureMatrix, FeatureRow, SplitPlan,
};

/// Probability cutoff for the confusion-matrix metrics.
pub const DECISION_THRESHOLD: f64 = 0.5;

/// Which feature set the classifier trains on. Serializes as its id
/// string, the same form [`ModelSpec::parse`] accepts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelSpec {
    /// All 27 orbit features.
    Fused,
    /// The 15 node-orbit products only.
    NodeOnly,
    /// The 12 edge-orbit degrees only.
    EdgeOnly,
    /// One named orbit feature (for example `M2`).
    Single(String),
    /// One classical similarity index's scores as the only feature.
    Classical(ClassicalIndex),
}

impl ModelSpec {
    /// Parses a model id: `od`, `n-only`, `m-only`, `single:<feature>`, or
    /// `classical:<index>`.
    pub fn parse(text: &str) -> Result<ModelSpec> {
        match text {
            "od" => return Ok(ModelSpec::Fused),
            "n-only" => return Ok(ModelSpec::NodeOnly),
            "m-only" => return Ok(ModelSpec::EdgeOnly),
            _ => {}
        }
        if let Some(feature) = text.strip_prefix("single:") {
            let feature = feature.to_ascii_uppercase();
            if !feature_names().iter().any(|n| n == &feature) {
                return Err(Error::Config(format!(
                    "unknown orbit feature {feature}; expected one of N1..N15 or M1..M12"
                )));
            }
            return Ok(ModelSpec::Single(feature));
        }
        if let Some(id) = text.strip_prefix("classical:") {
            let id = id.to_ascii_lowercase();
            return ClassicalIndex::from_id(&id).map(ModelSpec::Classical).ok_or_else(|| {
                let known: Vec<&str> = ClassicalIndex::ALL.iter().map(|i| i.id()).collect();
                Error::Config(format!(
                    "unknown classical index {id}; expected one of {}",
                    known.join(", ")
                ))
            });
        }
        Err(Error::Config(format!(
            "unknown model {text}; expected od, n-only, m-only, single:<feature>, or classical:<index>"
        )))
    }

    /// The canonical id this spec parses from.
    pub fn id(&self) -> String {
        match self {
            ModelSpec::Fused => "od".into(),
            ModelSpec::NodeOnly => "n-only".into(),
            ModelSpec::EdgeOnly => "m-only".into(),
            ModelSpec::Single(feature) => format!("single:{feature}"),
            ModelSpec::Classical(index) => format!("classical:{}", index.id()),
        }
    }

    /// Which of the 27 orbit columns this spec keeps, or `None` for
    /// classical specs whose single column is computed, not selected.
    fn column_indices(&self) -> Option<Vec<usize>> {
        match self {
            ModelSpec::Fused => Some((0..27).collect()),
            ModelSpec::NodeOnly => Some((0..15).collect()),
            ModelSpec::EdgeOnly => Some((15..27).collect()),
            ModelSpec::Single(feature) => {
                let names = feature_names();
                let slot = names
                    .iter()
                    .position(|n| n == feature)
                    .expect("parse validated the feature name");
                Some(vec![slot])
            }
            ModelSpec::Classical(_) => None,
        }
    }
}

impl Serialize for ModelSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.id())
    }
}

impl<'de> Deserialize<'de> for ModelSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        ModelSpec::parse(&text).map_err(D::Error::custom)
    }
}

/// One completed run: the split it used, everything the classifier saw,
/// the fitted model, and the held-out evaluation.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub seed: u64,
    pub spec_id: String,
    pub plan: SplitPlan,
    pub training_negatives: Vec<(i64, i64)>,
    pub train_matrix: FeatureMatrix,
    pub validation_matrix: FeatureMatrix,
    pub test_matrix: FeatureMatrix,
    pub model: BoostedModel,
    pub test_probabilities: Vec<f64>,
    pub confusion: ConfusionCounts,
    pub metrics: MetricSet,
}

fn labeled_pairs(positives: &[(i64, i64)], negatives: &[(i64, i64)]) -> Vec<((i64, i64), u8)> {
    positives
        .iter()
        .map(|&p| (p, 1u8))
        .chain(negatives.iter().map(|&p| (p, 0u8)))
        .collect()
}

/// Builds a one-column matrix holding a classical index's scores for the
/// given pairs, computed on the visible graph.
fn classical_matrix(
    visible: &Graph,
    index: ClassicalIndex,
    params: &IndexParams,
    pairs: &[((i64, i64), u8)],
) -> Result<FeatureMatrix> {
    let resolved = pairs
        .iter()
        .map(|&((x, y), _)| {
            let a = visible
                .id_of_label(x)
                .ok_or_else(|| Error::InvalidPair(format!("unknown node label {x}")))?;
            let b = visible
                .id_of_label(y)
                .ok_or_else(|| Error::InvalidPair(format!("unknown node label {y}")))?;
            crate::graph::NodePair::new(a, b)
        })
        .collect::<Result<Vec<_>>>()?;
    let scores = score_many(visible, index, &resolved, params)?;
    let rows = pairs
        .iter()
        .zip(scores)
        .map(|(&((x, y), label), score)| FeatureRow {
            x: x.min(y),
            y: x.max(y),
            label,
            values: vec![score],
            missing_endpoint: false,
        })
        .collect();
    Ok(FeatureMatrix {
        feature_names: vec![index.id().to_string()],
        rows,
    })
}

fn matrix_inputs(matrix: &FeatureMatrix) -> (Vec<Vec<f64>>, Vec<u8>) {
    let features = matrix.rows.iter().map(|r| r.values.clone()).collect();
    let labels = matrix.rows.iter().map(|r| r.label).collect();
    (features, labels)
}

/// Executes one full protocol run with the given seed: split 8:1:1,
/// sample training negatives, build the three phase matrices on their
/// visible graphs, train the classifier against the validation AUC, and
/// score the test pairs.
pub fn execute_run(
    graph: &Graph,
    atlas: &OrbitAtlas,
    spec: &ModelSpec,
    seed: u64,
    hyper: &Hyperparameters,
    index_params: &IndexParams,
) -> Result<RunResult> {
    let plan = make_split(graph, seed)?;
    let training_negatives = sample_training_negatives(graph, &plan, seed)?;
    let visible_train = train_graph(graph, &plan)?;
    let visible_test = train_validation_graph(graph, &plan)?;

    let train_pairs = labeled_pairs(&plan.train, &training_negatives);
    let validation_pairs = labeled_pairs(&plan.validation, &plan.negative_validation);
    let test_pairs = labeled_pairs(&plan.test, &plan.negative_test);

    let (train_matrix, validation_matrix, test_matrix) = match spec.column_indices() {
        Some(columns) => {
            let train = build_features(&visible_train, atlas, &train_pairs)?
                .select_columns(&columns)?;
            let validation = build_features(&visible_train, atlas, &validation_pairs)?
                .select_columns(&columns)?;
            let test = build_features(&visible_test, atlas, &test_pairs)?
                .select_columns(&columns)?;
            (train, validation, test)
        }
        None => {
            let index = match spec {
                ModelSpec::Classical(index) => *index,
                _ => unreachable!("only classical specs lack column selections"),
            };
            let train = classical_matrix(&visible_train, index, index_params, &train_pairs)?;
            let validation =
                classical_matrix(&visible_train, index, index_params, &validation_pairs)?;
            let test = classical_matrix(&visible_test, index, index_params, &test_pairs)?;
            (train, validation, test)
        }
    };

    let (train_features, train_labels) = matrix_inputs(&train_matrix);
    let (validation_features, validation_labels) = matrix_inputs(&validation_matrix);
    let model = BoostedModel::train(
        &train_matrix.feature_names,
        &train_features,
        &train_labels,
        &validation_features,
        &validation_labels,
        hyper,
    )?;

    let (test_features, _) = matrix_inputs(&test_matrix);
    let test_probabilities = model.predict_proba(&test_features)?;
    let test_labels = test_matrix.labels();
    let auc = auc_labeled(&test_probabilities, &test_labels)?;
    let confusion = confusion_counts(&test_probabilities, &test_labels, DECISION_THRESHOLD)?;
    let threshold_metrics = confusion.metrics();
    let metrics = MetricSet {
        auc,
        precision: threshold_metrics.precision,
        recall: threshold_metrics.recall,
        f1: threshold_metrics.f1,
    };

    Ok(RunResult {
        seed,
        spec_id: spec.id(),
        plan,
        training_negatives,
        train_matrix,
        validation_matrix,
        test_matrix,
        model,
        test_probabilities,
        confusion,
        metrics,
    })
}

/// Executes `runs` repetitions with seeds `base_seed + run_index`.
pub fn execute_runs(
    graph: &Graph,
    atlas: &OrbitAtlas,
    spec: &ModelSpec,
    base_seed: u64,
    runs: usize,
    hyper: &Hyperparameters,
    index_params: &IndexParams,
) -> Result<Vec<RunResult>> {
    if runs == 0 {
        return Err(Error::Config("at least one run is required".into()));
    }
    (0..runs)
        .map(|i| {
            execute_run(
                graph,
                atlas,
                spec,
                base_seed.wrapping_add(i as u64),
                hyper,
                index_params,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::summarize_metric_sets;
    use crate::synth::{erdos_renyi, triadic_closure};

    fn quick_hyper() -> Hyperparameters {
        Hyperparameters {
            max_trees: 30,
            max_depth: 3,
            learning_rate: 0.3,
            early_stopping_rounds: 5,
            ..Hyperparameters::default()
        }
    }

    #[test]
    fn model_ids_round_trip_and_reject_unknowns() {
        for id in [
            "od",
            "n-only",
            "m-only",
            "single:M2",
            "single:N15",
            "classical:cn",
            "classical:katz",
        ] {
            let spec = ModelSpec::parse(id).unwrap();
            assert_eq!(spec.id(), id);
        }
        assert_eq!(ModelSpec::parse("single:m2").unwrap().id(), "single:M2");
        assert_eq!(ModelSpec::parse("classical:CN").unwrap().id(), "classical:cn");
        assert!(ModelSpec::parse("fused").is_err());
        assert!(ModelSpec::parse("single:N16").is_err());
        assert!(ModelSpec::parse("classical:simrank").is_err());
        assert!(ModelSpec::parse("single:").is_err());
    }

    #[test]
    fn column_selections_match_the_families() {
        assert_eq!(ModelSpec::Fused.column_indices().unwrap().len(), 27);
        assert_eq!(ModelSpec::NodeOnly.column_indices().unwrap(), (0..15).collect::<Vec<_>>());
        assert_eq!(ModelSpec::EdgeOnly.column_indices().unwrap(), (15..27).collect::<Vec<_>>());
        assert_eq!(
            ModelSpec::Single("M2".into()).column_indices().unwrap(),
            vec![16]
        );
        assert!(ModelSpec::Classical(ClassicalIndex::CommonNeighbors)
            .column_indices()
            .is_none());
    }

    #[test]
    fn a_run_produces_consistent_artifacts() {
        let graph = triadic_closure(80, 3, 0.8, 5).unwrap();
        let atlas = OrbitAtlas::standard();
        let result = execute_run(
            &graph,
            &atlas,
            &ModelSpec::Fused,
            9,
            &quick_hyper(),
            &IndexParams::default(),
        )
        .unwrap();

        let plan = &result.plan;
        assert_eq!(result.train_matrix.rows.len(), 2 * plan.train.len());
        assert_eq!(
            result.validation_matrix.rows.len(),
            2 * plan.validation.len()
        );
        assert_eq!(result.test_matrix.rows.len(), 2 * plan.test.len());
        assert_eq!(result.test_probabilities.len(), result.test_matrix.rows.len());
        assert_eq!(
            result.confusion.total() as usize,
            result.test_matrix.rows.len()
        );
        assert_eq!(result.train_matrix.feature_names.len(), 27);
        assert!(result.metrics.auc >= 0.0 && result.metrics.auc <= 1.0);
        assert!(result.metrics.f1.is_finite());
        assert_eq!(result.spec_id, "od");

        // On a strongly triadic graph the fused model must comfortably
        // beat coin flipping.
        assert!(
            result.metrics.auc > 0.7,
            "fused AUC {} unexpectedly low",
            result.metrics.auc
        );
    }

    #[test]
    fn restricted_models_see_only_their_columns() {
        let graph = erdos_renyi(60, 0.08, 3).unwrap();
        let atlas = OrbitAtlas::standard();
        let node_only = execute_run(
            &graph,
            &atlas,
            &ModelSpec::NodeOnly,
            2,
            &quick_hyper(),
            &IndexParams::default(),
        )
        .unwrap();
        assert_eq!(node_only.train_matrix.feature_names.len(), 15);
        assert!(node_only
            .train_matrix
            .feature_names
            .iter()
            .all(|n| n.starts_with('N')));

        let edge_only = execute_run(
            &graph,
            &atlas,
            &ModelSpec::EdgeOnly,
            2,
            &quick_hyper(),
            &IndexParams::default(),
        )
        .unwrap();
        assert_eq!(edge_only.train_matrix.feature_names.len(), 12);
        assert!(edge_only
            .train_matrix
            .feature_names
            .iter()
            .all(|n| n.starts_with('M')));
    }

    #[test]
    fn single_m2_and_classical_cn_agree_exactly() {
        let graph = triadic_closure(70, 3, 0.7, 11).unwrap();
        let atlas = OrbitAtlas::standard();
        let hyper = quick_hyper();
        let params = IndexParams::default();
        for seed in [1u64, 2, 3] {
            let single = execute_run(
                &graph,
                &atlas,
                &ModelSpec::Single("M2".into()),
                seed,
                &hyper,
                &params,
            )
            .unwrap();
            let classical = execute_run(
                &graph,
                &atlas,
                &ModelSpec::Classical(ClassicalIndex::CommonNeighbors),
                seed,
                &hyper,
                &params,
            )
            .unwrap();
            assert_eq!(single.metrics.auc, classical.metrics.auc);
            assert_eq!(single.test_probabilities, classical.test_probabilities);
            assert_eq!(single.confusion, classical.confusion);
        }
    }

    #[test]
    fn identical_seeds_reproduce_the_run() {
        let graph = erdos_renyi(50, 0.1, 8).unwrap();
        let atlas = OrbitAtlas::standard();
        let hyper = quick_hyper();
        let params = IndexParams::default();
        let a = execute_run(&graph, &atlas, &ModelSpec::Fused, 4, &hyper, &params).unwrap();
        let b = execute_run(&graph, &atlas, &ModelSpec::Fused, 4, &hyper, &params).unwrap();
        assert_eq!(a.plan, b.plan);
        assert_eq!(a.training_negatives, b.training_negatives);
        assert_eq!(a.test_probabilities, b.test_probabilities);
        assert_eq!(
            serde_json::to_string(&a.model).unwrap(),
            serde_json::to_string(&b.model).unwrap()
        );
    }

    #[test]
    fn repeated_runs_use_derived_seeds_and_aggregate() {
        let graph = erdos_renyi(50, 0.1, 8).unwrap();
        let atlas = OrbitAtlas::standard();
        let results = execute_runs(
            &graph,
            &atlas,
            &ModelSpec::EdgeOnly,
            100,
            3,
            &quick_hyper(),
            &IndexParams::default(),
        )
        .unwrap();
        assert_eq!(results.len(), 3);
        assert_eq!(
            results.iter().map(|r| r.seed).collect::<Vec<_>>(),
            vec![100, 101, 102]
        );
        // Different seeds produce different splits.
        assert_ne!(results[0].plan.train, results[1].plan.train);
        let sets: Vec<_> = results.iter().map(|r| r.metrics).collect();
        let summary = summarize_metric_sets(&sets).unwrap();
        assert_eq!(summary.auc.count, 3);
        assert!(execute_runs(
            &graph,
            &atlas,
            &ModelSpec::EdgeOnly,
            100,
            0,
            &quick_hyper(),
            &IndexParams::default()
        )
        .is_err());
    }

    #[test]
    fn test_phase_never_reads_test_edges() {
        let graph = triadic_closure(60, 3, 0.6, 21).unwrap();
        let atlas = OrbitAtlas::standard();
        let plan = make_split(&graph, 13).unwrap();
        let test_pairs = labeled_pairs(&plan.test, &plan.negative_test);

        let visible = train_validation_graph(&graph, &plan).unwrap();
        let with_test = build_features(&visible, &atlas, &test_pairs).unwrap();

        // Physically delete the test edges from the input graph and
        // rebuild: the test-phase features must not change at all.
        let kept: Vec<(crate::graph::NodeId, crate::graph::NodeId)> = graph
            .edge_list()
            .iter()
            .filter(|p| {
                let key = (
                    graph.label_of(p.x()).min(graph.label_of(p.y())),
                    graph.label_of(p.x()).max(graph.label_of(p.y())),
                );
                !plan.test.contains(&key)
            })
            .map(|p| (p.x(), p.y()))
            .collect();
        let stripped = Graph::from_edges(graph.node_count(), &kept).unwrap();
        let visible_stripped = train_validation_graph(&stripped, &plan).unwrap();
        let without_test = build_features(&visible_stripped, &atlas, &test_pairs).unwrap();

        assert_eq!(with_test, without_test);
    }
}
