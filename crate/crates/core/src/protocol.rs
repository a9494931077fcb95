//! The evaluation protocol: edge splits, negative sampling, visible-graph
//! construction, and feature-matrix assembly with CSV serialization.
//!
//! Pairs are stored by node label (not dense id) so a plan or matrix can
//! outlive the graph it was derived from: feature matrices can be rebuilt
//! against a trimmed graph whose node set shrank, with vanished endpoints
//! yielding flagged all-zero rows.

use std::collections::{HashMap, HashSet};
use std::io::{BufRead, Write};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, NodePair};
use crate::orbit::{edge_orbit_degrees_batch, NodeOrbitCounter, NodeOrbitVector, OrbitAtlas};

/// Distinguishes the RNG stream of training-negative draws from the one
/// used by the split itself.
const TRAINING_NEGATIVE_STREAM: u64 = 0x9E37_79B9_7F4A_7C15;

/// Number of orbit features in the fused model.
pub const FEATURE_COUNT: usize = 27;

/// The fixed feature-name list: node orbits first, then edge orbits.
pub fn feature_names() -> Vec<String> {
    let mut names = Vec::with_capacity(FEATURE_COUNT);
    for i in 1..=15 {
        names.push(format!("N{i}"));
    }
    for j in 1..=12 {
        names.push(format!("M{j}"));
    }
    names
}

/// A reproducible partition of the observed edges into train, validation,
/// and test sets, together with the sampled negative pairs for the two
/// evaluation phases. All pairs are node-label pairs, smaller label first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPlan {
    pub seed: u64,
    pub train: Vec<(i64, i64)>,
    pub validation: Vec<(i64, i64)>,
    pub test: Vec<(i64, i64)>,
    pub negative_validation: Vec<(i64, i64)>,
    pub negative_test: Vec<(i64, i64)>,
}

fn label_pair(graph: &Graph, pair: NodePair) -> (i64, i64) {
    let a = graph.label_of(pair.x());
    let b = graph.label_of(pair.y());
    (a.min(b), a.max(b))
}

/// Draws `count` distinct node pairs uniformly from the non-edges of the
/// graph, excluding `reserved` pairs as well. Uses rejection sampling on
/// sparse graphs and explicit enumeration when the candidate space is
/// tight, so dense graphs terminate too.
fn sample_non_edges(
    graph: &Graph,
    count: usize,
    reserved: &HashSet<NodePair>,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<NodePair>> {
    let n = graph.node_count() as u64;
    let total_pairs = n * (n - 1) / 2;
    let reserved_non_edges = reserved.len() as u64;
    let available = total_pairs
        .saturating_sub(graph.edge_count() as u64)
        .saturating_sub(reserved_non_edges);
    if (count as u64) > available {
        return Err(Error::Sampling(format!(
            "need {count} negative pairs but only {available} non-edges are available"
        )));
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    let tight = available < 3 * count as u64 || available * 4 < total_pairs;
    if tight {
        // Enumerate the full candidate list and take a random prefix.
        let mut candidates = Vec::new();
        for x in 0..graph.node_count() as NodeId {
            for y in (x + 1)..graph.node_count() as NodeId {
                let pair = NodePair::new(x, y).expect("x < y");
                if !graph.connected(x, y) && !reserved.contains(&pair) {
                    candidates.push(pair);
                }
            }
        }
        for i in 0..count {
            let j = rng.gen_range(i..candidates.len());
            candidates.swap(i, j);
        }
        candidates.truncate(count);
        return Ok(candidates);
    }
    let mut chosen = HashSet::with_capacity(count);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = rng.gen_range(0..graph.node_count() as NodeId);
        let b = rng.gen_range(0..graph.node_count() as NodeId);
        if a == b {
            continue;
        }
        let pair = NodePair::new(a.min(b), a.max(b)).expect("distinct");
        if graph.connected(pair.x(), pair.y()) || reserved.contains(&pair) {
            continue;
        }
        if chosen.insert(pair) {
            out.push(pair);
        }
    }
    Ok(out)
}

/// Splits the observed edges 8:1:1 (floor, floor, remainder) and samples
/// negative pairs for the validation and test phases, one negative per
/// held-out edge, all without replacement. Deterministic in the seed.
pub fn make_split(graph: &Graph, seed: u64) -> Result<SplitPlan> {
    let m = graph.edge_count();
    if m < 10 {
        return Err(Error::Protocol(format!(
            "the split needs at least 10 edges, got {m}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = graph.edge_list();
    edges.shuffle(&mut rng);
    let train_size = m * 8 / 10;
    let validation_size = m / 10;
    let train: Vec<NodePair> = edges[..train_size].to_vec();
    let validation: Vec<NodePair> = edges[train_size..train_size + validation_size].to_vec();
    let test: Vec<NodePair> = edges[train_size + validation_size..].to_vec();

    let need = validation.len() + test.len();
    let negatives = sample_non_edges(graph, need, &HashSet::new(), &mut rng)?;
    let negative_validation = negatives[..validation.len()].to_vec();
    let negative_test = negatives[validation.len()..].to_vec();

    let to_labels =
        |pairs: &[NodePair]| -> Vec<(i64, i64)> { pairs.iter().map(|&p| label_pair(graph, p)).collect() };
    Ok(SplitPlan {
        seed,
        train: to_labels(&train),
        validation: to_labels(&validation),
        test: to_labels(&test),
        negative_validation: to_labels(&negative_validation),
        negative_test: to_labels(&negative_test),
    })
}

/// Draws one training negative per train edge, disjoint from every
/// observed edge and from both evaluation negative sets. An independent
/// draw: the evaluation negatives are reserved, never reused.
pub fn sample_training_negatives(
    graph: &Graph,
    plan: &SplitPlan,
    seed: u64,
) -> Result<Vec<(i64, i64)>> {
    let mut reserved = HashSet::new();
    for source in [&plan.negative_validation, &plan.negative_test] {
        for &pair in source {
            reserved.insert(resolve_label_pair(graph, pair)?);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(TRAINING_NEGATIVE_STREAM));
    let sampled = sample_non_edges(graph, plan.train.len(), &reserved, &mut rng)?;
    Ok(sampled.iter().map(|&p| label_pair(graph, p)).collect())
}

fn resolve_label_pair(graph: &Graph, pair: (i64, i64)) -> Result<NodePair> {
    let x = graph
        .id_of_label(pair.0)
        .ok_or_else(|| Error::InvalidPair(format!("unknown node label {}", pair.0)))?;
    let y = graph
        .id_of_label(pair.1)
        .ok_or_else(|| Error::InvalidPair(format!("unknown node label {}", pair.1)))?;
    NodePair::new(x, y)
}

/// The graph visible while training and scoring the validation phase:
/// train edges only, over the full node universe.
pub fn train_graph(graph: &Graph, plan: &SplitPlan) -> Result<Graph> {
    let pairs: Vec<NodePair> = plan
        .train
        .iter()
        .map(|&p| resolve_label_pair(graph, p))
        .collect::<Result<_>>()?;
    graph.subgraph_with_edges(&pairs)
}

/// The graph visible while scoring the test phase: train and validation
/// edges combined, over the full node universe.
pub fn train_validation_graph(graph: &Graph, plan: &SplitPlan) -> Result<Graph> {
    let pairs: Vec<NodePair> = plan
        .train
        .iter()
        .chain(plan.validation.iter())
        .map(|&p| resolve_label_pair(graph, p))
        .collect::<Result<_>>()?;
    graph.subgraph_with_edges(&pairs)
}

/// One labeled sample: a node pair (by label), its class, and its feature
/// values. `missing_endpoint` marks rows whose endpoints were absent from
/// the visible graph; such rows carry all-zero features.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRow {
    pub x: i64,
    pub y: i64,
    pub label: u8,
    pub values: Vec<f64>,
    pub missing_endpoint: bool,
}

/// Labeled samples by rows, features by columns.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    pub feature_names: Vec<String>,
    pub rows: Vec<FeatureRow>,
}

impl FeatureMatrix {
    /// Projects the matrix onto a subset of feature columns.
    pub fn select_columns(&self, indices: &[usize]) -> Result<FeatureMatrix> {
        for &i in indices {
            if i >= self.feature_names.len() {
                return Err(Error::Shape(format!(
                    "column {i} out of range for {} features",
                    self.feature_names.len()
                )));
            }
        }
        let feature_names = indices
            .iter()
            .map(|&i| self.feature_names[i].clone())
            .collect();
        let rows = self
            .rows
            .iter()
            .map(|row| FeatureRow {
                x: row.x,
                y: row.y,
                label: row.label,
                values: indices.iter().map(|&i| row.values[i]).collect(),
                missing_endpoint: row.missing_endpoint,
            })
            .collect();
        Ok(FeatureMatrix {
            feature_names,
            rows,
        })
    }

    pub fn labels(&self) -> Vec<bool> {
        self.rows.iter().map(|r| r.label == 1).collect()
    }

    pub fn column(&self, index: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r.values[index]).collect()
    }
}

/// Builds the 27-column feature matrix for labeled pairs against a visible
/// graph: each node-orbit feature is the product of the two endpoints'
/// orbit degrees, and each edge-orbit feature is the pair's orbit degree
/// with the pair treated as connected.
///
/// A scored pair's own edge is never visible to its features: edge-orbit
/// counting treats the pair as present whether or not its edge exists, and
/// node-orbit degrees for a pair that is an actual edge of the visible
/// graph are recounted with that one edge removed. The two conventions
/// together make a row's features independent of the row's own label, so
/// rows for observed edges and sampled non-edges are directly comparable
/// and the training phase matches how held-out pairs are scored later.
///
/// Pairs whose endpoints are missing from the visible graph produce
/// flagged all-zero rows. Duplicate pairs are rejected.
pub fn build_features(
    visible: &Graph,
    atlas: &OrbitAtlas,
    pairs: &[((i64, i64), u8)],
) -> Result<FeatureMatrix> {
    let mut seen = HashSet::new();
    for &((x, y), label) in pairs {
        if !seen.insert((x.min(y), x.max(y))) {
            return Err(Error::Protocol(format!(
                "duplicate pair ({x}, {y}) in feature matrix"
            )));
        }
        if label > 1 {
            return Err(Error::Protocol(format!(
                "labels must be 0 or 1, got {label} for pair ({x}, {y})"
            )));
        }
    }

    // Resolve pairs, remembering which rows fall outside the graph.
    let mut resolved: Vec<Option<NodePair>> = Vec::with_capacity(pairs.len());
    for &((x, y), _) in pairs {
        match (visible.id_of_label(x), visible.id_of_label(y)) {
            (Some(a), Some(b)) if a != b => resolved.push(Some(NodePair::new(a, b)?)),
            _ => resolved.push(None),
        }
    }

    // Node orbit vectors for endpoints of rows whose pair is not a
    // visible edge; these share one count per node on the visible graph.
    let mut node_ids: Vec<NodeId> = resolved
        .iter()
        .flatten()
        .filter(|p| !visible.connected(p.x(), p.y()))
        .flat_map(|p| [p.x(), p.y()])
        .collect();
    node_ids.sort_unstable();
    node_ids.dedup();
    let node_vectors: Vec<_> = {
        use rayon::prelude::*;
        node_ids
            .par_iter()
            .map_init(
                || NodeOrbitCounter::new(visible),
                |counter, &v| counter.count(visible, atlas, v).expect("resolved ids are valid"),
            )
            .collect()
    };
    let vector_of = |v: NodeId| &node_vectors[node_ids.binary_search(&v).expect("collected")];

    // Rows whose pair is an actual edge get endpoint vectors recounted on
    // the graph with that one edge removed, keeping their node features on
    // the same footing as every non-edge row's.
    let edge_rows: Vec<NodePair> = resolved
        .iter()
        .flatten()
        .filter(|p| visible.connected(p.x(), p.y()))
        .copied()
        .collect();
    let reduced_vectors: HashMap<NodePair, (NodeOrbitVector, NodeOrbitVector)> = {
        use rayon::prelude::*;
        let all_edges = visible.edge_list();
        edge_rows
            .par_iter()
            .map(|&pair| {
                let kept: Vec<NodePair> =
                    all_edges.iter().filter(|&&e| e != pair).copied().collect();
                let reduced = visible.subgraph_with_edges(&kept)?;
                let mut counter = NodeOrbitCounter::new(&reduced);
                let vx = counter.count(&reduced, atlas, pair.x())?;
                let vy = counter.count(&reduced, atlas, pair.y())?;
                Ok((pair, (vx, vy)))
            })
            .collect::<Result<_>>()?
    };

    let live_pairs: Vec<NodePair> = resolved.iter().flatten().copied().collect();
    let edge_vectors = edge_orbit_degrees_batch(visible, atlas, &live_pairs)?;

    let mut rows = Vec::with_capacity(pairs.len());
    let mut live_index = 0usize;
    for (&((x, y), label), slot) in pairs.iter().zip(&resolved) {
        let row = match slot {
            Some(pair) => {
                let (nov_x, nov_y) = match reduced_vectors.get(pair) {
                    Some((vx, vy)) => (vx, vy),
                    None => (vector_of(pair.x()), vector_of(pair.y())),
                };
                let mut values = Vec::with_capacity(FEATURE_COUNT);
                for i in 0..15 {
                    values.push(nov_x.0[i] as f64 * nov_y.0[i] as f64);
                }
                for j in 0..12 {
                    values.push(edge_vectors[live_index].0[j] as f64);
                }
                live_index += 1;
                FeatureRow {
                    x: x.min(y),
                    y: x.max(y),
                    label,
                    values,
                    missing_endpoint: false,
                }
            }
            None => FeatureRow {
                x: x.min(y),
                y: x.max(y),
                label,
                values: vec![0.0; FEATURE_COUNT],
                missing_endpoint: true,
            },
        };
        rows.push(row);
    }
    Ok(FeatureMatrix {
        feature_names: feature_names(),
        rows,
    })
}

/// Formats a float the way every serializer in this crate does: shortest
/// representation that round-trips, integers without a trailing `.0`.
pub fn format_float(value: f64) -> String {
    if value == value.trunc() && value.abs() < 1e15 {
        format!("{}", value as i64)
    } else {
        format!("{value}")
    }
}

/// Writes the matrix as CSV with the fixed header.
pub fn write_matrix_csv<W: Write>(matrix: &FeatureMatrix, mut writer: W) -> Result<()> {
    write!(writer, "x,y,label")?;
    for name in &matrix.feature_names {
        write!(writer, ",{name}")?;
    }
    writeln!(writer)?;
    for row in &matrix.rows {
        write!(writer, "{},{},{}", row.x, row.y, row.label)?;
        for value in &row.values {
            write!(writer, ",{}", format_float(*value))?;
        }
        writeln!(writer)?;
    }
    Ok(())
}

/// Reads a matrix written by [`write_matrix_csv`]. The header must match
/// the writer's layout exactly.
pub fn read_matrix_csv<R: BufRead>(reader: R) -> Result<FeatureMatrix> {
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Input("empty feature CSV".into()))??;
    let mut columns = header.split(',');
    for expected in ["x", "y", "label"] {
        if columns.next() != Some(expected) {
            return Err(Error::Input(format!(
                "feature CSV header must start with x,y,label; got {header}"
            )));
        }
    }
    let feature_names: Vec<String> = columns.map(str::to_owned).collect();
    if feature_names.is_empty() {
        return Err(Error::Input("feature CSV has no feature columns".into()));
    }
    let mut rows = Vec::new();
    for (line_index, line) in lines.enumerate() {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != feature_names.len() + 3 {
            return Err(Error::Parse {
                line: line_index + 2,
                message: format!(
                    "expected {} fields, got {}",
                    feature_names.len() + 3,
                    fields.len()
                ),
            });
        }
        let parse_i64 = |s: &str| -> Result<i64> {
            s.parse().map_err(|_| Error::Parse {
                line: line_index + 2,
                message: format!("invalid integer {s:?}"),
            })
        };
        let x = parse_i64(fields[0])?;
        let y = parse_i64(fields[1])?;
        let label: u8 = match fields[2] {
            "0" => 0,
            "1" => 1,
            other => {
                return Err(Error::Parse {
                    line: line_index + 2,
                    message: format!("label must be 0 or 1, got {other:?}"),
                })
            }
        };
        let mut values = Vec::with_capacity(feature_names.len());
        for field in &fields[3..] {
            values.push(field.parse().map_err(|_| Error::Parse {
                line: line_index + 2,
                message: format!("invalid number {field:?}"),
            })?);
        }
        rows.push(FeatureRow {
            x,
            y,
            label,
            values,
            missing_endpoint: false,
        });
    }
    Ok(FeatureMatrix {
        feature_names,
        rows,
    })
}
