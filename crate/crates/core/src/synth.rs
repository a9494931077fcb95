//! Seeded synthetic network generators.
//!
//! Each generator is a pure function of its parameters and seed (ChaCha
//! stream cipher RNG), so the same call always produces the same graph on
//! every platform and thread count. The mechanism-specific generators exist
//! to manufacture networks whose dominant link-formation process is known in
//! advance: triadic closure produces triangle-rich graphs, while the
//! preferential-attachment and star generators produce hub-dominated graphs
//! with few or no triangles.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

fn check_probability(value: f64, what: &str) -> Result<()> {
    if !value.is_finite() || !(0.0..=1.0).contains(&value) {
        return Err(Error::Config(format!(
            "{what} must be a probability in [0, 1], got {value}"
        )));
    }
    Ok(())
}

/// Erdos-Renyi G(n, p): every unordered pair becomes an edge independently
/// with probability `p`. The result may be disconnected or even empty.
pub fn erdos_renyi(node_count: usize, edge_probability: f64, seed: u64) -> Result<Graph> {
    if node_count < 2 {
        return Err(Error::Config(format!(
            "an Erdos-Renyi graph needs at least 2 nodes, got {node_count}"
        )));
    }
    check_probability(edge_probability, "edge_probability")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    for a in 0..node_count as NodeId {
        for b in (a + 1)..node_count as NodeId {
            if rng.gen_bool(edge_probability) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(node_count, &edges)
}

/// Preferential-attachment tree: starting from a single edge, every new node
/// attaches to one existing node chosen proportionally to its degree. The
/// result is a connected tree with `node_count - 1` edges, strong hubs, and
/// no triangles at all.
pub fn preferential_attachment_tree(node_count: usize, seed: u64) -> Result<Graph> {
    if node_count < 2 {
        return Err(Error::Config(format!(
            "a preferential-attachment tree needs at least 2 nodes, got {node_count}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(NodeId, NodeId)> = Vec::with_capacity(node_count - 1);
    // Each edge contributes both endpoints; drawing uniformly from this list
    // is exactly degree-proportional selection.
    let mut endpoint_pool: Vec<NodeId> = vec![0, 1];
    edges.push((0, 1));
    for node in 2..node_count as NodeId {
        let target = endpoint_pool[rng.gen_range(0..endpoint_pool.len())];
        edges.push((target.min(node), target.max(node)));
        endpoint_pool.push(target);
        endpoint_pool.push(node);
    }
    Graph::from_edges(node_count, &edges)
}

/// Triadic-closure growth: every new node first attaches preferentially,
/// then adds `edges_per_node - 1` further edges, each of which closes a
/// triangle with probability `closure_probability` (linking to a random
/// neighbor of the previous target) and otherwise attaches preferentially.
/// High closure probabilities yield strongly triangle-rich networks.
pub fn triadic_closure(
    node_count: usize,
    edges_per_node: usize,
    closure_probability: f64,
    seed: u64,
) -> Result<Graph> {
    if edges_per_node == 0 {
        return Err(Error::Config(
            "edges_per_node must be at least 1".into(),
        ));
    }
    if node_count < edges_per_node + 1 {
        return Err(Error::Config(format!(
            "triadic closure with {edges_per_node} edges per node needs at least {} nodes, \
             got {node_count}",
            edges_per_node + 1
        )));
    }
    check_probability(closure_probability, "closure_probability")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let core = (edges_per_node + 1) as NodeId;
    let mut neighbor_sets: Vec<Vec<NodeId>> = vec![Vec::new(); node_count];
    let mut endpoint_pool: Vec<NodeId> = Vec::new();
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    let add_edge = |edges: &mut Vec<(NodeId, NodeId)>,
                        neighbor_sets: &mut Vec<Vec<NodeId>>,
                        endpoint_pool: &mut Vec<NodeId>,
                        a: NodeId,
                        b: NodeId| {
        edges.push((a.min(b), a.max(b)));
        neighbor_sets[a as usize].push(b);
        neighbor_sets[b as usize].push(a);
        endpoint_pool.push(a);
        endpoint_pool.push(b);
    };
    // Seed clique keeps early preferential draws well-defined.
    for a in 0..core {
        for b in (a + 1)..core {
            add_edge(&mut edges, &mut neighbor_sets, &mut endpoint_pool, a, b);
        }
    }
    for node in core..node_count as NodeId {
        let mut targets: Vec<NodeId> = Vec::with_capacity(edges_per_node);
        let first = loop {
            let candidate = endpoint_pool[rng.gen_range(0..endpoint_pool.len())];
            if candidate != node {
                break candidate;
            }
        };
        targets.push(first);
        let mut previous = first;
        while targets.len() < edges_per_node {
            let close_triangle = rng.gen_bool(closure_probability);
            let candidate = if close_triangle {
                let neighbors = &neighbor_sets[previous as usize];
                neighbors[rng.gen_range(0..neighbors.len())]
            } else {
                endpoint_pool[rng.gen_range(0..endpoint_pool.len())]
            };
            if candidate == node || targets.contains(&candidate) {
                continue;
            }
            targets.push(candidate);
            previous = candidate;
        }
        for target in targets {
            add_edge(&mut edges, &mut neighbor_sets, &mut endpoint_pool, node, target);
        }
    }
    Graph::from_edges(node_count, &edges)
}

/// Star-augmented graph: `hub_count` hubs, every remaining node attached to
/// one uniformly chosen hub, plus an extra uniform edge per leaf with
/// probability `extra_edge_probability`. Degree and claw structure dominate;
/// triangles stay rare.
pub fn star_augmented(
    node_count: usize,
    hub_count: usize,
    extra_edge_probability: f64,
    seed: u64,
) -> Result<Graph> {
    if hub_count == 0 {
        return Err(Error::Config("hub_count must be at least 1".into()));
    }
    if node_count < hub_count + 2 {
        return Err(Error::Config(format!(
            "a star-augmented graph with {hub_count} hubs needs at least {} nodes, \
             got {node_count}",
            hub_count + 2
        )));
    }
    check_probability(extra_edge_probability, "extra_edge_probability")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    for leaf in hub_count as NodeId..node_count as NodeId {
        let hub = rng.gen_range(0..hub_count) as NodeId;
        edges.push((hub, leaf));
        if rng.gen_bool(extra_edge_probability) {
            let other = loop {
                let candidate = rng.gen_range(0..node_count) as NodeId;
                if candidate != leaf && candidate != hub {
                    break candidate;
                }
            };
            edges.push((other.min(leaf), other.max(leaf)));
        }
    }
    Graph::from_edges(node_count, &edges)
}

/// A random graph whose edge probabilities are proportional to the product
/// of heavy-tailed node weights (`w_i = (i + 1)^-tail`, rescaled so the
/// expected edge count is `target_edges`). Links form purely by endpoint
/// prominence, so the graph is dominated by high-degree hubs surrounded by
/// stars, with no triadic mechanism at all.
pub fn degree_weighted(
    node_count: usize,
    target_edges: f64,
    tail: f64,
    seed: u64,
) -> Result<Graph> {
    if node_count < 2 {
        return Err(Error::Config(format!(
            "a degree-weighted graph needs at least 2 nodes, got {node_count}"
        )));
    }
    if !target_edges.is_finite() || target_edges < 1.0 {
        return Err(Error::Config(format!(
            "target_edges must be at least 1, got {target_edges}"
        )));
    }
    if !tail.is_finite() || !(0.0..1.0).contains(&tail) {
        return Err(Error::Config(format!(
            "tail must lie in [0, 1), got {tail}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<f64> = (0..node_count)
        .map(|i| ((i + 1) as f64).powf(-tail))
        .collect();
    let raw_sum: f64 = raw.iter().sum();
    // With weights w_i the expected edge count is roughly (sum w)^2 / (2 sum w)
    // = sum w / 2, so scaling the weights to sum to 2 * target_edges lands
    // the expectation near the target (clipping at p = 1 loses a little).
    let scale = 2.0 * target_edges / raw_sum;
    let weights: Vec<f64> = raw.iter().map(|w| w * scale).collect();
    let total: f64 = weights.iter().sum();
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    for a in 0..node_count {
        for b in (a + 1)..node_count {
            let p = (weights[a] * weights[b] / total).min(1.0);
            if rng.gen_range(0.0..1.0) < p {
                edges.push((a as NodeId, b as NodeId));
            }
        }
    }
    Graph::from_edges(node_count, &edges)
}

/// Shuffles `values` in place with a seeded RNG; used by null models.
pub fn seeded_shuffle<T>(values: &mut [T], seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    values.shuffle(&mut rng);
}
