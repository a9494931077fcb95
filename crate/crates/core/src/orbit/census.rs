//! Exhaustive-enumeration census of node and edge orbit degrees.
//!
//! These routines enumerate every two-, three-, and four-node subset of the
//! graph, classify each induced subgraph through the atlas, and accumulate
//! orbit degrees. They are quartic in the node count and exist as the
//! reference implementation the optimized counters are checked against, so
//! they stay deliberately direct: a dense adjacency matrix, a bitmask per
//! subset, and a precomputed classification table.

use super::atlas::OrbitAtlas;
use super::{EdgeOrbitVector, NodeOrbitVector};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodePair};

/// Largest graph the census routines accept.
pub const CENSUS_NODE_LIMIT: usize = 200;

/// Edge slots of a three-node subset, in bit order.
const SLOTS_3: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];
/// Edge slots of a four-node subset, in bit order.
const SLOTS_4: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Classification tables keyed by subset edge bitmask. An entry is `None`
/// when the mask does not form a connected graph (or, for edge entries,
/// when the slot's edge is absent from the mask).
struct CensusTables {
    node2: u8,
    node3: [Option<[u8; 3]>; 8],
    node4: [Option<[u8; 4]>; 64],
    edge3: [[Option<u8>; 3]; 8],
    edge4: [[Option<u8>; 6]; 64],
}

impl CensusTables {
    fn new(atlas: &OrbitAtlas) -> Self {
        let node2 = atlas
            .classify(2, &[(0, 1)])
            .expect("single edge classifies")
            .node_orbits[0] as u8;
        let mut node3 = [None; 8];
        let mut edge3 = [[None; 3]; 8];
        for mask in 0..8usize {
            let edges: Vec<(usize, usize)> = SLOTS_3
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask >> bit & 1 == 1)
                .map(|(_, &slot)| slot)
                .collect();
            if let Ok(class) = atlas.classify(3, &edges) {
                node3[mask] = Some([
                    class.node_orbits[0] as u8,
                    class.node_orbits[1] as u8,
                    class.node_orbits[2] as u8,
                ]);
                for (bit, slot) in SLOTS_3.iter().enumerate() {
                    edge3[mask][bit] = class
                        .edge_orbits
                        .iter()
                        .find(|(e, _)| e == slot)
                        .map(|&(_, orbit)| orbit as u8);
                }
            }
        }
        let mut node4 = [None; 64];
        let mut edge4 = [[None; 6]; 64];
        for mask in 0..64usize {
            let edges: Vec<(usize, usize)> = SLOTS_4
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask >> bit & 1 == 1)
                .map(|(_, &slot)| slot)
                .collect();
            if let Ok(class) = atlas.classify(4, &edges) {
                node4[mask] = Some([
                    class.node_orbits[0] as u8,
                    class.node_orbits[1] as u8,
                    class.node_orbits[2] as u8,
                    class.node_orbits[3] as u8,
                ]);
                for (bit, slot) in SLOTS_4.iter().enumerate() {
                    edge4[mask][bit] = class
                        .edge_orbits
                        .iter()
                        .find(|(e, _)| e == slot)
                        .map(|&(_, orbit)| orbit as u8);
                }
            }
        }
        CensusTables {
            node2,
            node3,
            node4,
            edge3,
            edge4,
        }
    }
}

fn dense_adjacency(graph: &Graph) -> Vec<Vec<bool>> {
    let n = graph.node_count();
    let mut adj = vec![vec![false; n]; n];
    for pair in graph.edge_list() {
        adj[pair.x() as usize][pair.y() as usize] = true;
        adj[pair.y() as usize][pair.x() as usize] = true;
    }
    adj
}

fn check_size(graph: &Graph) -> Result<()> {
    if graph.node_count() > CENSUS_NODE_LIMIT {
        return Err(Error::GraphTooLarge {
            nodes: graph.node_count(),
            limit: CENSUS_NODE_LIMIT,
        });
    }
    Ok(())
}

fn mask3(adj: &[Vec<bool>], nodes: [usize; 3]) -> usize {
    let mut mask = 0usize;
    for (bit, &(p, q)) in SLOTS_3.iter().enumerate() {
        if adj[nodes[p]][nodes[q]] {
            mask |= 1 << bit;
        }
    }
    mask
}

fn mask4(adj: &[Vec<bool>], nodes: [usize; 4]) -> usize {
    let mut mask = 0usize;
    for (bit, &(p, q)) in SLOTS_4.iter().enumerate() {
        if adj[nodes[p]][nodes[q]] {
            mask |= 1 << bit;
        }
    }
    mask
}

/// Node orbit degrees of every node, by direct subset enumeration.
pub fn census_node_vectors(graph: &Graph, atlas: &OrbitAtlas) -> Result<Vec<NodeOrbitVector>> {
    check_size(graph)?;
    let tables = CensusTables::new(atlas);
    let adj = dense_adjacency(graph);
    let n = graph.node_count();
    let mut out = vec![[0u64; 15]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if adj[i][j] {
                out[i][tables.node2 as usize] += 1;
                out[j][tables.node2 as usize] += 1;
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                if let Some(orbits) = tables.node3[mask3(&adj, [i, j, k])] {
                    out[i][orbits[0] as usize] += 1;
                    out[j][orbits[1] as usize] += 1;
                    out[k][orbits[2] as usize] += 1;
                }
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                for l in (k + 1)..n {
                    if let Some(orbits) = tables.node4[mask4(&adj, [i, j, k, l])] {
                        out[i][orbits[0] as usize] += 1;
                        out[j][orbits[1] as usize] += 1;
                        out[k][orbits[2] as usize] += 1;
                        out[l][orbits[3] as usize] += 1;
                    }
                }
            }
        }
    }
    Ok(out.into_iter().map(NodeOrbitVector).collect())
}

/// Edge orbit degrees of a node pair, by direct subset enumeration.
///
/// The pair itself is treated as connected regardless of whether the graph
/// holds that edge, so the vector is defined for observed edges and for
/// candidate pairs alike. All other adjacencies are taken from the graph.
pub fn census_edge_vector(
    graph: &Graph,
    atlas: &OrbitAtlas,
    pair: NodePair,
) -> Result<EdgeOrbitVector> {
    check_size(graph)?;
    let n = graph.node_count();
    graph.neighbors(pair.x())?;
    graph.neighbors(pair.y())?;
    let tables = CensusTables::new(atlas);
    let mut adj = dense_adjacency(graph);
    let x = pair.x() as usize;
    let y = pair.y() as usize;
    adj[x][y] = true;
    adj[y][x] = true;
    let mut out = [0u64; 12];
    let pair_slot_3 = |nodes: [usize; 3]| -> usize {
        let px = nodes.iter().position(|&v| v == x).unwrap();
        let py = nodes.iter().position(|&v| v == y).unwrap();
        let slot = (px.min(py), px.max(py));
        SLOTS_3.iter().position(|&s| s == slot).unwrap()
    };
    let pair_slot_4 = |nodes: [usize; 4]| -> usize {
        let px = nodes.iter().position(|&v| v == x).unwrap();
        let py = nodes.iter().position(|&v| v == y).unwrap();
        let slot = (px.min(py), px.max(py));
        SLOTS_4.iter().position(|&s| s == slot).unwrap()
    };
    for c in 0..n {
        if c == x || c == y {
            continue;
        }
        let mut nodes = [x, y, c];
        nodes.sort_unstable();
        let mask = mask3(&adj, nodes);
        if let Some(orbit) = tables.edge3[mask][pair_slot_3(nodes)] {
            out[orbit as usize] += 1;
        }
    }
    for c in 0..n {
        for d in (c + 1)..n {
            if c == x || c == y || d == x || d == y {
                continue;
            }
            let mut nodes = [x, y, c, d];
            nodes.sort_unstable();
            let mask = mask4(&adj, nodes);
            if let Some(orbit) = tables.edge4[mask][pair_slot_4(nodes)] {
                out[orbit as usize] += 1;
            }
        }
    }
    Ok(EdgeOrbitVector(out))
}
