//! Combinatorial orbit-degree counters that run in low-order polynomial
//! time per node or pair (roughly cubic in the relevant degrees), instead
//! of enumerating four-node subsets of the whole graph.
//!
//! Both counters use versioned stamp sets for constant-time membership
//! tests without per-query clearing, and both are exercised against the
//! enumeration census in the integration tests.

use rayon::prelude::*;

use super::atlas::OrbitAtlas;
use super::{EdgeOrbitVector, NodeOrbitVector};
use crate::error::Result;
use crate::graph::{Graph, NodeId, NodePair};

/// A set over node ids with O(1) insert/contains and O(1) clear, backed by
/// a version counter instead of element-wise clearing.
struct StampSet {
    version: u32,
    marks: Vec<u32>,
}

impl StampSet {
    fn new(capacity: usize) -> Self {
        StampSet {
            version: 1,
            marks: vec![0; capacity],
        }
    }

    fn clear(&mut self) {
        if self.version == u32::MAX {
            self.marks.fill(0);
            self.version = 0;
        }
        self.version += 1;
    }

    #[inline]
    fn insert(&mut self, v: NodeId) {
        self.marks[v as usize] = self.version;
    }

    #[inline]
    fn contains(&self, v: NodeId) -> bool {
        self.marks[v as usize] == self.version
    }
}

fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

fn choose3_i128(n: u64) -> i128 {
    let n = n as i128;
    n * (n - 1) * (n - 2) / 6
}

/// Reusable node-orbit counter. Holds per-graph scratch buffers so batch
/// counting does not reallocate.
pub struct NodeOrbitCounter {
    in_neighborhood: StampSet,
    in_probe: StampSet,
    in_outside: StampSet,
    common_in_neighborhood: Vec<u64>,
    outside_scratch: Vec<NodeId>,
}

impl NodeOrbitCounter {
    pub fn new(graph: &Graph) -> Self {
        let n = graph.node_count();
        NodeOrbitCounter {
            in_neighborhood: StampSet::new(n),
            in_probe: StampSet::new(n),
            in_outside: StampSet::new(n),
            common_in_neighborhood: Vec::new(),
            outside_scratch: Vec::new(),
        }
    }

    /// Counts the node orbit degrees of `x`, label-indexed through `atlas`.
    pub fn count(&mut self, graph: &Graph, atlas: &OrbitAtlas, x: NodeId) -> Result<NodeOrbitVector> {
        let hood = graph.neighbors(x)?;
        let k = hood.len() as u64;
        let mut counts = [0u64; 15];

        self.in_neighborhood.clear();
        for &b in hood {
            self.in_neighborhood.insert(b);
        }

        // Degree of each neighbor inside the neighborhood graph, and the
        // count of its neighbors outside the closed neighborhood.
        self.common_in_neighborhood.clear();
        self.common_in_neighborhood.resize(hood.len(), 0);
        let mut triangle_ends = 0u64;
        let mut wedges_in_hood = 0u64;
        let mut outside_reach = 0u64;
        for (ai, &a) in hood.iter().enumerate() {
            let mut common = 0u64;
            for &w in graph.adj(a) {
                if self.in_neighborhood.contains(w) {
                    common += 1;
                }
            }
            self.common_in_neighborhood[ai] = common;
            triangle_ends += common;
            wedges_in_hood += choose2(common);
            outside_reach += graph.adj(a).len() as u64 - 1 - common;
        }
        let triangles = triangle_ends / 2;

        counts[0] = k; // single-edge endpoint
        counts[1] = outside_reach; // three-path end
        counts[2] = choose2(k) - triangles; // three-path center
        counts[3] = triangles; // triangle node

        let mut claw_leaf = 0u64;
        let mut paw_pendant = 0u64;
        let mut path4_end = 0u64;
        let mut path4_middle = 0u64;
        let mut cycle4 = 0u64;
        let mut paw_rim = 0u64;
        let mut paw_attachment = 0u64;
        let mut diamond_rim = 0u64;
        let mut diamond_hub = 0u64;
        let mut clique4_triples = 0u64;

        for (ai, &a) in hood.iter().enumerate() {
            self.in_probe.clear();
            for &w in graph.adj(a) {
                self.in_probe.insert(w);
            }

            // Neighbors of `a` strictly outside the closed neighborhood of
            // `x`: candidates for claw leaves, pendant triangles, and
            // four-path continuations.
            self.outside_scratch.clear();
            for &w in graph.adj(a) {
                if w != x && !self.in_neighborhood.contains(w) {
                    self.outside_scratch.push(w);
                }
            }
            let outside_count = self.outside_scratch.len() as u64;

            self.in_outside.clear();
            for &c in &self.outside_scratch {
                self.in_outside.insert(c);
            }
            let mut outside_edge_ends = 0u64;
            let mut path4_tails = 0u64;
            for &c in &self.outside_scratch {
                for &w in graph.adj(c) {
                    if self.in_outside.contains(w) {
                        outside_edge_ends += 1;
                    }
                    if w != x
                        && w != a
                        && !self.in_neighborhood.contains(w)
                        && !self.in_probe.contains(w)
                    {
                        path4_tails += 1;
                    }
                }
            }
            let outside_edges = outside_edge_ends / 2;
            claw_leaf += choose2(outside_count) - outside_edges;
            paw_pendant += outside_edges;
            path4_end += path4_tails;

            // Pairs (a, c) of neighbors of x drive the remaining orbits.
            // With the neighbors of `a` stamped, one walk over the
            // neighbors of `c` yields every count that depends on the pair.
            let common_a = self.common_in_neighborhood[ai];
            let mut hood_triangles_at_a = 0u64;
            for (ci, &c) in hood.iter().enumerate() {
                if ci == ai {
                    continue;
                }
                let adjacent = self.in_probe.contains(c);
                let mut fresh = 0u64; // neighbors of c new to the picture
                let mut shared_outside = 0u64; // common neighbors outside
                let mut shared_inside = 0u64; // common neighbors inside
                for &w in graph.adj(c) {
                    let in_hood = self.in_neighborhood.contains(w);
                    let in_probe = self.in_probe.contains(w);
                    if !in_hood && !in_probe && w != x && w != a {
                        fresh += 1;
                    } else if in_probe && !in_hood && w != x {
                        shared_outside += 1;
                    } else if in_probe && in_hood {
                        shared_inside += 1;
                    }
                }
                if adjacent {
                    paw_rim += fresh;
                    hood_triangles_at_a += shared_inside;
                    if ai < ci {
                        diamond_rim += shared_outside;
                        // Nodes of the neighborhood adjacent to neither end
                        // of this edge, by inclusion-exclusion; signed
                        // arithmetic because intermediate terms may dip
                        // below zero.
                        let common_c = self.common_in_neighborhood[ci];
                        let pendants = (k as i64 - 2) - (common_a as i64 - 1)
                            - (common_c as i64 - 1)
                            + shared_inside as i64;
                        debug_assert!(pendants >= 0);
                        paw_attachment += pendants as u64;
                    }
                } else {
                    path4_middle += fresh;
                    if ai < ci {
                        cycle4 += shared_outside;
                    }
                }
            }
            // Triangles within the neighborhood that touch `a`, counted
            // once per base edge at `a`.
            let hood_triangles = hood_triangles_at_a / 2;
            diamond_hub += choose2(common_a) - hood_triangles;
            clique4_triples += hood_triangles;
        }

        let neighborhood_triangles = clique4_triples / 3;
        // Independent triples in the neighborhood, by inclusion-exclusion
        // over edges, edge pairs, and triangles of the neighborhood graph.
        let independent_triples = choose3_i128(k) - (triangles as i128) * (k as i128 - 2)
            + wedges_in_hood as i128
            - neighborhood_triangles as i128;
        debug_assert!(independent_triples >= 0);

        counts[4] = claw_leaf;
        counts[5] = independent_triples as u64;
        counts[6] = path4_end;
        counts[7] = path4_middle;
        counts[8] = cycle4;
        counts[9] = paw_rim;
        counts[10] = paw_attachment;
        counts[11] = paw_pendant;
        counts[12] = diamond_rim;
        counts[13] = diamond_hub;
        counts[14] = neighborhood_triangles;
        Ok(NodeOrbitVector(atlas.node_counts_to_labels(&counts)))
    }
}

/// Reusable edge-orbit counter for node pairs.
pub struct EdgeOrbitCounter {
    side: StampSet,
    side_class: Vec<u8>,
    union_scratch: Vec<NodeId>,
}

const SIDE_X: u8 = 0;
const SIDE_Y: u8 = 1;
const SIDE_BOTH: u8 = 2;

impl EdgeOrbitCounter {
    pub fn new(graph: &Graph) -> Self {
        let n = graph.node_count();
        EdgeOrbitCounter {
            side: StampSet::new(n),
            side_class: vec![0; n],
            union_scratch: Vec::new(),
        }
    }

    /// Counts the edge orbit degrees of the ordered pair `(x, y)`. The pair
    /// is treated as connected regardless of whether the graph holds that
    /// edge; every other adjacency is read from the graph. The result is
    /// the same for both orders of the pair.
    pub fn count(
        &mut self,
        graph: &Graph,
        atlas: &OrbitAtlas,
        x: NodeId,
        y: NodeId,
    ) -> Result<EdgeOrbitVector> {
        let nx = graph.neighbors(x)?;
        let ny = graph.neighbors(y)?;
        if x == y {
            return Err(crate::error::Error::InvalidPair(format!(
                "pair endpoints must differ, got ({x}, {y})"
            )));
        }

        // Classify the merged neighborhoods into x-only, y-only, and both.
        self.side.clear();
        self.union_scratch.clear();
        for &w in nx {
            if w == y {
                continue;
            }
            self.side.insert(w);
            self.side_class[w as usize] = SIDE_X;
            self.union_scratch.push(w);
        }
        for &w in ny {
            if w == x {
                continue;
            }
            if self.side.contains(w) {
                self.side_class[w as usize] = SIDE_BOTH;
            } else {
                self.side.insert(w);
                self.side_class[w as usize] = SIDE_Y;
                self.union_scratch.push(w);
            }
        }

        let mut count_x = 0u64;
        let mut count_y = 0u64;
        let mut count_both = 0u64;
        for &c in &self.union_scratch {
            match self.side_class[c as usize] {
                SIDE_X => count_x += 1,
                SIDE_Y => count_y += 1,
                _ => count_both += 1,
            }
        }

        // Adjacency among the classified nodes, one counter per unordered
        // side combination, plus the tail sums (neighbors leading outside
        // the picture) split by side.
        let mut edges_xx = 0u64;
        let mut edges_yy = 0u64;
        let mut edges_xy = 0u64;
        let mut edges_xb = 0u64;
        let mut edges_yb = 0u64;
        let mut edges_bb = 0u64;
        let mut tails_single = 0u64;
        let mut tails_both = 0u64;
        for &c in &self.union_scratch {
            let class_c = self.side_class[c as usize];
            let mut matched = 0u64;
            for &w in graph.adj(c) {
                if w == x || w == y {
                    continue;
                }
                if !self.side.contains(w) {
                    continue;
                }
                matched += 1;
                if w > c {
                    match (
                        class_c.min(self.side_class[w as usize]),
                        class_c.max(self.side_class[w as usize]),
                    ) {
                        (SIDE_X, SIDE_X) => edges_xx += 1,
                        (SIDE_Y, SIDE_Y) => edges_yy += 1,
                        (SIDE_X, SIDE_Y) => edges_xy += 1,
                        (SIDE_X, SIDE_BOTH) => edges_xb += 1,
                        (SIDE_Y, SIDE_BOTH) => edges_yb += 1,
                        _ => edges_bb += 1,
                    }
                }
            }
            let degree = graph.adj(c).len() as u64;
            if class_c == SIDE_BOTH {
                tails_both += degree - matched - 2;
            } else {
                tails_single += degree - matched - 1;
            }
        }

        let mut counts = [0u64; 12];
        counts[0] = count_x + count_y; // three-path edge
        counts[1] = count_both; // triangle edge
        counts[2] = choose2(count_x) - edges_xx + choose2(count_y) - edges_yy; // claw edge
        counts[3] = count_x * count_y - edges_xy; // four-path middle edge
        counts[4] = tails_single; // four-path end edge
        counts[5] = edges_xx + edges_yy; // paw pendant edge
        counts[6] = tails_both; // paw opposite edge
        counts[7] = count_x * count_both - edges_xb + count_y * count_both - edges_yb; // paw incident edge
        counts[8] = edges_xy; // four-cycle edge
        counts[9] = choose2(count_both) - edges_bb; // diamond chord
        counts[10] = edges_xb + edges_yb; // diamond rim edge
        counts[11] = edges_bb; // four-clique edge
        Ok(EdgeOrbitVector(atlas.edge_counts_to_labels(&counts)))
    }
}

/// Node orbit degrees of a single node.
pub fn node_orbit_degrees(graph: &Graph, atlas: &OrbitAtlas, node: NodeId) -> Result<NodeOrbitVector> {
    NodeOrbitCounter::new(graph).count(graph, atlas, node)
}

/// Node orbit degrees of every node, computed in parallel.
pub fn node_orbit_degrees_all(graph: &Graph, atlas: &OrbitAtlas) -> Vec<NodeOrbitVector> {
    (0..graph.node_count() as NodeId)
        .into_par_iter()
        .map_init(
            || NodeOrbitCounter::new(graph),
            |counter, v| {
                counter
                    .count(graph, atlas, v)
                    .expect("node ids from 0..node_count are valid")
            },
        )
        .collect()
}

/// Edge orbit degrees of a single pair.
pub fn edge_orbit_degrees(graph: &Graph, atlas: &OrbitAtlas, pair: NodePair) -> Result<EdgeOrbitVector> {
    EdgeOrbitCounter::new(graph).count(graph, atlas, pair.x(), pair.y())
}

/// Edge orbit degrees of many pairs, computed in parallel in input order.
pub fn edge_orbit_degrees_batch(
    graph: &Graph,
    atlas: &OrbitAtlas,
    pairs: &[NodePair],
) -> Result<Vec<EdgeOrbitVector>> {
    for pair in pairs {
        graph.neighbors(pair.x())?;
        graph.neighbors(pair.y())?;
    }
    Ok(pairs
        .par_iter()
        .map_init(
            || EdgeOrbitCounter::new(graph),
            |counter, pair| {
                counter
                    .count(graph, atlas, pair.x(), pair.y())
                    .expect("pairs were bounds-checked")
            },
        )
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::{EdgeOrbit, NodeOrbit};

    fn graph(edges: &[(u32, u32)], n: u32) -> Graph {
        Graph::from_edges(n as usize, edges).unwrap()
    }

    fn expect_nodes(v: &NodeOrbitVector, pairs: &[(NodeOrbit, u64)]) {
        let mut expect = [0u64; 15];
        for &(orbit, count) in pairs {
            expect[orbit as usize] = count;
        }
        assert_eq!(v.0, expect);
    }

    fn expect_edges(v: &EdgeOrbitVector, pairs: &[(EdgeOrbit, u64)]) {
        let mut expect = [0u64; 12];
        for &(orbit, count) in pairs {
            expect[orbit as usize] = count;
        }
        assert_eq!(v.0, expect);
    }

    #[test]
    fn paw_node_orbits() {
        // Triangle {0, 1, 2} with pendant 3 attached at 0.
        let g = graph(&[(0, 1), (0, 2), (1, 2), (0, 3)], 4);
        let atlas = OrbitAtlas::standard();
        let all = node_orbit_degrees_all(&g, &atlas);
        expect_nodes(
            &all[0],
            &[
                (NodeOrbit::N1, 3),
                (NodeOrbit::N3, 2),
                (NodeOrbit::N4, 1),
                (NodeOrbit::N11, 1),
            ],
        );
        expect_nodes(
            &all[1],
            &[
                (NodeOrbit::N1, 2),
                (NodeOrbit::N2, 1),
                (NodeOrbit::N4, 1),
                (NodeOrbit::N10, 1),
            ],
        );
        expect_nodes(
            &all[3],
            &[(NodeOrbit::N1, 1), (NodeOrbit::N2, 2), (NodeOrbit::N12, 1)],
        );
    }

    #[test]
    fn diamond_node_orbits() {
        // Hubs 0 and 1; rims 2 and 3.
        let g = graph(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)], 4);
        let atlas = OrbitAtlas::standard();
        let all = node_orbit_degrees_all(&g, &atlas);
        expect_nodes(
            &all[0],
            &[
                (NodeOrbit::N1, 3),
                (NodeOrbit::N3, 1),
                (NodeOrbit::N4, 2),
                (NodeOrbit::N14, 1),
            ],
        );
        expect_nodes(
            &all[2],
            &[
                (NodeOrbit::N1, 2),
                (NodeOrbit::N2, 2),
                (NodeOrbit::N4, 1),
                (NodeOrbit::N13, 1),
            ],
        );
    }

    #[test]
    fn path4_node_orbits() {
        let g = graph(&[(0, 1), (1, 2), (2, 3)], 4);
        let atlas = OrbitAtlas::standard();
        let all = node_orbit_degrees_all(&g, &atlas);
        expect_nodes(
            &all[0],
            &[(NodeOrbit::N1, 1), (NodeOrbit::N2, 1), (NodeOrbit::N7, 1)],
        );
        expect_nodes(
            &all[1],
            &[
                (NodeOrbit::N1, 2),
                (NodeOrbit::N2, 1),
                (NodeOrbit::N3, 1),
                (NodeOrbit::N8, 1),
            ],
        );
    }

    #[test]
    fn cycle4_node_orbits() {
        let g = graph(&[(0, 1), (1, 2), (2, 3), (0, 3)], 4);
        let atlas = OrbitAtlas::standard();
        for v in node_orbit_degrees_all(&g, &atlas) {
            expect_nodes(
                &v,
                &[
                    (NodeOrbit::N1, 2),
                    (NodeOrbit::N2, 2),
                    (NodeOrbit::N3, 1),
                    (NodeOrbit::N9, 1),
                ],
            );
        }
    }

    #[test]
    fn clique4_node_orbits() {
        let g = graph(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 4);
        let atlas = OrbitAtlas::standard();
        for v in node_orbit_degrees_all(&g, &atlas) {
            expect_nodes(
                &v,
                &[(NodeOrbit::N1, 3), (NodeOrbit::N4, 3), (NodeOrbit::N15, 1)],
            );
        }
    }

    #[test]
    fn claw_node_orbits() {
        let g = graph(&[(0, 1), (0, 2), (0, 3)], 4);
        let atlas = OrbitAtlas::standard();
        let all = node_orbit_degrees_all(&g, &atlas);
        expect_nodes(
            &all[0],
            &[(NodeOrbit::N1, 3), (NodeOrbit::N3, 3), (NodeOrbit::N6, 1)],
        );
        expect_nodes(
            &all[1],
            &[(NodeOrbit::N1, 1), (NodeOrbit::N2, 2), (NodeOrbit::N5, 1)],
        );
    }

    #[test]
    fn path4_pair_orbits() {
        let g = graph(&[(0, 1), (1, 2), (2, 3)], 4);
        let atlas = OrbitAtlas::standard();
        let v = edge_orbit_degrees(&g, &atlas, NodePair::new(0, 2).unwrap()).unwrap();
        expect_edges(
            &v,
            &[(EdgeOrbit::M1, 1), (EdgeOrbit::M2, 1), (EdgeOrbit::M8, 1)],
        );
        let v = edge_orbit_degrees(&g, &atlas, NodePair::new(0, 1).unwrap()).unwrap();
        expect_edges(&v, &[(EdgeOrbit::M1, 1), (EdgeOrbit::M5, 1)]);
    }

    #[test]
    fn clique4_pair_orbits() {
        let g = graph(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 4);
        let atlas = OrbitAtlas::standard();
        let v = edge_orbit_degrees(&g, &atlas, NodePair::new(2, 3).unwrap()).unwrap();
        expect_edges(&v, &[(EdgeOrbit::M2, 2), (EdgeOrbit::M12, 1)]);
    }

    #[test]
    fn counting_order_does_not_matter() {
        let g = graph(&[(0, 1), (1, 2), (2, 3), (0, 3), (1, 3), (3, 4)], 5);
        let atlas = OrbitAtlas::standard();
        let mut counter = EdgeOrbitCounter::new(&g);
        for a in 0..5u32 {
            for b in (a + 1)..5u32 {
                let forward = counter.count(&g, &atlas, a, b).unwrap();
                let backward = counter.count(&g, &atlas, b, a).unwrap();
                assert_eq!(forward.0, backward.0, "pair ({a}, {b})");
            }
        }
    }

    #[test]
    fn batch_matches_single_calls() {
        let g = graph(&[(0, 1), (1, 2), (2, 3), (0, 3), (1, 3)], 4);
        let atlas = OrbitAtlas::standard();
        let pairs: Vec<NodePair> = (0..4u32)
            .flat_map(|a| ((a + 1)..4u32).map(move |b| NodePair::new(a, b).unwrap()))
            .collect();
        let batch = edge_orbit_degrees_batch(&g, &atlas, &pairs).unwrap();
        for (pair, vector) in pairs.iter().zip(&batch) {
            let single = edge_orbit_degrees(&g, &atlas, *pair).unwrap();
            assert_eq!(single.0, vector.0);
        }
    }

    #[test]
    fn rejects_out_of_range_nodes() {
        let g = graph(&[(0, 1)], 2);
        let atlas = OrbitAtlas::standard();
        assert!(node_orbit_degrees(&g, &atlas, 7).is_err());
        assert!(EdgeOrbitCounter::new(&g).count(&g, &atlas, 0, 0).is_err());
    }
}
