//! Classical link-prediction indices and their exact decompositions into
//! orbit degrees.
//!
//! Several of the indices are, by construction, arithmetic combinations of
//! orbit degrees of the candidate pair. Those identities are checked
//! bit-exactly by [`check_decomposition_identities`], which computes both
//! sides through unrelated code paths.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodePair};
use crate::orbit::{edge_orbit_degrees, node_orbit_degrees, EdgeOrbit, NodeOrbit, OrbitAtlas};

/// The classical indices available as baselines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassicalIndex {
    /// Product of endpoint degrees.
    PreferentialAttachment,
    /// Number of common neighbors.
    CommonNeighbors,
    /// Common neighbors weighted by inverse log degree.
    AdamicAdar,
    /// Common neighbors weighted by inverse degree.
    ResourceAllocation,
    /// Common neighbors times the number of edges among them.
    CommunityCommonNeighbors,
    /// Number of three-hop paths whose interior avoids the endpoints.
    PathsOfLengthThree,
    /// Three-hop paths weighted by inverse interior degrees.
    WeightedPathsOfLengthThree,
    /// Walk counts of lengths two and up, geometrically damped.
    TruncatedKatz,
    /// Common neighbors relative to the triangle mass at both endpoints.
    MutualSimilarity,
}

impl ClassicalIndex {
    pub const ALL: [ClassicalIndex; 9] = [
        ClassicalIndex::PreferentialAttachment,
        ClassicalIndex::CommonNeighbors,
        ClassicalIndex::AdamicAdar,
        ClassicalIndex::ResourceAllocation,
        ClassicalIndex::CommunityCommonNeighbors,
        ClassicalIndex::PathsOfLengthThree,
        ClassicalIndex::WeightedPathsOfLengthThree,
        ClassicalIndex::TruncatedKatz,
        ClassicalIndex::MutualSimilarity,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            ClassicalIndex::PreferentialAttachment => "pa",
            ClassicalIndex::CommonNeighbors => "cn",
            ClassicalIndex::AdamicAdar => "aa",
            ClassicalIndex::ResourceAllocation => "ra",
            ClassicalIndex::CommunityCommonNeighbors => "car",
            ClassicalIndex::PathsOfLengthThree => "cn-l3",
            ClassicalIndex::WeightedPathsOfLengthThree => "ra-l3",
            ClassicalIndex::TruncatedKatz => "katz",
            ClassicalIndex::MutualSimilarity => "ms",
        }
    }

    pub fn from_id(id: &str) -> Option<ClassicalIndex> {
        ClassicalIndex::ALL.iter().copied().find(|i| i.id() == id)
    }
}

/// Tunables for the indices that have any.
#[derive(Debug, Clone)]
pub struct IndexParams {
    /// Damping factor of the truncated Katz index.
    pub katz_beta: f64,
    /// Longest walk length the truncated Katz index accumulates.
    pub katz_max_length: usize,
}

impl Default for IndexParams {
    fn default() -> Self {
        IndexParams {
            katz_beta: 0.01,
            katz_max_length: 5,
        }
    }
}

fn common_neighbors(graph: &Graph, x: u32, y: u32) -> Vec<u32> {
    let nx = graph.adj(x);
    let ny = graph.adj(y);
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < nx.len() && j < ny.len() {
        match nx[i].cmp(&ny[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(nx[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Triangles incident to a node, counted directly from adjacency.
fn triangles_at(graph: &Graph, x: u32) -> u64 {
    let hood = graph.adj(x);
    let mut ends = 0u64;
    for &b in hood {
        for &w in graph.adj(b) {
            if w != x && graph.connected(x, w) && w > b {
                ends += 1;
            }
        }
    }
    ends
}

/// Interior node pairs of three-hop paths between `x` and `y`: ordered
/// pairs `(i, j)` with `i` adjacent to `x`, `j` adjacent to `y`, `i`
/// adjacent to `j`, and neither interior node equal to an endpoint.
fn three_hop_interiors(graph: &Graph, x: u32, y: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for &i in graph.adj(x) {
        if i == y {
            continue;
        }
        for &j in graph.adj(i) {
            if j == x || j == y {
                continue;
            }
            if graph.connected(j, y) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Scores one candidate pair with one index. The pair itself is never
/// consulted as an edge: every index is a function of the remaining
/// structure, so scores are comparable between observed and candidate
/// pairs.
pub fn score(
    graph: &Graph,
    index: ClassicalIndex,
    pair: NodePair,
    params: &IndexParams,
) -> Result<f64> {
    let x = pair.x();
    let y = pair.y();
    graph.neighbors(x)?;
    graph.neighbors(y)?;
    let value = match index {
        ClassicalIndex::PreferentialAttachment => {
            graph.adj(x).len() as f64 * graph.adj(y).len() as f64
        }
        ClassicalIndex::CommonNeighbors => common_neighbors(graph, x, y).len() as f64,
        ClassicalIndex::AdamicAdar => common_neighbors(graph, x, y)
            .iter()
            .map(|&z| 1.0 / (graph.adj(z).len() as f64).ln())
            .sum(),
        ClassicalIndex::ResourceAllocation => common_neighbors(graph, x, y)
            .iter()
            .map(|&z| 1.0 / graph.adj(z).len() as f64)
            .sum(),
        ClassicalIndex::CommunityCommonNeighbors => {
            let shared = common_neighbors(graph, x, y);
            let mut inner_ends = 0u64;
            for &a in &shared {
                for &w in graph.adj(a) {
                    if w > a && shared.binary_search(&w).is_ok() {
                        inner_ends += 1;
                    }
                }
            }
            shared.len() as f64 * inner_ends as f64
        }
        ClassicalIndex::PathsOfLengthThree => three_hop_interiors(graph, x, y).len() as f64,
        ClassicalIndex::WeightedPathsOfLengthThree => three_hop_interiors(graph, x, y)
            .iter()
            .map(|&(i, j)| 1.0 / (graph.adj(i).len() as f64 * graph.adj(j).len() as f64))
            .sum(),
        ClassicalIndex::TruncatedKatz => {
            if params.katz_beta <= 0.0 {
                return Err(Error::Config(format!(
                    "katz damping must be positive, got {}",
                    params.katz_beta
                )));
            }
            let n = graph.node_count();
            let mut walks = vec![0.0f64; n];
            walks[x as usize] = 1.0;
            let mut next = vec![0.0f64; n];
            let mut total = 0.0;
            let mut damp = 1.0;
            for length in 1..=params.katz_max_length {
                next.fill(0.0);
                for v in 0..n as u32 {
                    let w = walks[v as usize];
                    if w == 0.0 {
                        continue;
                    }
                    for &u in graph.adj(v) {
                        next[u as usize] += w;
                    }
                }
                std::mem::swap(&mut walks, &mut next);
                damp *= params.katz_beta;
                if length >= 2 {
                    total += damp * walks[y as usize];
                }
            }
            total
        }
        ClassicalIndex::MutualSimilarity => {
            let shared = common_neighbors(graph, x, y).len() as u64;
            let denominator = shared + triangles_at(graph, x) + triangles_at(graph, y);
            if denominator == 0 {
                0.0
            } else {
                shared as f64 / denominator as f64
            }
        }
    };
    Ok(value)
}

/// Scores many pairs in parallel, preserving input order.
pub fn score_many(
    graph: &Graph,
    index: ClassicalIndex,
    pairs: &[NodePair],
    params: &IndexParams,
) -> Result<Vec<f64>> {
    for pair in pairs {
        graph.neighbors(pair.x())?;
        graph.neighbors(pair.y())?;
    }
    pairs
        .par_iter()
        .map(|&pair| score(graph, index, pair, params))
        .collect()
}

/// Verifies, bit-exactly, every index that decomposes into orbit degrees
/// of the pair: degree products, common neighbors, the community index,
/// three-hop path counts, and the triangle-normalized similarity.
pub fn check_decomposition_identities(
    graph: &Graph,
    atlas: &OrbitAtlas,
    pairs: &[NodePair],
) -> Result<()> {
    let params = IndexParams::default();
    for &pair in pairs {
        let (x, y) = (pair.x(), pair.y());
        let edges = edge_orbit_degrees(graph, atlas, pair)?;
        let node_x = node_orbit_degrees(graph, atlas, x)?;
        let node_y = node_orbit_degrees(graph, atlas, y)?;
        let m = |orbit: EdgeOrbit| edges.0[orbit as usize];
        let check = |identity: &'static str, lhs: f64, rhs: f64| -> Result<()> {
            if lhs != rhs {
                return Err(Error::IdentityViolation {
                    identity,
                    x: graph.label_of(x),
                    y: graph.label_of(y),
                    lhs,
                    rhs,
                });
            }
            Ok(())
        };

        let degree_product =
            node_x.0[NodeOrbit::N1 as usize] as f64 * node_y.0[NodeOrbit::N1 as usize] as f64;
        check(
            "degree product = product of single-edge orbit degrees",
            score(graph, ClassicalIndex::PreferentialAttachment, pair, &params)?,
            degree_product,
        )?;
        check(
            "common neighbors = triangle edge orbit degree",
            score(graph, ClassicalIndex::CommonNeighbors, pair, &params)?,
            m(EdgeOrbit::M2) as f64,
        )?;
        check(
            "community index = triangle orbit times four-clique orbit",
            score(
                graph,
                ClassicalIndex::CommunityCommonNeighbors,
                pair,
                &params,
            )?,
            m(EdgeOrbit::M2) as f64 * m(EdgeOrbit::M12) as f64,
        )?;
        check(
            "three-hop paths = four-cycle + diamond rim + twice four-clique",
            score(graph, ClassicalIndex::PathsOfLengthThree, pair, &params)?,
            (m(EdgeOrbit::M9) + m(EdgeOrbit::M11) + 2 * m(EdgeOrbit::M12)) as f64,
        )?;
        let shared = m(EdgeOrbit::M2);
        let denominator = shared
            + node_x.0[NodeOrbit::N4 as usize]
            + node_y.0[NodeOrbit::N4 as usize];
        let expected = if denominator == 0 {
            0.0
        } else {
            shared as f64 / denominator as f64
        };
        check(
            "mutual similarity = triangle orbit over triangle mass",
            score(graph, ClassicalIndex::MutualSimilarity, pair, &params)?,
            expected,
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kite() -> Graph {
        // Diamond {0, 1, 2, 3} with a tail 3-4; irregular enough that
        // every index takes a distinct value somewhere.
        Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (3, 4)]).unwrap()
    }

    #[test]
    fn ids_round_trip() {
        for index in ClassicalIndex::ALL {
            assert_eq!(ClassicalIndex::from_id(index.id()), Some(index));
        }
        assert_eq!(ClassicalIndex::from_id("nope"), None);
    }

    #[test]
    fn degree_product_and_common_neighbors() {
        let g = kite();
        let params = IndexParams::default();
        let pair = NodePair::new(2, 3).unwrap();
        assert_eq!(
            score(&g, ClassicalIndex::PreferentialAttachment, pair, &params).unwrap(),
            2.0 * 3.0
        );
        assert_eq!(
            score(&g, ClassicalIndex::CommonNeighbors, pair, &params).unwrap(),
            2.0
        );
    }

    #[test]
    fn weighted_counts_on_known_graph() {
        let g = kite();
        let params = IndexParams::default();
        let pair = NodePair::new(2, 3).unwrap();
        // Common neighbors of 2 and 3 are nodes 0 and 1, both of degree 3.
        let aa = score(&g, ClassicalIndex::AdamicAdar, pair, &params).unwrap();
        assert!((aa - 2.0 / 3f64.ln()).abs() < 1e-12);
        let ra = score(&g, ClassicalIndex::ResourceAllocation, pair, &params).unwrap();
        assert!((ra - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn community_index_counts_edges_among_shared_neighbors() {
        let g = kite();
        let params = IndexParams::default();
        let pair = NodePair::new(2, 3).unwrap();
        // Shared neighbors 0 and 1 are adjacent: one inner edge.
        assert_eq!(
            score(&g, ClassicalIndex::CommunityCommonNeighbors, pair, &params).unwrap(),
            2.0
        );
    }

    #[test]
    fn three_hop_paths_avoid_endpoints() {
        let g = kite();
        let params = IndexParams::default();
        // Paths 4-3-0-2 and 4-3-1-2 are the only three-hop routes from 4
        // to 2 that avoid revisiting an endpoint.
        let pair = NodePair::new(2, 4).unwrap();
        assert_eq!(
            score(&g, ClassicalIndex::PathsOfLengthThree, pair, &params).unwrap(),
            2.0
        );
        let weighted =
            score(&g, ClassicalIndex::WeightedPathsOfLengthThree, pair, &params).unwrap();
        // Both paths pass through node 3 and one of nodes 0, 1, all of
        // degree 3.
        assert!((weighted - 2.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn truncated_katz_sums_damped_walks() {
        // Path 0-1-2: one walk of length 2 from 0 to 2, none of length 3,
        // two of length 4 (0-1-0-1-2 and 0-1-2-1-2), none of length 5.
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let params = IndexParams::default();
        let pair = NodePair::new(0, 2).unwrap();
        let expected = 0.01f64.powi(2) + 2.0 * 0.01f64.powi(4);
        let katz = score(&g, ClassicalIndex::TruncatedKatz, pair, &params).unwrap();
        assert!((katz - expected).abs() < 1e-15);
    }

    #[test]
    fn mutual_similarity_handles_zero_denominator() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let params = IndexParams::default();
        let pair = NodePair::new(0, 2).unwrap();
        assert_eq!(
            score(&g, ClassicalIndex::MutualSimilarity, pair, &params).unwrap(),
            0.0
        );
    }

    #[test]
    fn batch_scoring_matches_single() {
        let g = kite();
        let params = IndexParams::default();
        let pairs: Vec<NodePair> = (0..5u32)
            .flat_map(|a| ((a + 1)..5u32).map(move |b| NodePair::new(a, b).unwrap()))
            .collect();
        for index in ClassicalIndex::ALL {
            let batch = score_many(&g, index, &pairs, &params).unwrap();
            for (pair, got) in pairs.iter().zip(&batch) {
                assert_eq!(*got, score(&g, index, *pair, &params).unwrap());
            }
        }
    }

    #[test]
    fn identities_hold_on_small_graph() {
        let g = kite();
        let atlas = OrbitAtlas::standard();
        let pairs: Vec<NodePair> = (0..5u32)
            .flat_map(|a| ((a + 1)..5u32).map(move |b| NodePair::new(a, b).unwrap()))
            .collect();
        check_decomposition_identities(&g, &atlas, &pairs).unwrap();
    }
}
