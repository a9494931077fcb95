//! Simple undirected graphs with sorted adjacency lists.
//!
//! Nodes are identified by dense ids `0..node_count` assigned at ingestion;
//! the original integer labels from the edge list are retained so that every
//! serialized artifact can report pairs in the input's own vocabulary.
//! Graphs are immutable after construction and safe to share across threads.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Dense node identifier assigned at ingestion.
pub type NodeId = u32;

/// Options controlling edge-list ingestion.
#[derive(Debug, Clone, Copy, Default)]
pub struct IngestOptions {
    /// Accept lines with more than two columns and ignore the extras
    /// (useful for weighted edge lists where weights are discarded).
    pub allow_extra_columns: bool,
}

/// An unordered pair of distinct nodes, stored with the smaller id first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodePair {
    x: NodeId,
    y: NodeId,
}

impl NodePair {
    /// Builds a canonical pair; equal endpoints are rejected.
    pub fn new(a: NodeId, b: NodeId) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidPair(format!(
                "pair endpoints must differ, got ({a}, {b})"
            )));
        }
        Ok(if a < b {
            NodePair { x: a, y: b }
        } else {
            NodePair { x: b, y: a }
        })
    }

    pub fn x(&self) -> NodeId {
        self.x
    }

    pub fn y(&self) -> NodeId {
        self.y
    }
}

/// An immutable simple undirected graph.
#[derive(Debug, Clone)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    edge_count: usize,
    labels: Vec<i64>,
    label_index: BTreeMap<i64, NodeId>,
}

impl Graph {
    /// Parses a text edge list: one edge per line, two integer tokens
    /// separated by whitespace or commas. Blank lines and lines starting
    /// with `#` or `%` are skipped. Self-loops are dropped, duplicate and
    /// reversed duplicates are merged. Returns an error when a line fails
    /// to parse (with its 1-based line number) or when no edges remain.
    pub fn load_edge_list<R: BufRead>(reader: R, options: IngestOptions) -> Result<Self> {
        let mut raw_edges: Vec<(i64, i64)> = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
                continue;
            }
            let tokens: Vec<&str> = trimmed
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .collect();
            if tokens.len() < 2 || (tokens.len() > 2 && !options.allow_extra_columns) {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected two integer tokens, got {}", tokens.len()),
                });
            }
            let parse = |t: &str| -> Result<i64> {
                t.parse::<i64>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("invalid integer token {t:?}"),
                })
            };
            let a = parse(tokens[0])?;
            let b = parse(tokens[1])?;
            if a == b {
                continue; // self-loop
            }
            raw_edges.push((a, b));
        }
        Self::from_labeled_edges(&raw_edges)
    }

    /// Convenience wrapper over [`Graph::load_edge_list`] for in-memory text.
    pub fn from_edge_text(text: &str, options: IngestOptions) -> Result<Self> {
        Self::load_edge_list(text.as_bytes(), options)
    }

    /// Loads an edge list from a file path with default options.
    pub fn load_path<P: AsRef<Path>>(path: P) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::load_edge_list(std::io::BufReader::new(file), IngestOptions::default())
    }

    /// Builds a graph from labeled edges. Labels are mapped to dense ids in
    /// ascending label order; self-loops must already be removed.
    fn from_labeled_edges(raw_edges: &[(i64, i64)]) -> Result<Self> {
        if raw_edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut label_set: BTreeSet<i64> = BTreeSet::new();
        for &(a, b) in raw_edges {
            label_set.insert(a);
            label_set.insert(b);
        }
        let labels: Vec<i64> = label_set.into_iter().collect();
        let label_index: BTreeMap<i64, NodeId> = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, i as NodeId))
            .collect();
        let mut edge_set: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
        for &(a, b) in raw_edges {
            let u = label_index[&a];
            let v = label_index[&b];
            edge_set.insert((u.min(v), u.max(v)));
        }
        let mut adjacency = vec![Vec::new(); labels.len()];
        for &(u, v) in &edge_set {
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            adjacency,
            edge_count: edge_set.len(),
            labels,
            label_index,
        })
    }

    /// Builds a graph over `node_count` nodes with identity labels from a
    /// list of dense-id edges. Duplicates are merged; self-loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(node_count: usize, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        let mut edge_set: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
        for &(a, b) in edges {
            if a == b {
                return Err(Error::InvalidPair(format!("self-loop on node {a}")));
            }
            for v in [a, b] {
                if v as usize >= node_count {
                    return Err(Error::NodeOutOfRange {
                        node: v,
                        node_count,
                    });
                }
            }
            edge_set.insert((a.min(b), a.max(b)));
        }
        let mut adjacency = vec![Vec::new(); node_count];
        for &(u, v) in &edge_set {
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            adjacency,
            edge_count: edge_set.len(),
            labels: (0..node_count as i64).collect(),
            label_index: (0..node_count).map(|i| (i as i64, i as NodeId)).collect(),
        })
    }

    /// Returns a graph over the same node universe (and labels) restricted
    /// to the given edges. Used to materialize the visible graph of an
    /// experiment phase without renumbering nodes.
    pub fn subgraph_with_edges(&self, edges: &[NodePair]) -> Result<Self> {
        let n = self.node_count();
        let mut edge_set: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
        for pair in edges {
            if pair.y() as usize >= n {
                return Err(Error::NodeOutOfRange {
                    node: pair.y(),
                    node_count: n,
                });
            }
            edge_set.insert((pair.x(), pair.y()));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edge_set {
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            adjacency,
            edge_count: edge_set.len(),
            labels: self.labels.clone(),
            label_index: self.label_index.clone(),
        })
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbor list of `x`.
    pub fn neighbors(&self, x: NodeId) -> Result<&[NodeId]> {
        self.check_node(x)?;
        Ok(&self.adjacency[x as usize])
    }

    pub fn degree(&self, x: NodeId) -> Result<usize> {
        self.check_node(x)?;
        Ok(self.adjacency[x as usize].len())
    }

    /// Edge membership test; symmetric, `false` for equal endpoints.
    pub fn has_edge(&self, x: NodeId, y: NodeId) -> Result<bool> {
        self.check_node(x)?;
        self.check_node(y)?;
        Ok(self.connected(x, y))
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut degrees: Vec<usize> = self.adjacency.iter().map(Vec::len).collect();
        degrees.sort_unstable();
        degrees
    }

    /// All edges as canonical pairs, ordered by `(x, y)`.
    pub fn edge_list(&self) -> Vec<NodePair> {
        let mut edges = Vec::with_capacity(self.edge_count);
        for x in 0..self.adjacency.len() {
            for &y in &self.adjacency[x] {
                if (x as NodeId) < y {
                    edges.push(NodePair {
                        x: x as NodeId,
                        y,
                    });
                }
            }
        }
        edges
    }

    /// Original label of a dense id.
    pub fn label_of(&self, x: NodeId) -> i64 {
        self.labels[x as usize]
    }

    /// Dense id of an original label, if the label is present.
    pub fn id_of_label(&self, label: i64) -> Option<NodeId> {
        self.label_index.get(&label).copied()
    }

    /// Converts label pairs into dense pairs; every label must be present.
    pub fn resolve_pairs(&self, pairs: &[(i64, i64)]) -> Result<Vec<NodePair>> {
        pairs
            .iter()
            .map(|&(a, b)| {
                let u = self.id_of_label(a).ok_or_else(|| {
                    Error::InvalidPair(format!("label {a} not present in graph"))
                })?;
                let v = self.id_of_label(b).ok_or_else(|| {
                    Error::InvalidPair(format!("label {b} not present in graph"))
                })?;
                NodePair::new(u, v)
            })
            .collect()
    }

    /// Writes the graph back out as an edge list with original labels, one
    /// canonical `x y` pair per line in ascending order.
    pub fn write_edge_list<W: Write>(&self, writer: &mut W) -> std::io::Result<()> {
        for pair in self.edge_list() {
            writeln!(
                writer,
                "{} {}",
                self.label_of(pair.x()),
                self.label_of(pair.y())
            )?;
        }
        Ok(())
    }

    fn check_node(&self, x: NodeId) -> Result<()> {
        if (x as usize) < self.adjacency.len() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: x,
                node_count: self.adjacency.len(),
            })
        }
    }

    /// Unchecked sorted adjacency access for hot paths.
    pub(crate) fn adj(&self, x: NodeId) -> &[NodeId] {
        &self.adjacency[x as usize]
    }

    /// Unchecked edge membership for hot paths.
    pub(crate) fn connected(&self, x: NodeId, y: NodeId) -> bool {
        let list = &self.adjacency[x as usize];
        list.binary_search(&y).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_triangle() {
        let g = Graph::from_edge_text("1 2\n2 3\n3 1\n", IngestOptions::default()).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(0, 2).unwrap());
    }

    #[test]
    fn merges_duplicates_and_drops_self_loops() {
        let g = Graph::from_edge_text("5 5\n1 2\n2 1\n", IngestOptions::default()).unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        // Node 5 only appeared in a self-loop and is not part of the graph.
        assert_eq!(g.id_of_label(5), None);
    }

    #[test]
    fn skips_comments_and_blank_lines() {
        let g = Graph::from_edge_text(
            "# header\n\n% other comment\n1,2\n  2 , 3 \n",
            IngestOptions::default(),
        )
        .unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn reports_malformed_line_number() {
        let err = Graph::from_edge_text("1 2\nx 3\n", IngestOptions::default()).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_extra_columns_by_default() {
        let err = Graph::from_edge_text("1 2 7\n", IngestOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let g = Graph::from_edge_text(
            "1 2 7\n",
            IngestOptions {
                allow_extra_columns: true,
            },
        )
        .unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn empty_after_cleaning_is_an_error() {
        let err = Graph::from_edge_text("# only comments\n3 3\n", IngestOptions::default())
            .unwrap_err();
        assert!(matches!(err, Error::EmptyGraph));
    }

    #[test]
    fn neighbors_are_sorted_and_bounds_checked() {
        let g = Graph::from_edge_text("1 3\n1 2\n1 4\n", IngestOptions::default()).unwrap();
        let hub = g.id_of_label(1).unwrap();
        let nbrs = g.neighbors(hub).unwrap();
        assert!(nbrs.windows(2).all(|w| w[0] < w[1]));
        assert!(matches!(
            g.neighbors(99),
            Err(Error::NodeOutOfRange { node: 99, .. })
        ));
        assert!(matches!(g.has_edge(0, 99), Err(Error::NodeOutOfRange { .. })));
    }

    #[test]
    fn node_pair_is_canonical() {
        let p = NodePair::new(7, 3).unwrap();
        assert_eq!((p.x(), p.y()), (3, 7));
        assert!(NodePair::new(4, 4).is_err());
    }

    #[test]
    fn subgraph_keeps_node_universe() {
        let g = Graph::from_edge_text("1 2\n2 3\n3 4\n", IngestOptions::default()).unwrap();
        let kept = vec![g.resolve_pairs(&[(1, 2)]).unwrap()[0]];
        let sub = g.subgraph_with_edges(&kept).unwrap();
        assert_eq!(sub.node_count(), g.node_count());
        assert_eq!(sub.edge_count(), 1);
        assert_eq!(sub.label_of(3), 4);
    }

    proptest! {
        #[test]
        fn has_edge_is_symmetric_and_loop_free(seed in 0u64..500) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(5..40usize);
            let mut edges = Vec::new();
            for i in 0..n as NodeId {
                for j in (i + 1)..n as NodeId {
                    if rng.gen_bool(0.2) {
                        edges.push((i, j));
                    }
                }
            }
            prop_assume!(!edges.is_empty());
            let g = Graph::from_edges(n, &edges).unwrap();
            let degree_sum: usize = (0..n as NodeId).map(|v| g.degree(v).unwrap()).sum();
            prop_assert_eq!(degree_sum, 2 * g.edge_count());
            for _ in 0..1000 {
                let a = rng.gen_range(0..n as NodeId);
                let b = rng.gen_range(0..n as NodeId);
                prop_assert_eq!(g.has_edge(a, b).unwrap(), g.has_edge(b, a).unwrap());
                prop_assert!(!g.has_edge(a, a).unwrap());
            }
        }

        #[test]
        fn edge_list_round_trips(seed in 0u64..200) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(4..30usize);
            let mut edges = Vec::new();
            for i in 0..n as NodeId {
                for j in (i + 1)..n as NodeId {
                    if rng.gen_bool(0.25) {
                        edges.push((i, j));
                    }
                }
            }
            prop_assume!(!edges.is_empty());
            let g = Graph::from_edges(n, &edges).unwrap();
            let mut text = Vec::new();
            g.write_edge_list(&mut text).unwrap();
            let reloaded = Graph::from_edge_text(
                std::str::from_utf8(&text).unwrap(),
                IngestOptions::default(),
            )
            .unwrap();
            prop_assert_eq!(reloaded.edge_count(), g.edge_count());
            // Isolated nodes cannot survive an edge-list round trip.
            let connected: Vec<usize> = g
                .degree_sequence()
                .into_iter()
                .filter(|&d| d > 0)
                .collect();
            prop_assert_eq!(reloaded.degree_sequence(), connected);
        }
    }
}
