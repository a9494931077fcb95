//! The graphlet/orbit atlas: names, structural roles, order categories, and
//! exhaustive-permutation classification of small induced subgraphs.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// The nine connected graphlets on two to four nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphletKind {
    Edge,
    Path3,
    Triangle,
    Claw,
    Path4,
    Paw,
    Cycle4,
    Diamond,
    Clique4,
}

/// Node orbit labels `N1..N15`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[rustfmt::skip]
pub enum NodeOrbit {
    N1, N2, N3, N4, N5, N6, N7, N8, N9, N10, N11, N12, N13, N14, N15,
}

/// Edge orbit labels `M1..M12`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[rustfmt::skip]
pub enum EdgeOrbit {
    M1, M2, M3, M4, M5, M6, M7, M8, M9, M10, M11, M12,
}

/// Structural node roles, one per node orbit, named by the graphlet and the
/// position a node takes inside it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeRole {
    /// Endpoint of the single-edge graphlet.
    EdgeEndpoint,
    /// End node of the three-node path.
    Path3End,
    /// Center node of the three-node path.
    Path3Center,
    /// Any node of the triangle.
    TriangleNode,
    /// Leaf of the three-leaf star.
    ClawLeaf,
    /// Center of the three-leaf star.
    ClawCenter,
    /// End node of the four-node path.
    Path4End,
    /// Middle node of the four-node path.
    Path4Middle,
    /// Any node of the four-cycle.
    Cycle4Node,
    /// Degree-two triangle node of the paw (triangle plus pendant).
    PawRim,
    /// Degree-three node of the paw, where the pendant attaches.
    PawAttachment,
    /// Pendant node of the paw.
    PawPendant,
    /// Degree-two node of the diamond.
    DiamondRim,
    /// Degree-three node of the diamond.
    DiamondHub,
    /// Any node of the four-clique.
    Clique4Node,
}

/// Structural edge roles, one per edge orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeRole {
    /// Either edge of the three-node path.
    Path3Edge,
    /// Any edge of the triangle.
    TriangleEdge,
    /// Any edge of the three-leaf star.
    ClawEdge,
    /// Middle edge of the four-node path.
    Path4MiddleEdge,
    /// End edge of the four-node path.
    Path4EndEdge,
    /// Pendant edge of the paw.
    PawPendantEdge,
    /// Triangle edge of the paw opposite the attachment node.
    PawOppositeEdge,
    /// Triangle edge of the paw incident to the attachment node.
    PawIncidentEdge,
    /// Any edge of the four-cycle.
    Cycle4Edge,
    /// Chord of the diamond (between the two degree-three nodes).
    DiamondChord,
    /// Rim edge of the diamond.
    DiamondRimEdge,
    /// Any edge of the four-clique.
    Clique4Edge,
}

/// Order category of a node orbit: how far the orbit's structure reaches
/// from the labeled node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeOrderCategory {
    First,
    Second,
    Third,
}

/// Order category of an edge orbit: how far the orbit's structure reaches
/// from the labeled pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeOrderCategory {
    First,
    Second,
}

/// The five feature categories used in aggregate reports: node-orbit
/// (popularity) features by order, and edge-orbit (similarity) features by
/// order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FeatureCategory {
    PopularityFirst,
    PopularitySecond,
    PopularityThird,
    SimilarityFirst,
    SimilaritySecond,
}

impl NodeOrbit {
    pub const ALL: [NodeOrbit; 15] = [
        NodeOrbit::N1,
        NodeOrbit::N2,
        NodeOrbit::N3,
        NodeOrbit::N4,
        NodeOrbit::N5,
        NodeOrbit::N6,
        NodeOrbit::N7,
        NodeOrbit::N8,
        NodeOrbit::N9,
        NodeOrbit::N10,
        NodeOrbit::N11,
        NodeOrbit::N12,
        NodeOrbit::N13,
        NodeOrbit::N14,
        NodeOrbit::N15,
    ];

    pub fn name(&self) -> &'static str {
        const NAMES: [&str; 15] = [
            "N1", "N2", "N3", "N4", "N5", "N6", "N7", "N8", "N9", "N10", "N11", "N12", "N13",
            "N14", "N15",
        ];
        NAMES[*self as usize]
    }

    pub fn from_name(name: &str) -> Option<NodeOrbit> {
        NodeOrbit::ALL.iter().copied().find(|o| o.name() == name)
    }

    /// Order category of the label. The grouping is fixed per label:
    /// first `{N1, N3, N6}`, second `{N2, N4, N5, N8, N10, N11}`, third the
    /// remainder.
    pub fn category(&self) -> NodeOrderCategory {
        use NodeOrbit::*;
        match self {
            N1 | N3 | N6 => NodeOrderCategory::First,
            N2 | N4 | N5 | N8 | N10 | N11 => NodeOrderCategory::Second,
            _ => NodeOrderCategory::Third,
        }
    }
}

impl EdgeOrbit {
    pub const ALL: [EdgeOrbit; 12] = [
        EdgeOrbit::M1,
        EdgeOrbit::M2,
        EdgeOrbit::M3,
        EdgeOrbit::M4,
        EdgeOrbit::M5,
        EdgeOrbit::M6,
        EdgeOrbit::M7,
        EdgeOrbit::M8,
        EdgeOrbit::M9,
        EdgeOrbit::M10,
        EdgeOrbit::M11,
        EdgeOrbit::M12,
    ];

    pub fn name(&self) -> &'static str {
        const NAMES: [&str; 12] = [
            "M1", "M2", "M3", "M4", "M5", "M6", "M7", "M8", "M9", "M10", "M11", "M12",
        ];
        NAMES[*self as usize]
    }

    pub fn from_name(name: &str) -> Option<EdgeOrbit> {
        EdgeOrbit::ALL.iter().copied().find(|o| o.name() == name)
    }

    /// Order category of the label. First `{M1, M2, M3, M4, M8, M10}`,
    /// second the remainder.
    pub fn category(&self) -> EdgeOrderCategory {
        use EdgeOrbit::*;
        match self {
            M1 | M2 | M3 | M4 | M8 | M10 => EdgeOrderCategory::First,
            _ => EdgeOrderCategory::Second,
        }
    }
}

impl FeatureCategory {
    pub const ALL: [FeatureCategory; 5] = [
        FeatureCategory::PopularityFirst,
        FeatureCategory::PopularitySecond,
        FeatureCategory::PopularityThird,
        FeatureCategory::SimilarityFirst,
        FeatureCategory::SimilaritySecond,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FeatureCategory::PopularityFirst => "popularity_first",
            FeatureCategory::PopularitySecond => "popularity_second",
            FeatureCategory::PopularityThird => "popularity_third",
            FeatureCategory::SimilarityFirst => "similarity_first",
            FeatureCategory::SimilaritySecond => "similarity_second",
        }
    }
}

const NODE_ROLES: [NodeRole; 15] = [
    NodeRole::EdgeEndpoint,
    NodeRole::Path3End,
    NodeRole::Path3Center,
    NodeRole::TriangleNode,
    NodeRole::ClawLeaf,
    NodeRole::ClawCenter,
    NodeRole::Path4End,
    NodeRole::Path4Middle,
    NodeRole::Cycle4Node,
    NodeRole::PawRim,
    NodeRole::PawAttachment,
    NodeRole::PawPendant,
    NodeRole::DiamondRim,
    NodeRole::DiamondHub,
    NodeRole::Clique4Node,
];

const EDGE_ROLES: [EdgeRole; 12] = [
    EdgeRole::Path3Edge,
    EdgeRole::TriangleEdge,
    EdgeRole::ClawEdge,
    EdgeRole::Path4MiddleEdge,
    EdgeRole::Path4EndEdge,
    EdgeRole::PawPendantEdge,
    EdgeRole::PawOppositeEdge,
    EdgeRole::PawIncidentEdge,
    EdgeRole::Cycle4Edge,
    EdgeRole::DiamondChord,
    EdgeRole::DiamondRimEdge,
    EdgeRole::Clique4Edge,
];

impl NodeRole {
    pub fn graphlet(&self) -> GraphletKind {
        use NodeRole::*;
        match self {
            EdgeEndpoint => GraphletKind::Edge,
            Path3End | Path3Center => GraphletKind::Path3,
            TriangleNode => GraphletKind::Triangle,
            ClawLeaf | ClawCenter => GraphletKind::Claw,
            Path4End | Path4Middle => GraphletKind::Path4,
            Cycle4Node => GraphletKind::Cycle4,
            PawRim | PawAttachment | PawPendant => GraphletKind::Paw,
            DiamondRim | DiamondHub => GraphletKind::Diamond,
            Clique4Node => GraphletKind::Clique4,
        }
    }
}

impl EdgeRole {
    pub fn graphlet(&self) -> GraphletKind {
        use EdgeRole::*;
        match self {
            Path3Edge => GraphletKind::Path3,
            TriangleEdge => GraphletKind::Triangle,
            ClawEdge => GraphletKind::Claw,
            Path4MiddleEdge | Path4EndEdge => GraphletKind::Path4,
            PawPendantEdge | PawOppositeEdge | PawIncidentEdge => GraphletKind::Paw,
            Cycle4Edge => GraphletKind::Cycle4,
            DiamondChord | DiamondRimEdge => GraphletKind::Diamond,
            Clique4Edge => GraphletKind::Clique4,
        }
    }
}

/// Classification of a connected graph on two to four nodes: its graphlet
/// identity, the orbit label of every node, and the orbit label of every
/// edge. Edges of the two-node graphlet carry no edge orbit.
#[derive(Debug, Clone)]
pub struct GraphletClass {
    pub kind: GraphletKind,
    pub node_orbits: Vec<NodeOrbit>,
    pub edge_orbits: Vec<((usize, usize), EdgeOrbit)>,
}

/// Mapping between structural roles and orbit labels.
///
/// The default assignment maps each role to the label whose order category
/// matches the role's reach. Alternative assignments may permute labels
/// within an order category; labels anchored by a closed-form identity
/// (`N1` degree, `N4` triangle count, `M2` common neighbors, `M12`
/// four-clique count) are fixed.
#[derive(Debug, Clone)]
pub struct OrbitAtlas {
    node_label_for_role: [NodeOrbit; 15],
    node_role_for_label: [NodeRole; 15],
    edge_label_for_role: [EdgeOrbit; 12],
    edge_role_for_label: [EdgeRole; 12],
}

impl Default for OrbitAtlas {
    fn default() -> Self {
        Self::standard()
    }
}

impl OrbitAtlas {
    /// The default role-to-label assignment.
    pub fn standard() -> Self {
        let node: [(NodeRole, NodeOrbit); 15] = [
            (NodeRole::EdgeEndpoint, NodeOrbit::N1),
            (NodeRole::Path3End, NodeOrbit::N2),
            (NodeRole::Path3Center, NodeOrbit::N3),
            (NodeRole::TriangleNode, NodeOrbit::N4),
            (NodeRole::ClawLeaf, NodeOrbit::N5),
            (NodeRole::ClawCenter, NodeOrbit::N6),
            (NodeRole::Path4End, NodeOrbit::N7),
            (NodeRole::Path4Middle, NodeOrbit::N8),
            (NodeRole::Cycle4Node, NodeOrbit::N9),
            (NodeRole::PawRim, NodeOrbit::N10),
            (NodeRole::PawAttachment, NodeOrbit::N11),
            (NodeRole::PawPendant, NodeOrbit::N12),
            (NodeRole::DiamondRim, NodeOrbit::N13),
            (NodeRole::DiamondHub, NodeOrbit::N14),
            (NodeRole::Clique4Node, NodeOrbit::N15),
        ];
        let edge: [(EdgeRole, EdgeOrbit); 12] = [
            (EdgeRole::Path3Edge, EdgeOrbit::M1),
            (EdgeRole::TriangleEdge, EdgeOrbit::M2),
            (EdgeRole::ClawEdge, EdgeOrbit::M3),
            (EdgeRole::Path4MiddleEdge, EdgeOrbit::M4),
            (EdgeRole::Path4EndEdge, EdgeOrbit::M5),
            (EdgeRole::PawPendantEdge, EdgeOrbit::M6),
            (EdgeRole::PawOppositeEdge, EdgeOrbit::M7),
            (EdgeRole::PawIncidentEdge, EdgeOrbit::M8),
            (EdgeRole::Cycle4Edge, EdgeOrbit::M9),
            (EdgeRole::DiamondChord, EdgeOrbit::M10),
            (EdgeRole::DiamondRimEdge, EdgeOrbit::M11),
            (EdgeRole::Clique4Edge, EdgeOrbit::M12),
        ];
        Self::from_assignments(&node, &edge).expect("standard atlas is valid")
    }

    /// Builds an atlas from the standard one with some role-to-label
    /// entries overridden. The result must remain a bijection, every label
    /// must keep its order category, and the anchored labels (`N1`, `N4`,
    /// `M2`, `M12`) must keep their standard roles.
    pub fn with_overrides(
        node_overrides: &[(NodeRole, NodeOrbit)],
        edge_overrides: &[(EdgeRole, EdgeOrbit)],
    ) -> Result<Self> {
        let standard = Self::standard();
        let mut node: Vec<(NodeRole, NodeOrbit)> = NODE_ROLES
            .iter()
            .map(|&r| (r, standard.node_label(r)))
            .collect();
        for &(role, label) in node_overrides {
            node.iter_mut().find(|(r, _)| *r == role).unwrap().1 = label;
        }
        let mut edge: Vec<(EdgeRole, EdgeOrbit)> = EDGE_ROLES
            .iter()
            .map(|&r| (r, standard.edge_label(r)))
            .collect();
        for &(role, label) in edge_overrides {
            edge.iter_mut().find(|(r, _)| *r == role).unwrap().1 = label;
        }
        let node: [(NodeRole, NodeOrbit); 15] = node.try_into().unwrap();
        let edge: [(EdgeRole, EdgeOrbit); 12] = edge.try_into().unwrap();
        Self::from_assignments(&node, &edge)
    }

    fn from_assignments(
        node: &[(NodeRole, NodeOrbit); 15],
        edge: &[(EdgeRole, EdgeOrbit); 12],
    ) -> Result<Self> {
        let standard_node_category = |role: NodeRole| -> NodeOrderCategory {
            // The reach of a role is pinned by the standard assignment.
            let idx = NODE_ROLES.iter().position(|&r| r == role).unwrap();
            NodeOrbit::ALL[idx].category()
        };
        let mut node_label_for_role = [NodeOrbit::N1; 15];
        let mut seen = BTreeSet::new();
        for &(role, label) in node {
            let role_idx = NODE_ROLES.iter().position(|&r| r == role).unwrap();
            if !seen.insert(label) {
                return Err(Error::Atlas(format!(
                    "node label {} assigned to more than one role",
                    label.name()
                )));
            }
            if label.category() != standard_node_category(role) {
                return Err(Error::Atlas(format!(
                    "node label {} cannot take role {role:?}: order category differs",
                    label.name()
                )));
            }
            node_label_for_role[role_idx] = label;
        }
        for (role, label) in [
            (NodeRole::EdgeEndpoint, NodeOrbit::N1),
            (NodeRole::TriangleNode, NodeOrbit::N4),
        ] {
            let idx = NODE_ROLES.iter().position(|&r| r == role).unwrap();
            if node_label_for_role[idx] != label {
                return Err(Error::Atlas(format!(
                    "label {} is anchored to role {role:?}",
                    label.name()
                )));
            }
        }
        let standard_edge_category = |role: EdgeRole| -> EdgeOrderCategory {
            let idx = EDGE_ROLES.iter().position(|&r| r == role).unwrap();
            EdgeOrbit::ALL[idx].category()
        };
        let mut edge_label_for_role = [EdgeOrbit::M1; 12];
        let mut seen = BTreeSet::new();
        for &(role, label) in edge {
            let role_idx = EDGE_ROLES.iter().position(|&r| r == role).unwrap();
            if !seen.insert(label) {
                return Err(Error::Atlas(format!(
                    "edge label {} assigned to more than one role",
                    label.name()
                )));
            }
            if label.category() != standard_edge_category(role) {
                return Err(Error::Atlas(format!(
                    "edge label {} cannot take role {role:?}: order category differs",
                    label.name()
                )));
            }
            edge_label_for_role[role_idx] = label;
        }
        for (role, label) in [
            (EdgeRole::TriangleEdge, EdgeOrbit::M2),
            (EdgeRole::Clique4Edge, EdgeOrbit::M12),
        ] {
            let idx = EDGE_ROLES.iter().position(|&r| r == role).unwrap();
            if edge_label_for_role[idx] != label {
                return Err(Error::Atlas(format!(
                    "label {} is anchored to role {role:?}",
                    label.name()
                )));
            }
        }
        let mut node_role_for_label = [NodeRole::EdgeEndpoint; 15];
        for (role_idx, &label) in node_label_for_role.iter().enumerate() {
            node_role_for_label[label as usize] = NODE_ROLES[role_idx];
        }
        let mut edge_role_for_label = [EdgeRole::Path3Edge; 12];
        for (role_idx, &label) in edge_label_for_role.iter().enumerate() {
            edge_role_for_label[label as usize] = EDGE_ROLES[role_idx];
        }
        Ok(OrbitAtlas {
            node_label_for_role,
            node_role_for_label,
            edge_label_for_role,
            edge_role_for_label,
        })
    }

    pub fn node_label(&self, role: NodeRole) -> NodeOrbit {
        let idx = NODE_ROLES.iter().position(|&r| r == role).unwrap();
        self.node_label_for_role[idx]
    }

    pub fn node_role(&self, label: NodeOrbit) -> NodeRole {
        self.node_role_for_label[label as usize]
    }

    pub fn edge_label(&self, role: EdgeRole) -> EdgeOrbit {
        let idx = EDGE_ROLES.iter().position(|&r| r == role).unwrap();
        self.edge_label_for_role[idx]
    }

    pub fn edge_role(&self, label: EdgeOrbit) -> EdgeRole {
        self.edge_role_for_label[label as usize]
    }

    /// Maps a role-indexed count array to a label-indexed node vector.
    pub(crate) fn node_counts_to_labels(&self, counts: &[u64; 15]) -> [u64; 15] {
        let mut out = [0u64; 15];
        for (role_idx, &c) in counts.iter().enumerate() {
            out[self.node_label_for_role[role_idx] as usize] = c;
        }
        out
    }

    /// Maps a role-indexed count array to a label-indexed edge vector.
    pub(crate) fn edge_counts_to_labels(&self, counts: &[u64; 12]) -> [u64; 12] {
        let mut out = [0u64; 12];
        for (role_idx, &c) in counts.iter().enumerate() {
            out[self.edge_label_for_role[role_idx] as usize] = c;
        }
        out
    }

    /// Feature category of one of the 27 orbit feature names (`N*` or `M*`).
    pub fn feature_category(&self, feature_name: &str) -> Option<FeatureCategory> {
        if let Some(orbit) = NodeOrbit::from_name(feature_name) {
            return Some(match orbit.category() {
                NodeOrderCategory::First => FeatureCategory::PopularityFirst,
                NodeOrderCategory::Second => FeatureCategory::PopularitySecond,
                NodeOrderCategory::Third => FeatureCategory::PopularityThird,
            });
        }
        if let Some(orbit) = EdgeOrbit::from_name(feature_name) {
            return Some(match orbit.category() {
                EdgeOrderCategory::First => FeatureCategory::SimilarityFirst,
                EdgeOrderCategory::Second => FeatureCategory::SimilaritySecond,
            });
        }
        None
    }

    /// Classifies a connected graph on two to four nodes: identifies the
    /// graphlet and assigns every node and edge its orbit label. The orbit
    /// partition is computed by enumerating all node permutations and
    /// keeping the adjacency-preserving ones.
    pub fn classify(&self, node_count: usize, edges: &[(usize, usize)]) -> Result<GraphletClass> {
        if !(2..=4).contains(&node_count) {
            return Err(Error::Atlas(format!(
                "classification requires 2..=4 nodes, got {node_count}"
            )));
        }
        let mut edge_set: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &(a, b) in edges {
            if a == b || a >= node_count || b >= node_count {
                return Err(Error::Atlas(format!("invalid edge ({a}, {b})")));
            }
            edge_set.insert((a.min(b), a.max(b)));
        }
        if !is_connected(node_count, &edge_set) {
            return Err(Error::Atlas("graph is not connected".into()));
        }
        let mut degrees = vec![0usize; node_count];
        for &(a, b) in &edge_set {
            degrees[a] += 1;
            degrees[b] += 1;
        }
        let kind = identify_kind(node_count, edge_set.len(), &degrees)?;

        // Automorphism orbits: nodes are equivalent when some
        // adjacency-preserving permutation maps one onto the other.
        let mut node_orbit_rep: Vec<usize> = (0..node_count).collect();
        for perm in permutations(node_count) {
            let preserves = edge_set.iter().all(|&(a, b)| {
                let (pa, pb) = (perm[a], perm[b]);
                edge_set.contains(&(pa.min(pb), pa.max(pb)))
            });
            if !preserves {
                continue;
            }
            for v in 0..node_count {
                let ra = resolve(&node_orbit_rep, v);
                let rb = resolve(&node_orbit_rep, perm[v]);
                node_orbit_rep[ra.max(rb)] = ra.min(rb);
            }
        }

        // Within this graphlet family a node's orbit is determined by its
        // degree and an edge's orbit by its endpoint degrees; the
        // automorphism pass above is used to cross-check that claim.
        let node_orbits: Vec<NodeOrbit> = (0..node_count)
            .map(|v| self.node_label(node_role(kind, degrees[v])))
            .collect();
        for v in 0..node_count {
            for w in 0..node_count {
                let same_orbit = resolve(&node_orbit_rep, v) == resolve(&node_orbit_rep, w);
                if same_orbit && node_orbits[v] != node_orbits[w] {
                    return Err(Error::Atlas(
                        "automorphism orbit disagrees with role assignment".into(),
                    ));
                }
            }
        }
        let edge_orbits: Vec<((usize, usize), EdgeOrbit)> = if node_count == 2 {
            Vec::new()
        } else {
            edge_set
                .iter()
                .map(|&(a, b)| {
                    let key = (degrees[a].min(degrees[b]), degrees[a].max(degrees[b]));
                    ((a, b), self.edge_label(edge_role(kind, key)))
                })
                .collect()
        };
        Ok(GraphletClass {
            kind,
            node_orbits,
            edge_orbits,
        })
    }
}

fn resolve(reps: &[usize], mut v: usize) -> usize {
    while reps[v] != v {
        v = reps[v];
    }
    v
}

fn is_connected(n: usize, edges: &BTreeSet<(usize, usize)>) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            let other = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !seen[other] {
                seen[other] = true;
                stack.push(other);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn identify_kind(n: usize, m: usize, degrees: &[usize]) -> Result<GraphletKind> {
    let max_degree = degrees.iter().copied().max().unwrap_or(0);
    let kind = match (n, m) {
        (2, 1) => GraphletKind::Edge,
        (3, 2) => GraphletKind::Path3,
        (3, 3) => GraphletKind::Triangle,
        (4, 3) if max_degree == 3 => GraphletKind::Claw,
        (4, 3) => GraphletKind::Path4,
        (4, 4) if max_degree == 3 => GraphletKind::Paw,
        (4, 4) => GraphletKind::Cycle4,
        (4, 5) => GraphletKind::Diamond,
        (4, 6) => GraphletKind::Clique4,
        _ => {
            return Err(Error::Atlas(format!(
                "no connected graphlet has {n} nodes and {m} edges"
            )))
        }
    };
    Ok(kind)
}

fn node_role(kind: GraphletKind, degree: usize) -> NodeRole {
    match (kind, degree) {
        (GraphletKind::Edge, 1) => NodeRole::EdgeEndpoint,
        (GraphletKind::Path3, 1) => NodeRole::Path3End,
        (GraphletKind::Path3, 2) => NodeRole::Path3Center,
        (GraphletKind::Triangle, 2) => NodeRole::TriangleNode,
        (GraphletKind::Claw, 1) => NodeRole::ClawLeaf,
        (GraphletKind::Claw, 3) => NodeRole::ClawCenter,
        (GraphletKind::Path4, 1) => NodeRole::Path4End,
        (GraphletKind::Path4, 2) => NodeRole::Path4Middle,
        (GraphletKind::Cycle4, 2) => NodeRole::Cycle4Node,
        (GraphletKind::Paw, 1) => NodeRole::PawPendant,
        (GraphletKind::Paw, 2) => NodeRole::PawRim,
        (GraphletKind::Paw, 3) => NodeRole::PawAttachment,
        (GraphletKind::Diamond, 2) => NodeRole::DiamondRim,
        (GraphletKind::Diamond, 3) => NodeRole::DiamondHub,
        (GraphletKind::Clique4, 3) => NodeRole::Clique4Node,
        _ => unreachable!("degree {degree} impossible in {kind:?}"),
    }
}

fn edge_role(kind: GraphletKind, endpoint_degrees: (usize, usize)) -> EdgeRole {
    match (kind, endpoint_degrees) {
        (GraphletKind::Path3, (1, 2)) => EdgeRole::Path3Edge,
        (GraphletKind::Triangle, (2, 2)) => EdgeRole::TriangleEdge,
        (GraphletKind::Claw, (1, 3)) => EdgeRole::ClawEdge,
        (GraphletKind::Path4, (2, 2)) => EdgeRole::Path4MiddleEdge,
        (GraphletKind::Path4, (1, 2)) => EdgeRole::Path4EndEdge,
        (GraphletKind::Paw, (1, 3)) => EdgeRole::PawPendantEdge,
        (GraphletKind::Paw, (2, 2)) => EdgeRole::PawOppositeEdge,
        (GraphletKind::Paw, (2, 3)) => EdgeRole::PawIncidentEdge,
        (GraphletKind::Cycle4, (2, 2)) => EdgeRole::Cycle4Edge,
        (GraphletKind::Diamond, (3, 3)) => EdgeRole::DiamondChord,
        (GraphletKind::Diamond, (2, 3)) => EdgeRole::DiamondRimEdge,
        (GraphletKind::Clique4, (3, 3)) => EdgeRole::Clique4Edge,
        _ => unreachable!("endpoint degrees {endpoint_degrees:?} impossible in {kind:?}"),
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    heap_permute(&mut items, n, &mut out);
    out
}

fn heap_permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}
