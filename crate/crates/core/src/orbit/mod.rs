//! Graphlet orbit degrees for nodes and node pairs.
//!
//! The unit of description is the set of nine connected graphlets on two to
//! four nodes. Their automorphism groups induce 15 node orbits (`N1..N15`)
//! and, for the graphlets on three or four nodes, 12 edge orbits
//! (`M1..M12`). A node's orbit degree counts the induced occurrences of a
//! graphlet in which the node plays a given role; a pair's edge orbit degree
//! counts induced occurrences in which the pair occupies a given edge orbit,
//! evaluated on the graph with the queried pair treated as present. That
//! convention lets the same counters score both existing edges and candidate
//! (absent) edges.

mod atlas;
mod census;
mod fast;

pub use atlas::{
    EdgeOrbit, EdgeOrderCategory, EdgeRole, FeatureCategory, GraphletClass, GraphletKind,
    NodeOrbit, NodeOrderCategory, NodeRole, OrbitAtlas,
};
pub use census::{census_edge_vector, census_node_vectors, CENSUS_NODE_LIMIT};
pub use fast::{
    edge_orbit_degrees, edge_orbit_degrees_batch, node_orbit_degrees, node_orbit_degrees_all,
    EdgeOrbitCounter, NodeOrbitCounter,
};

/// Orbit degrees of one node across the 15 node orbits, indexed by
/// [`NodeOrbit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NodeOrbitVector(pub [u64; 15]);

impl NodeOrbitVector {
    pub fn get(&self, orbit: NodeOrbit) -> u64 {
        self.0[orbit as usize]
    }
}

/// Orbit degrees of one node pair across the 12 edge orbits, indexed by
/// [`EdgeOrbit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EdgeOrbitVector(pub [u64; 12]);

impl EdgeOrbitVector {
    pub fn get(&self, orbit: EdgeOrbit) -> u64 {
        self.0[orbit as usize]
    }
}
