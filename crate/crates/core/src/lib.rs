//! Graphlet orbit degrees and a link-prediction toolkit built on them.
//!
//! The crate decomposes classical link-prediction indices into orbit
//! degrees of small graphlets: counts of the positions a node, or a node
//! pair, occupies across all two- to four-node connected subgraphs. On top
//! of the counters it provides feature assembly under a leakage-free
//! evaluation protocol, a gradient-boosted tree classifier, exact
//! interventional Shapley attributions, and aggregate analyses over
//! collections of networks.

pub mod analysis;
pub mod boost;
pub mod error;
pub mod graph;
pub mod metrics;
pub mod orbit;
pub mod pipeline;
pub mod predict;
pub mod protocol;
pub mod shap;
pub mod synth;

pub use error::{Error, Result};
pub use graph::{Graph, IngestOptions, NodeId, NodePair};

/// Library version, recorded in run manifests by downstream drivers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
