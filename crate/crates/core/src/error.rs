//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by graph ingestion, orbit counting, the experiment
/// pipeline, and the analysis layers.
#[derive(Debug, Error)]
pub enum Error {
    /// An edge-list line could not be parsed.
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The cleaned edge list contains no edges.
    #[error("empty graph")]
    EmptyGraph,

    /// A node id fell outside `0..node_count`.
    #[error("node {node} out of range for graph with {node_count} nodes")]
    NodeOutOfRange { node: u32, node_count: usize },

    /// A pair query was made with equal endpoints or other invalid shape.
    #[error("invalid pair: {0}")]
    InvalidPair(String),

    /// A combination-scan oracle was asked to process too large a graph.
    #[error("graph with {nodes} nodes exceeds the oracle limit of {limit}")]
    GraphTooLarge { nodes: usize, limit: usize },

    /// Graphlet classification or atlas construction failed.
    #[error("atlas error: {0}")]
    Atlas(String),

    /// The split protocol could not be applied.
    #[error("protocol error: {0}")]
    Protocol(String),

    /// Negative sampling could not produce the requested pairs.
    #[error("sampling error: {0}")]
    Sampling(String),

    /// Model training was asked to do something unsupported.
    #[error("training error: {0}")]
    Training(String),

    /// An input matrix or vector failed validation.
    #[error("input error: {0}")]
    Input(String),

    /// Two collections that must agree in shape did not.
    #[error("shape error: {0}")]
    Shape(String),

    /// A metric was evaluated on degenerate input.
    #[error("metric error: {0}")]
    Metric(String),

    /// A corpus-level analysis was evaluated on degenerate input.
    #[error("analysis error: {0}")]
    Analysis(String),

    /// A configuration value was out of range or inconsistent.
    #[error("config error: {0}")]
    Config(String),

    /// A score decomposition identity failed on a concrete pair.
    #[error("identity {identity} violated on pair ({x}, {y}): {lhs} != {rhs}")]
    IdentityViolation {
        identity: &'static str,
        x: i64,
        y: i64,
        lhs: f64,
        rhs: f64,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
