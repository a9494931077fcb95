//! The `orbits` subcommand: orbit-degree tables as CSV.
//!
//! Targets: `nodes` tabulates the 15 node orbit degrees of every node,
//! `pairs` the 12 edge orbit degrees of every existing edge, and
//! `pair-list` the edge orbit degrees of an explicit file of node pairs
//! (present or not; the pair is treated as present either way). The
//! `--oracle` flag recomputes everything with the exhaustive census and
//! fails with exit code 3 on any disagreement.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use orbitlink::orbit::{
    census_edge_vector, census_node_vectors, edge_orbit_degrees_batch, node_orbit_degrees_all,
    OrbitAtlas, CENSUS_NODE_LIMIT,
};
use orbitlink::{Graph, NodePair};

use crate::config::ConfigFile;
use crate::error::{CliError, CliResult};
use crate::manifest::ManifestBuilder;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// Node orbit degrees N1..N15 of every node.
    Nodes,
    /// Edge orbit degrees M1..M12 of every existing edge.
    Pairs,
    /// Edge orbit degrees of the pairs listed in a file.
    PairList,
}

impl Target {
    fn name(self) -> &'static str {
        match self {
            Target::Nodes => "nodes",
            Target::Pairs => "pairs",
            Target::PairList => "pair-list",
        }
    }

    fn from_name(name: &str) -> Option<Target> {
        match name {
            "nodes" => Some(Target::Nodes),
            "pairs" => Some(Target::Pairs),
            "pair-list" => Some(Target::PairList),
            _ => None,
        }
    }
}

#[derive(Args)]
pub struct OrbitsArgs {
    /// Input edge-list file (whitespace or comma separated, # comments).
    graph: PathBuf,

    /// What to tabulate; defaults to nodes, or pair-list when --pair-list
    /// is given.
    #[arg(long, value_enum)]
    target: Option<Target>,

    /// File of node-label pairs, one per line, for --target pair-list.
    #[arg(long, value_name = "FILE")]
    pair_list: Option<PathBuf>,

    /// Cross-check against the exhaustive census (graphs up to 200 nodes);
    /// any mismatch exits with code 3.
    #[arg(long)]
    oracle: bool,

    /// Output directory.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

pub fn execute(args: OrbitsArgs, config: &ConfigFile, threads: Option<usize>) -> CliResult<()> {
    let out = args
        .out
        .or(config.path("out")?)
        .ok_or_else(|| CliError::Usage("an output directory is required (--out)".into()))?;
    let pair_list = args.pair_list.or(config.path("pair-list")?);
    let target = match args.target {
        Some(target) => target,
        None => match config.string("target")? {
            Some(name) => Target::from_name(&name).ok_or_else(|| {
                CliError::Usage(format!(
                    "config key \"target\" must be one of nodes, pairs, pair-list; got {name:?}"
                ))
            })?,
            None if pair_list.is_some() => Target::PairList,
            None => Target::Nodes,
        },
    };
    let oracle = args.oracle || config.flag("oracle")?.unwrap_or(false);

    let graph = Graph::load_path(&args.graph)
        .map_err(|err| CliError::Data(format!("{}: {err}", args.graph.display())))?;
    let atlas = OrbitAtlas::standard();
    if oracle && graph.node_count() > CENSUS_NODE_LIMIT {
        return Err(CliError::Usage(format!(
            "--oracle supports graphs up to {CENSUS_NODE_LIMIT} nodes; {} has {}",
            args.graph.display(),
            graph.node_count()
        )));
    }

    std::fs::create_dir_all(&out)
        .map_err(|err| CliError::Data(format!("cannot create {}: {err}", out.display())))?;
    let mut manifest = ManifestBuilder::new("orbits", threads);
    manifest.config("graph", args.graph.display().to_string());
    manifest.config("target", target.name());
    manifest.config("oracle", oracle);
    manifest.config("out", out.display().to_string());
    manifest.input(&args.graph)?;

    let started = std::time::Instant::now();
    let (file_name, csv, rows) = match target {
        Target::Nodes => {
            let vectors = node_orbit_degrees_all(&graph, &atlas);
            if oracle {
                let census = census_node_vectors(&graph, &atlas)?;
                for (node, (fast, slow)) in vectors.iter().zip(&census).enumerate() {
                    for orbit in 0..15 {
                        if fast.0[orbit] != slow.0[orbit] {
                            return Err(CliError::Validation(format!(
                                "oracle mismatch: node {} orbit N{}: fast {} vs census {}",
                                graph.label_of(node as u32),
                                orbit + 1,
                                fast.0[orbit],
                                slow.0[orbit]
                            )));
                        }
                    }
                }
                println!(
                    "oracle check passed: node orbits of {} nodes match the census",
                    graph.node_count()
                );
            }
            let mut csv = String::from("node_id");
            for orbit in 1..=15 {
                write!(csv, ",N{orbit}").unwrap();
            }
            csv.push('\n');
            for (node, vector) in vectors.iter().enumerate() {
                write!(csv, "{}", graph.label_of(node as u32)).unwrap();
                for count in vector.0 {
                    write!(csv, ",{count}").unwrap();
                }
                csv.push('\n');
            }
            ("nodes.csv", csv, vectors.len())
        }
        Target::Pairs | Target::PairList => {
            let pairs: Vec<NodePair> = match target {
                Target::Nodes => unreachable!("handled by the outer branch"),
                Target::Pairs => graph.edge_list(),
                Target::PairList => {
                    let path = pair_list.as_ref().ok_or_else(|| {
                        CliError::Usage(
                            "--target pair-list requires --pair-list FILE".to_string(),
                        )
                    })?;
                    manifest.input(path)?;
                    manifest.config("pair-list", path.display().to_string());
                    let labels = read_pair_file(path)?;
                    graph.resolve_pairs(&labels)?
                }
            };
            let vectors = edge_orbit_degrees_batch(&graph, &atlas, &pairs)?;
            if oracle {
                for (pair, fast) in pairs.iter().zip(&vectors) {
                    let slow = census_edge_vector(&graph, &atlas, *pair)?;
                    for orbit in 0..12 {
                        if fast.0[orbit] != slow.0[orbit] {
                            return Err(CliError::Validation(format!(
                                "oracle mismatch: pair ({}, {}) orbit M{}: fast {} vs census {}",
                                graph.label_of(pair.x()),
                                graph.label_of(pair.y()),
                                orbit + 1,
                                fast.0[orbit],
                                slow.0[orbit]
                            )));
                        }
                    }
                }
                println!(
                    "oracle check passed: edge orbits of {} pairs match the census",
                    pairs.len()
                );
            }
            let mut csv = String::from("x,y");
            for orbit in 1..=12 {
                write!(csv, ",M{orbit}").unwrap();
            }
            csv.push('\n');
            for (pair, vector) in pairs.iter().zip(&vectors) {
                write!(
                    csv,
                    "{},{}",
                    graph.label_of(pair.x()),
                    graph.label_of(pair.y())
                )
                .unwrap();
                for count in vector.0 {
                    write!(csv, ",{count}").unwrap();
                }
                csv.push('\n');
            }
            ("pairs.csv", csv, pairs.len())
        }
    };
    manifest.timing("count", started.elapsed().as_millis());

    let csv_path = out.join(file_name);
    std::fs::write(&csv_path, csv)
        .map_err(|err| CliError::Data(format!("cannot write {}: {err}", csv_path.display())))?;
    manifest.output(file_name);
    manifest.write(&out)?;
    println!("wrote {} ({rows} rows)", csv_path.display());
    Ok(())
}

/// Reads a pair file: one pair of node labels per line, whitespace or comma
/// separated, `#` and `%` comment lines skipped.
fn read_pair_file(path: &PathBuf) -> CliResult<Vec<(i64, i64)>> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| CliError::Data(format!("cannot read {}: {err}", path.display())))?;
    let mut pairs = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let cleaned = trimmed.replace(',', " ");
        let tokens: Vec<&str> = cleaned.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(CliError::Data(format!(
                "{} line {}: expected two node labels, got {}",
                path.display(),
                idx + 1,
                tokens.len()
            )));
        }
        let x = tokens[0].parse::<i64>().map_err(|_| {
            CliError::Data(format!(
                "{} line {}: {:?} is not an integer label",
                path.display(),
                idx + 1,
                tokens[0]
            ))
        })?;
        let y = tokens[1].parse::<i64>().map_err(|_| {
            CliError::Data(format!(
                "{} line {}: {:?} is not an integer label",
                path.display(),
                idx + 1,
                tokens[1]
            ))
        })?;
        pairs.push((x, y));
    }
    if pairs.is_empty() {
        return Err(CliError::Data(format!(
            "{} lists no pairs",
            path.display()
        )));
    }
    Ok(pairs)
}
