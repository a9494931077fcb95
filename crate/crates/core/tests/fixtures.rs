//! Pins the bundled data fixtures to their generators.
//!
//! The synthetic corpus under `data/synth/` is produced by the
//! `make_fixtures` example from fixed seeds. Regenerating every file here and
//! comparing bytes guards against both generator drift and accidental edits
//! to the committed fixtures.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use orbitlink::synth;
use orbitlink::Graph;

fn data_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data"))
}

fn render(graph: &Graph, domain: &str) -> Vec<u8> {
    let mut buf = Vec::new();
    writeln!(
        buf,
        "# synthetic {domain} network, {} nodes, {} edges",
        graph.node_count(),
        graph.edge_count()
    )
    .unwrap();
    graph.write_edge_list(&mut buf).unwrap();
    buf
}

#[test]
fn synthetic_corpus_matches_its_generators() {
    let mut index = String::from("path,name,domain,subdomain\n");
    for i in 0..7u64 {
        let graph = synth::triadic_closure(500, 3, 0.8, 1000 + i).unwrap();
        let committed = std::fs::read(data_dir().join(format!("synth/closure-{i}.edges"))).unwrap();
        assert_eq!(committed, render(&graph, "closure"), "closure-{i} drifted");
        writeln!(index, "synth/closure-{i}.edges,closure network {i},closure,triadic").unwrap();
    }
    for i in 0..7u64 {
        let graph = synth::degree_weighted(500, 1500.0, 0.6, 2000 + i).unwrap();
        let committed =
            std::fs::read(data_dir().join(format!("synth/popularity-{i}.edges"))).unwrap();
        assert_eq!(
            committed,
            render(&graph, "popularity"),
            "popularity-{i} drifted"
        );
        writeln!(
            index,
            "synth/popularity-{i}.edges,popularity network {i},popularity,expected-degree"
        )
        .unwrap();
    }
    let committed_index = std::fs::read_to_string(data_dir().join("corpus.csv")).unwrap();
    assert_eq!(committed_index, index);
}

#[test]
fn bundled_networks_load_cleanly() {
    let karate = Graph::load_path(data_dir().join("karate.edges")).unwrap();
    assert_eq!(karate.node_count(), 34);
    assert_eq!(karate.edge_count(), 78);
    assert_eq!(karate.max_degree(), 17);

    let florentine = Graph::load_path(data_dir().join("florentine.edges")).unwrap();
    assert_eq!(florentine.node_count(), 15);
    assert_eq!(florentine.edge_count(), 20);

    for (name, nodes, edges) in [
        ("triangle", 3, 3),
        ("star", 6, 5),
        ("path4", 4, 3),
        ("c4", 4, 4),
        ("k4", 4, 6),
    ] {
        let toy = Graph::load_path(data_dir().join(format!("toys/{name}.edges"))).unwrap();
        assert_eq!(toy.node_count(), nodes, "{name} nodes");
        assert_eq!(toy.edge_count(), edges, "{name} edges");
    }
}
