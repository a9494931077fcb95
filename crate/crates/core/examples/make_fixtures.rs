//! Regenerates the bundled synthetic corpus under `data/synth/`.
//!
//! The corpus holds two domains built from opposite growth mechanisms:
//! `closure` networks reward shared neighbourhoods (triadic closure) while
//! `popularity` networks reward raw degree (a heavy-tailed expected-degree
//! model). Every file is produced from fixed seeds, so running this example
//! must reproduce the committed bytes exactly; a test asserts that it does.
//!
//! Usage: `cargo run -p orbitlink --example make_fixtures [out_dir]`
//! where `out_dir` defaults to `data/` relative to the working directory.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use orbitlink::synth;
use orbitlink::Graph;

/// One corpus entry: file stem, display name, domain, subdomain, graph.
fn corpus_entries() -> Vec<(String, String, String, String, Graph)> {
    let mut entries = Vec::new();
    for i in 0..7u64 {
        entries.push((
            format!("closure-{i}"),
            format!("closure network {i}"),
            "closure".to_string(),
            "triadic".to_string(),
            synth::triadic_closure(500, 3, 0.8, 1000 + i).expect("triadic generator"),
        ));
    }
    for i in 0..7u64 {
        entries.push((
            format!("popularity-{i}"),
            format!("popularity network {i}"),
            "popularity".to_string(),
            "expected-degree".to_string(),
            synth::degree_weighted(500, 1500.0, 0.6, 2000 + i).expect("degree generator"),
        ));
    }
    entries
}

fn main() {
    let out_dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new("data").to_path_buf());
    let synth_dir = out_dir.join("synth");
    fs::create_dir_all(&synth_dir).expect("create synth dir");

    let mut index = String::from("path,name,domain,subdomain\n");
    for (stem, name, domain, subdomain, graph) in corpus_entries() {
        let path = synth_dir.join(format!("{stem}.edges"));
        let mut buf = Vec::new();
        writeln!(
            buf,
            "# synthetic {domain} network, {} nodes, {} edges",
            graph.node_count(),
            graph.edge_count()
        )
        .unwrap();
        graph.write_edge_list(&mut buf).expect("serialize edges");
        fs::write(&path, &buf).expect("write edge file");
        index.push_str(&format!("synth/{stem}.edges,{name},{domain},{subdomain}\n"));
        println!(
            "{}: {} nodes, {} edges",
            path.display(),
            graph.node_count(),
            graph.edge_count()
        );
    }
    let index_path = out_dir.join("corpus.csv");
    fs::write(&index_path, index).expect("write corpus index");
    println!("{}", index_path.display());
}
