//! The `domains` subcommand: corpus-level analyses.
//!
//! For every network in a corpus index the command runs the full pipeline
//! (repeated runs with derived seeds), attributes the test predictions, and
//! condenses each network into a 27-entry attribution signature plus
//! aggregate metrics. The signatures are then embedded into two dimensions,
//! each domain's clustering degree is tested against a resampling null
//! model, and winning rates are tabulated per domain and subdomain.
//! Networks that fail are recorded in the manifest and the analysis
//! proceeds on the remainder, as long as at least three networks survive.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::Args;
use orbitlink::analysis::{
    clustering_stat, pca_2d, violin_normalize, winning_rates, NetworkRecord, SignatureKind,
    WinningGranularity, WinningRates,
};
use orbitlink::boost::Hyperparameters;
use orbitlink::metrics::{summarize_metric_sets, MetricSet};
use orbitlink::orbit::OrbitAtlas;
use orbitlink::pipeline::{execute_run, ModelSpec};
use orbitlink::predict::IndexParams;
use orbitlink::protocol::{feature_names, format_float, FeatureMatrix, FEATURE_COUNT};
use orbitlink::shap::{sample_background, tree_shap, DEFAULT_BACKGROUND_SIZE};
use orbitlink::Graph;
use serde::Serialize;

use crate::config::ConfigFile;
use crate::error::{CliError, CliResult};
use crate::explain::LOCAL_ACCURACY_TOLERANCE;
use crate::manifest::ManifestBuilder;

/// Default pipeline repetitions per network; signatures and metrics
/// average over them.
pub const DEFAULT_RUNS_PER_NETWORK: usize = 10;
/// Default resampling draws for the clustering null model.
pub const DEFAULT_NULL_RUNS: usize = 100;

const INDEX_HEADER: &str = "path,name,domain,subdomain";

#[derive(Args)]
pub struct DomainsArgs {
    /// Corpus index CSV with header "path,name,domain,subdomain"; network
    /// paths are resolved relative to the index file.
    index: PathBuf,

    /// Pipeline runs per network; run r of network i uses seed
    /// base-seed + i*runs + r.
    #[arg(long)]
    runs: Option<usize>,

    /// Resampling draws for the clustering null model.
    #[arg(long)]
    null_runs: Option<usize>,

    /// Base seed.
    #[arg(long)]
    seed: Option<u64>,

    /// Signature variant to embed: signed or absolute.
    #[arg(long)]
    signature: Option<String>,

    /// Output directory.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

/// One corpus index row.
struct Entry {
    path: String,
    name: String,
    domain: String,
    subdomain: Option<String>,
}

/// Everything one network contributes to the corpus analysis.
struct NetworkAnalysis {
    record: NetworkRecord,
    violin: String,
    top_feature: String,
}

/// Schema of `pca.json`.
#[derive(Serialize)]
struct PcaFile {
    signature: String,
    explained_variance_ratio: (f64, f64),
    components: Components,
    feature_names: Vec<String>,
}

#[derive(Serialize)]
struct Components {
    first: Vec<f64>,
    second: Vec<f64>,
}

pub fn execute(args: DomainsArgs, config: &ConfigFile, threads: Option<usize>) -> CliResult<()> {
    let runs = args
        .runs
        .or(config.count("runs")?)
        .unwrap_or(DEFAULT_RUNS_PER_NETWORK);
    if runs == 0 {
        return Err(CliError::Usage("at least one run per network is required".into()));
    }
    let null_runs = args
        .null_runs
        .or(config.count("null-runs")?)
        .unwrap_or(DEFAULT_NULL_RUNS);
    let seed = args.seed.or(config.unsigned("seed")?).unwrap_or(0);
    let signature_name = args
        .signature
        .or(config.string("signature")?)
        .unwrap_or_else(|| "signed".to_string());
    let kind = SignatureKind::from_name(&signature_name).ok_or_else(|| {
        CliError::Usage(format!(
            "signature must be \"signed\" or \"absolute\", got {signature_name:?}"
        ))
    })?;
    let out = args
        .out
        .or(config.path("out")?)
        .ok_or_else(|| CliError::Usage("an output directory is required (--out)".into()))?;

    let entries = parse_index(&args.index)?;
    let index_dir = args
        .index
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."))
        .to_path_buf();

    let atlas = OrbitAtlas::standard();
    let hyper = Hyperparameters::default();
    let index_params = IndexParams::default();

    let mut manifest = ManifestBuilder::new("domains", threads);
    manifest.config("index", args.index.display().to_string());
    manifest.config("runs", runs as u64);
    manifest.config("null-runs", null_runs as u64);
    manifest.config("seed", seed);
    manifest.config("signature", kind.name());
    manifest.config("out", out.display().to_string());
    manifest.input(&args.index)?;

    let started = std::time::Instant::now();
    let mut records: Vec<NetworkRecord> = Vec::new();
    let mut violin_csv = String::from("name,feature,group,value,degenerate\n");
    for (i, entry) in entries.iter().enumerate() {
        let path = index_dir.join(&entry.path);
        let base_seed = seed + (i * runs) as u64;
        for r in 0..runs {
            manifest.seed(base_seed + r as u64);
        }
        let outcome = manifest
            .input(&path)
            .and_then(|()| analyze_network(&path, entry, runs, base_seed, &atlas, &hyper, &index_params));
        match outcome {
            Ok(analysis) => {
                println!(
                    "{}: mean auc {:.4} ± {:.4}, top |phi| {}",
                    entry.name,
                    analysis.record.metrics.auc.mean,
                    analysis.record.metrics.auc.std_dev,
                    analysis.top_feature
                );
                violin_csv.push_str(&analysis.violin);
                records.push(analysis.record);
            }
            Err(err) => {
                eprintln!("warning: {} failed and is excluded: {err}", entry.name);
                manifest.failure(&entry.path, &err.to_string());
            }
        }
    }
    manifest.timing("pipeline", started.elapsed().as_millis());
    if records.len() < 3 {
        return Err(CliError::Data(format!(
            "only {} of {} networks analysed; the corpus analyses need at least 3",
            records.len(),
            entries.len()
        )));
    }

    let analysis_started = std::time::Instant::now();
    std::fs::create_dir_all(&out)
        .map_err(|err| CliError::Data(format!("cannot create {}: {err}", out.display())))?;

    let mut records_jsonl = String::new();
    for record in &records {
        records_jsonl.push_str(&serde_json::to_string(record)?);
        records_jsonl.push('\n');
    }
    write_text(&out, "records.jsonl", &records_jsonl, &mut manifest)?;

    let signatures: Vec<Vec<f64>> = records
        .iter()
        .map(|r| r.signature(kind).to_vec())
        .collect();
    let pca = pca_2d(&signatures)?;
    let labels: Vec<String> = records.iter().map(|r| r.domain.clone()).collect();

    let mut pca_csv = String::from("name,domain,pc1,pc2\n");
    for (record, coord) in records.iter().zip(&pca.coordinates) {
        writeln!(
            pca_csv,
            "{},{},{},{}",
            record.name,
            record.domain,
            format_float(coord.0),
            format_float(coord.1)
        )
        .unwrap();
    }
    write_text(&out, "pca.csv", &pca_csv, &mut manifest)?;
    let pca_file = PcaFile {
        signature: kind.name().to_string(),
        explained_variance_ratio: pca.explained_variance_ratio,
        components: Components {
            first: pca.components.0.clone(),
            second: pca.components.1.clone(),
        },
        feature_names: feature_names(),
    };
    let mut pca_json = serde_json::to_string_pretty(&pca_file)?;
    pca_json.push('\n');
    write_text(&out, "pca.json", &pca_json, &mut manifest)?;

    let domains: BTreeSet<String> = labels.iter().cloned().collect();
    let mut clustering_csv = String::from("domain,networks,d_bar,d_tilde_mean,p_value,null_runs\n");
    for (di, domain) in domains.iter().enumerate() {
        let members = labels.iter().filter(|l| *l == domain).count();
        if members < 2 {
            eprintln!(
                "warning: domain {domain} has a single network; clustering statistic skipped"
            );
            continue;
        }
        // Null-model seeds continue after the per-run seed block.
        let null_seed = seed + (entries.len() * runs) as u64 + di as u64;
        let stat = clustering_stat(&pca.coordinates, &labels, domain, null_runs, null_seed)?;
        println!(
            "domain {domain} ({members} networks): d_bar {:.4}, null mean {:.4}, p {}",
            stat.d_bar, stat.d_tilde_mean, stat.p_value
        );
        writeln!(
            clustering_csv,
            "{},{},{},{},{},{}",
            domain,
            members,
            format_float(stat.d_bar),
            format_float(stat.d_tilde_mean),
            stat.p_value,
            stat.runs
        )
        .unwrap();
    }
    write_text(&out, "clustering.csv", &clustering_csv, &mut manifest)?;

    let sub_records = subdomain_records(&records);
    for (file, granularity) in [
        ("winning_features.csv", WinningGranularity::Feature),
        ("winning_categories.csv", WinningGranularity::Category),
    ] {
        let mut csv = String::from("scope,group,item,rate,networks,ties\n");
        append_winning(&mut csv, "domain", &winning_rates(&records, &atlas, granularity)?);
        if !sub_records.is_empty() {
            append_winning(
                &mut csv,
                "subdomain",
                &winning_rates(&sub_records, &atlas, granularity)?,
            );
        }
        write_text(&out, file, &csv, &mut manifest)?;
    }

    write_text(&out, "violin.csv", &violin_csv, &mut manifest)?;
    manifest.timing("analysis", analysis_started.elapsed().as_millis());
    manifest.write(&out)?;
    println!(
        "analysed {} of {} networks across {} domains; wrote {}",
        records.len(),
        entries.len(),
        domains.len(),
        out.display()
    );
    Ok(())
}

/// Runs the pipeline `runs` times on one network and condenses the results
/// into a record: per-feature mean attributions (signed and absolute,
/// averaged over runs) and aggregated metrics. The first run also yields
/// the normalized feature-distribution rows for the violin table.
fn analyze_network(
    path: &Path,
    entry: &Entry,
    runs: usize,
    base_seed: u64,
    atlas: &OrbitAtlas,
    hyper: &Hyperparameters,
    index_params: &IndexParams,
) -> CliResult<NetworkAnalysis> {
    let graph = Graph::load_path(path)
        .map_err(|err| CliError::Data(format!("{}: {err}", path.display())))?;
    let mut signed = vec![0.0f64; FEATURE_COUNT];
    let mut absolute = vec![0.0f64; FEATURE_COUNT];
    let mut sets: Vec<MetricSet> = Vec::with_capacity(runs);
    let mut violin = String::new();
    for r in 0..runs {
        let run_seed = base_seed + r as u64;
        let run = execute_run(&graph, atlas, &ModelSpec::Fused, run_seed, hyper, index_params)?;
        let train_rows: Vec<Vec<f64>> =
            run.train_matrix.rows.iter().map(|row| row.values.clone()).collect();
        let test_rows: Vec<Vec<f64>> =
            run.test_matrix.rows.iter().map(|row| row.values.clone()).collect();
        let background = sample_background(&train_rows, DEFAULT_BACKGROUND_SIZE, run_seed);
        let report = tree_shap(&run.model, &test_rows, &background)?;

        let margins = run.model.predict_margins(&test_rows)?;
        for (margin, phi) in margins.iter().zip(&report.per_sample) {
            let gap = (margin - (report.base_value + phi.iter().sum::<f64>())).abs();
            if gap > LOCAL_ACCURACY_TOLERANCE {
                return Err(CliError::Validation(format!(
                    "local accuracy audit failed on run {r}: gap {gap:e}"
                )));
            }
        }

        for (acc, value) in signed.iter_mut().zip(&report.mean_signed) {
            *acc += value / runs as f64;
        }
        for (acc, value) in absolute.iter_mut().zip(&report.mean_abs) {
            *acc += value / runs as f64;
        }
        sets.push(run.metrics);
        if r == 0 {
            violin = violin_rows(&entry.name, &run.test_matrix)?;
        }
    }
    let record = NetworkRecord {
        name: entry.name.clone(),
        path: entry.path.clone(),
        domain: entry.domain.clone(),
        subdomain: entry.subdomain.clone(),
        signature_signed: signed,
        signature_absolute: absolute,
        metrics: summarize_metric_sets(&sets)?,
    };
    record.validate()?;
    let top_index = record
        .signature_absolute
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(std::cmp::Ordering::Equal))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let top_feature = feature_names()[top_index].clone();
    Ok(NetworkAnalysis {
        record,
        violin,
        top_feature,
    })
}

/// Normalized feature distributions of one test matrix: every feature
/// column is mapped through (max - value) / (max - min) over the matrix's
/// rows and split into existent / nonexistent groups by label.
fn violin_rows(name: &str, matrix: &FeatureMatrix) -> CliResult<String> {
    let mut csv = String::new();
    for (j, feature) in matrix.feature_names.iter().enumerate() {
        let column = matrix.column(j);
        let normalized = violin_normalize(&column)?;
        for (row, value) in matrix.rows.iter().zip(&normalized.values) {
            let group = if row.label == 1 { "existent" } else { "nonexistent" };
            writeln!(
                csv,
                "{name},{feature},{group},{},{}",
                format_float(*value),
                normalized.degenerate
            )
            .unwrap();
        }
    }
    Ok(csv)
}

/// Regroups records by subdomain so the winning-rate tables can be emitted
/// at both scopes; records without a subdomain drop out.
fn subdomain_records(records: &[NetworkRecord]) -> Vec<NetworkRecord> {
    records
        .iter()
        .filter_map(|record| {
            record.subdomain.as_ref().map(|sub| {
                let mut clone = record.clone();
                clone.domain = sub.clone();
                clone
            })
        })
        .collect()
}

fn append_winning(csv: &mut String, scope: &str, rates: &WinningRates) {
    for group in &rates.domains {
        for (item, &rate) in rates.items.iter().zip(&group.rates) {
            writeln!(
                csv,
                "{scope},{},{item},{},{},{}",
                group.domain,
                format_float(rate),
                group.networks,
                group.ties
            )
            .unwrap();
        }
    }
}

fn parse_index(path: &Path) -> CliResult<Vec<Entry>> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| CliError::Data(format!("cannot read {}: {err}", path.display())))?;
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, line)| {
            let trimmed = line.trim();
            !trimmed.is_empty() && !trimmed.starts_with('#')
        });
    let Some((_, header)) = lines.next() else {
        return Err(CliError::Data(format!("{} is empty", path.display())));
    };
    if header.trim() != INDEX_HEADER {
        return Err(CliError::Data(format!(
            "{}: expected header {INDEX_HEADER:?}, got {:?}",
            path.display(),
            header.trim()
        )));
    }
    let mut entries = Vec::new();
    for (idx, line) in lines {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(CliError::Data(format!(
                "{} line {}: expected 4 comma-separated fields, got {}",
                path.display(),
                idx + 1,
                fields.len()
            )));
        }
        if fields[0].is_empty() || fields[1].is_empty() || fields[2].is_empty() {
            return Err(CliError::Data(format!(
                "{} line {}: path, name, and domain must be non-empty",
                path.display(),
                idx + 1
            )));
        }
        entries.push(Entry {
            path: fields[0].to_string(),
            name: fields[1].to_string(),
            domain: fields[2].to_string(),
            subdomain: if fields[3].is_empty() {
                None
            } else {
                Some(fields[3].to_string())
            },
        });
    }
    if entries.len() < 3 {
        return Err(CliError::Data(format!(
            "{} lists {} networks; the corpus analyses need at least 3",
            path.display(),
            entries.len()
        )));
    }
    Ok(entries)
}

fn write_text(
    out: &PathBuf,
    name: &str,
    text: &str,
    manifest: &mut ManifestBuilder,
) -> CliResult<()> {
    std::fs::write(out.join(name), text)
        .map_err(|err| CliError::Data(format!("cannot write {name}: {err}")))?;
    manifest.output(name);
    Ok(())
}
