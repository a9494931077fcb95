//! The `run` subcommand: repeated protocol runs of one model on one graph.
//!
//! Each run re-splits the edge set with a derived seed (base seed + run
//! index), trains on the training partition, early-stops against the
//! validation partition, and scores the held-out test pairs. Outputs: a
//! `metrics.json` with per-run and aggregate metrics, one directory per run
//! holding the trained model, the three feature matrices, the split plan,
//! and test predictions, plus the manifest.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use orbitlink::boost::Hyperparameters;
use orbitlink::metrics::{summarize_metric_sets, ConfusionCounts, MetricSet, MetricsSummary};
use orbitlink::orbit::OrbitAtlas;
use orbitlink::pipeline::{execute_runs, ModelSpec, RunResult, DECISION_THRESHOLD};
use orbitlink::predict::IndexParams;
use orbitlink::protocol::{format_float, write_matrix_csv};
use orbitlink::Graph;
use serde::Serialize;

use crate::config::ConfigFile;
use crate::error::{CliError, CliResult};
use crate::manifest::ManifestBuilder;

/// Default number of repeated runs.
pub const DEFAULT_RUNS: usize = 10;

#[derive(Args)]
pub struct RunArgs {
    /// Input edge-list file.
    graph: PathBuf,

    /// Model: od, n-only, m-only, single:<FEATURE>, or classical:<index>.
    #[arg(long)]
    model: Option<String>,

    /// Number of repeated runs; run i uses seed base-seed + i.
    #[arg(long)]
    runs: Option<usize>,

    /// Base seed for split and sampling randomness.
    #[arg(long)]
    seed: Option<u64>,

    /// Output directory.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

/// Schema of `metrics.json`.
#[derive(Serialize)]
struct MetricsFile<'a> {
    model: &'a str,
    graph: String,
    decision_threshold: f64,
    runs: Vec<PerRunMetrics>,
    aggregate: MetricsSummary,
}

#[derive(Serialize)]
struct PerRunMetrics {
    run: usize,
    seed: u64,
    #[serde(flatten)]
    metrics: MetricSet,
}

/// Schema of each run directory's `run.json`.
#[derive(Serialize)]
struct RunFile<'a> {
    run: usize,
    seed: u64,
    model: &'a str,
    decision_threshold: f64,
    metrics: MetricSet,
    confusion: ConfusionCounts,
    training_negatives: &'a [(i64, i64)],
}

pub fn execute(args: RunArgs, config: &ConfigFile, threads: Option<usize>) -> CliResult<()> {
    let model_text = args
        .model
        .or(config.string("model")?)
        .unwrap_or_else(|| "od".to_string());
    let spec = ModelSpec::parse(&model_text)?;
    let model_id = spec.id();
    let runs = args.runs.or(config.count("runs")?).unwrap_or(DEFAULT_RUNS);
    let seed = args.seed.or(config.unsigned("seed")?).unwrap_or(0);
    let out = args
        .out
        .or(config.path("out")?)
        .ok_or_else(|| CliError::Usage("an output directory is required (--out)".into()))?;

    let graph = Graph::load_path(&args.graph)
        .map_err(|err| CliError::Data(format!("{}: {err}", args.graph.display())))?;
    let atlas = OrbitAtlas::standard();
    let hyper = Hyperparameters::default();
    let index_params = IndexParams::default();

    let mut manifest = ManifestBuilder::new("run", threads);
    manifest.config("graph", args.graph.display().to_string());
    manifest.config("model", model_id.clone());
    manifest.config("runs", runs as u64);
    manifest.config("seed", seed);
    manifest.config("out", out.display().to_string());
    manifest.input(&args.graph)?;

    let started = std::time::Instant::now();
    let results = execute_runs(&graph, &atlas, &spec, seed, runs, &hyper, &index_params)?;
    manifest.timing("pipeline", started.elapsed().as_millis());

    std::fs::create_dir_all(&out)
        .map_err(|err| CliError::Data(format!("cannot create {}: {err}", out.display())))?;
    let mut per_run = Vec::new();
    for (i, result) in results.iter().enumerate() {
        manifest.seed(result.seed);
        write_run_dir(&out, i, &model_id, result, &mut manifest)?;
        per_run.push(PerRunMetrics {
            run: i,
            seed: result.seed,
            metrics: result.metrics,
        });
        println!(
            "run {i} (seed {}): auc {:.4} precision {:.4} recall {:.4} f1 {:.4}",
            result.seed,
            result.metrics.auc,
            result.metrics.precision,
            result.metrics.recall,
            result.metrics.f1
        );
    }
    let sets: Vec<MetricSet> = results.iter().map(|r| r.metrics).collect();
    let aggregate = summarize_metric_sets(&sets)?;
    println!(
        "aggregate over {runs} runs: auc {:.4} ± {:.4} | precision {:.4} ± {:.4} | recall {:.4} ± {:.4} | f1 {:.4} ± {:.4}",
        aggregate.auc.mean,
        aggregate.auc.std_dev,
        aggregate.precision.mean,
        aggregate.precision.std_dev,
        aggregate.recall.mean,
        aggregate.recall.std_dev,
        aggregate.f1.mean,
        aggregate.f1.std_dev
    );

    let metrics_file = MetricsFile {
        model: &model_id,
        graph: args.graph.display().to_string(),
        decision_threshold: DECISION_THRESHOLD,
        runs: per_run,
        aggregate,
    };
    write_json(&out, "metrics.json", &metrics_file)?;
    manifest.output("metrics.json");
    manifest.write(&out)?;
    println!("wrote {}", out.display());
    Ok(())
}

/// Writes one run's artifacts under `runs/run-<i>/`.
fn write_run_dir(
    out: &PathBuf,
    i: usize,
    model_id: &str,
    result: &RunResult,
    manifest: &mut ManifestBuilder,
) -> CliResult<()> {
    let rel_dir = format!("runs/run-{i:03}");
    let dir = out.join(&rel_dir);
    std::fs::create_dir_all(&dir)
        .map_err(|err| CliError::Data(format!("cannot create {}: {err}", dir.display())))?;

    let run_file = RunFile {
        run: i,
        seed: result.seed,
        model: model_id,
        decision_threshold: DECISION_THRESHOLD,
        metrics: result.metrics,
        confusion: result.confusion,
        training_negatives: &result.training_negatives,
    };
    write_json(&dir, "run.json", &run_file)?;
    write_json(&dir, "model.json", &result.model)?;
    write_json(&dir, "split.json", &result.plan)?;

    for (name, matrix) in [
        ("train.csv", &result.train_matrix),
        ("validation.csv", &result.validation_matrix),
        ("test.csv", &result.test_matrix),
    ] {
        let mut buffer = Vec::new();
        write_matrix_csv(matrix, &mut buffer)?;
        std::fs::write(dir.join(name), buffer)
            .map_err(|err| CliError::Data(format!("cannot write {name}: {err}")))?;
        manifest.output(&format!("{rel_dir}/{name}"));
    }

    let mut predictions = String::from("x,y,label,probability\n");
    for (row, probability) in result.test_matrix.rows.iter().zip(&result.test_probabilities) {
        writeln!(
            predictions,
            "{},{},{},{}",
            row.x,
            row.y,
            row.label,
            format_float(*probability)
        )
        .unwrap();
    }
    std::fs::write(dir.join("predictions.csv"), predictions)
        .map_err(|err| CliError::Data(format!("cannot write predictions.csv: {err}")))?;

    for name in ["run.json", "model.json", "split.json", "predictions.csv"] {
        manifest.output(&format!("{rel_dir}/{name}"));
    }
    Ok(())
}

/// Serializes a value as pretty JSON with a trailing newline.
fn write_json<T: Serialize>(dir: &PathBuf, name: &str, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(dir.join(name), text)
        .map_err(|err| CliError::Data(format!("cannot write {name}: {err}")))?;
    Ok(())
}
