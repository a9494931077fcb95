//! The `explain` subcommand: exact Shapley attributions for a finished run.
//!
//! Reads one run directory produced by `run` (model, training matrix for
//! the background distribution, test matrix), attributes every test
//! prediction, and audits local accuracy: base value plus the sum of a
//! row's attributions must reconstruct the model margin within 1e-6, or the
//! command exits with the validation code. Outputs a per-row attribution
//! CSV and a summary with the top features and category shares.

use std::fmt::Write as _;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use clap::Args;
use orbitlink::boost::BoostedModel;
use orbitlink::protocol::{format_float, read_matrix_csv, FeatureMatrix};
use orbitlink::shap::{
    aggregate_importance, sample_background, tree_shap, ShapReport, DEFAULT_BACKGROUND_SIZE,
};
use serde::{Deserialize, Serialize};

use crate::config::ConfigFile;
use crate::error::{CliError, CliResult};
use crate::manifest::ManifestBuilder;

/// Largest allowed gap between a margin and its attribution reconstruction.
pub const LOCAL_ACCURACY_TOLERANCE: f64 = 1e-6;

#[derive(Args)]
pub struct ExplainArgs {
    /// Output directory of a previous `run` invocation.
    run_dir: PathBuf,

    /// Which run to explain (default: the first).
    #[arg(long)]
    run_index: Option<usize>,

    /// Background sample size drawn from the training matrix.
    #[arg(long)]
    background: Option<usize>,

    /// Output directory.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

/// The subset of `run.json` the explainer needs.
#[derive(Deserialize)]
struct RunFile {
    seed: u64,
    model: String,
}

/// Schema of `summary.json`.
#[derive(Serialize)]
struct SummaryFile {
    model: String,
    run: usize,
    seed: u64,
    background_size: usize,
    base_value: f64,
    local_accuracy: LocalAccuracy,
    top: Vec<TopFeature>,
    /// Importance shares of the five orbit categories; absent when the
    /// model's features are not orbit features (classical indices).
    category_shares: Option<Vec<CategoryShare>>,
    features: Vec<FeatureImportance>,
}

#[derive(Serialize)]
struct LocalAccuracy {
    tolerance: f64,
    max_gap: f64,
}

#[derive(Serialize)]
struct TopFeature {
    rank: usize,
    feature: String,
    mean_abs: f64,
    mean_signed: f64,
}

#[derive(Serialize)]
struct CategoryShare {
    category: String,
    share: f64,
}

#[derive(Serialize)]
struct FeatureImportance {
    feature: String,
    mean_abs: f64,
    mean_signed: f64,
}

pub fn execute(args: ExplainArgs, config: &ConfigFile, threads: Option<usize>) -> CliResult<()> {
    let run_index = args.run_index.or(config.count("run-index")?).unwrap_or(0);
    let background_size = args
        .background
        .or(config.count("background")?)
        .unwrap_or(DEFAULT_BACKGROUND_SIZE);
    let out = args
        .out
        .or(config.path("out")?)
        .ok_or_else(|| CliError::Usage("an output directory is required (--out)".into()))?;

    let run_dir = args.run_dir.join(format!("runs/run-{run_index:03}"));
    let run_file: RunFile = read_json(&run_dir.join("run.json"))?;
    let model: BoostedModel = read_json(&run_dir.join("model.json"))?;
    let train = read_matrix(&run_dir.join("train.csv"))?;
    let test = read_matrix(&run_dir.join("test.csv"))?;

    let mut manifest = ManifestBuilder::new("explain", threads);
    manifest.config("run-dir", args.run_dir.display().to_string());
    manifest.config("run-index", run_index as u64);
    manifest.config("background", background_size as u64);
    manifest.config("out", out.display().to_string());
    manifest.seed(run_file.seed);
    for name in ["run.json", "model.json", "train.csv", "test.csv"] {
        manifest.input(&run_dir.join(name))?;
    }

    let train_rows: Vec<Vec<f64>> = train.rows.iter().map(|r| r.values.clone()).collect();
    let test_rows: Vec<Vec<f64>> = test.rows.iter().map(|r| r.values.clone()).collect();
    let background = sample_background(&train_rows, background_size, run_file.seed);

    let started = std::time::Instant::now();
    let report = tree_shap(&model, &test_rows, &background)?;
    manifest.timing("shap", started.elapsed().as_millis());

    let max_gap = audit_local_accuracy(&model, &test_rows, &report)?;
    println!(
        "explained {} test rows against {} background rows; local accuracy max gap {max_gap:.3e}",
        test_rows.len(),
        report.background_size
    );

    std::fs::create_dir_all(&out)
        .map_err(|err| CliError::Data(format!("cannot create {}: {err}", out.display())))?;

    let mut csv = String::from("x,y,label");
    for name in &report.feature_names {
        write!(csv, ",phi_{name}").unwrap();
    }
    csv.push('\n');
    for (row, phi) in test.rows.iter().zip(&report.per_sample) {
        write!(csv, "{},{},{}", row.x, row.y, row.label).unwrap();
        for value in phi {
            write!(csv, ",{}", format_float(*value)).unwrap();
        }
        csv.push('\n');
    }
    std::fs::write(out.join("shap.csv"), csv)
        .map_err(|err| CliError::Data(format!("cannot write shap.csv: {err}")))?;
    manifest.output("shap.csv");

    let summary = build_summary(&run_file, run_index, &report, max_gap);
    let mut text = serde_json::to_string_pretty(&summary)?;
    text.push('\n');
    std::fs::write(out.join("summary.json"), text)
        .map_err(|err| CliError::Data(format!("cannot write summary.json: {err}")))?;
    manifest.output("summary.json");
    manifest.write(&out)?;

    let head: Vec<String> = summary
        .top
        .iter()
        .take(5)
        .map(|t| format!("{} {:.4}", t.feature, t.mean_abs))
        .collect();
    println!("top features by mean |phi|: {}", head.join(", "));
    println!("wrote {}", out.display());
    Ok(())
}

/// Checks that attributions reconstruct every margin, returning the worst
/// gap; a gap beyond the tolerance is a validation failure.
fn audit_local_accuracy(
    model: &BoostedModel,
    rows: &[Vec<f64>],
    report: &ShapReport,
) -> CliResult<f64> {
    let margins = model.predict_margins(rows)?;
    let mut max_gap = 0.0f64;
    for (margin, phi) in margins.iter().zip(&report.per_sample) {
        let reconstructed = report.base_value + phi.iter().sum::<f64>();
        max_gap = max_gap.max((margin - reconstructed).abs());
    }
    if max_gap > LOCAL_ACCURACY_TOLERANCE {
        return Err(CliError::Validation(format!(
            "local accuracy audit failed: max gap {max_gap:e} exceeds {LOCAL_ACCURACY_TOLERANCE:e}"
        )));
    }
    Ok(max_gap)
}

fn build_summary(
    run_file: &RunFile,
    run_index: usize,
    report: &ShapReport,
    max_gap: f64,
) -> SummaryFile {
    let mut order: Vec<usize> = (0..report.feature_names.len()).collect();
    order.sort_by(|&a, &b| {
        report.mean_abs[b]
            .partial_cmp(&report.mean_abs[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let top: Vec<TopFeature> = order
        .iter()
        .take(10)
        .enumerate()
        .map(|(rank, &i)| TopFeature {
            rank: rank + 1,
            feature: report.feature_names[i].clone(),
            mean_abs: report.mean_abs[i],
            mean_signed: report.mean_signed[i],
        })
        .collect();
    let category_shares = aggregate_importance(report).ok().map(|shares| {
        shares
            .shares
            .into_iter()
            .map(|(category, share)| CategoryShare { category, share })
            .collect()
    });
    let features = report
        .feature_names
        .iter()
        .zip(report.mean_abs.iter().zip(&report.mean_signed))
        .map(|(name, (&mean_abs, &mean_signed))| FeatureImportance {
            feature: name.clone(),
            mean_abs,
            mean_signed,
        })
        .collect();
    SummaryFile {
        model: run_file.model.clone(),
        run: run_index,
        seed: run_file.seed,
        background_size: report.background_size,
        base_value: report.base_value,
        local_accuracy: LocalAccuracy {
            tolerance: LOCAL_ACCURACY_TOLERANCE,
            max_gap,
        },
        top,
        category_shares,
        features,
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let file = std::fs::File::open(path)
        .map_err(|err| CliError::Data(format!("missing run artifact {}: {err}", path.display())))?;
    serde_json::from_reader(BufReader::new(file))
        .map_err(|err| CliError::Data(format!("cannot parse {}: {err}", path.display())))
}

fn read_matrix(path: &Path) -> CliResult<FeatureMatrix> {
    let file = std::fs::File::open(path)
        .map_err(|err| CliError::Data(format!("missing run artifact {}: {err}", path.display())))?;
    read_matrix_csv(BufReader::new(file))
        .map_err(|err| CliError::Data(format!("cannot parse {}: {err}", path.display())))
}
