//! Run manifests.
//!
//! Every artifact-producing command writes exactly one `manifest.json`
//! describing the invocation: the resolved configuration, the seeds it
//! derived, SHA-256 hashes of every input file, component versions, and the
//! produced output files. Reruns with identical manifest inputs reproduce
//! identical data outputs byte for byte; wall-clock timings and the worker
//! thread count are quarantined under `execution`, the one section allowed
//! to differ.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

/// File name of the manifest inside an output directory.
pub const MANIFEST_FILE: &str = "manifest.json";

/// One hashed input file.
#[derive(Debug, Serialize)]
pub struct InputHash {
    pub path: String,
    pub sha256: String,
}

/// A corpus entry that failed and was excluded from an analysis.
#[derive(Debug, Serialize)]
pub struct NetworkFailure {
    pub path: String,
    pub error: String,
}

/// Execution details that may legitimately differ between reruns.
#[derive(Debug, Serialize)]
pub struct Execution {
    /// Requested worker threads; `null` means the scheduler default.
    pub threads: Option<usize>,
    pub timings_ms: BTreeMap<String, u128>,
}

/// The manifest document.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config: BTreeMap<String, serde_json::Value>,
    pub seeds: Vec<u64>,
    pub inputs: Vec<InputHash>,
    pub versions: BTreeMap<String, String>,
    pub outputs: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<NetworkFailure>,
    pub execution: Execution,
}

/// Accumulates manifest content while a command runs.
pub struct ManifestBuilder {
    command: String,
    config: BTreeMap<String, serde_json::Value>,
    seeds: Vec<u64>,
    inputs: Vec<InputHash>,
    outputs: Vec<String>,
    failures: Vec<NetworkFailure>,
    threads: Option<usize>,
    timings_ms: BTreeMap<String, u128>,
    started: Instant,
}

impl ManifestBuilder {
    pub fn new(command: &str, threads: Option<usize>) -> ManifestBuilder {
        ManifestBuilder {
            command: command.to_string(),
            config: BTreeMap::new(),
            seeds: Vec::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            failures: Vec::new(),
            threads,
            timings_ms: BTreeMap::new(),
            started: Instant::now(),
        }
    }

    /// Records one resolved configuration setting.
    pub fn config(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.config.insert(key.to_string(), value.into());
    }

    pub fn seed(&mut self, seed: u64) {
        self.seeds.push(seed);
    }

    /// Hashes an input file and records it.
    pub fn input(&mut self, path: &Path) -> CliResult<()> {
        let sha256 = sha256_file(path)?;
        self.inputs.push(InputHash {
            path: path.display().to_string(),
            sha256,
        });
        Ok(())
    }

    /// Records one produced file, named relative to the output directory.
    pub fn output(&mut self, name: &str) {
        self.outputs.push(name.to_string());
    }

    pub fn failure(&mut self, path: &str, error: &str) {
        self.failures.push(NetworkFailure {
            path: path.to_string(),
            error: error.to_string(),
        });
    }

    /// Records a named stage duration.
    pub fn timing(&mut self, stage: &str, milliseconds: u128) {
        self.timings_ms.insert(stage.to_string(), milliseconds);
    }

    /// Finalizes the manifest and writes it into `dir`.
    pub fn write(mut self, dir: &Path) -> CliResult<PathBuf> {
        self.outputs.sort();
        self.timings_ms
            .insert("total".to_string(), self.started.elapsed().as_millis());
        let manifest = RunManifest {
            command: self.command,
            config: self.config,
            seeds: self.seeds,
            inputs: self.inputs,
            versions: BTreeMap::from([
                ("orbitlink".to_string(), orbitlink::VERSION.to_string()),
                (
                    "orbitlink-cli".to_string(),
                    env!("CARGO_PKG_VERSION").to_string(),
                ),
            ]),
            outputs: self.outputs,
            failures: self.failures,
            execution: Execution {
                threads: self.threads,
                timings_ms: self.timings_ms,
            },
        };
        let path = dir.join(MANIFEST_FILE);
        let mut text = serde_json::to_string_pretty(&manifest)?;
        text.push('\n');
        std::fs::write(&path, text)
            .map_err(|err| CliError::Data(format!("cannot write {}: {err}", path.display())))?;
        Ok(path)
    }
}

/// SHA-256 of a file, as lowercase hex.
pub fn sha256_file(path: &Path) -> CliResult<String> {
    let mut file = std::fs::File::open(path)
        .map_err(|err| CliError::Data(format!("cannot read {}: {err}", path.display())))?;
    let mut hasher = Sha256::new();
    let mut buffer = [0u8; 64 * 1024];
    loop {
        let read = file.read(&mut buffer)?;
        if read == 0 {
            break;
        }
        hasher.update(&buffer[..read]);
    }
    let digest = hasher.finalize();
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn manifests_serialize_inputs_outputs_and_seeds() {
        let dir = tempfile::tempdir().unwrap();
        let input = dir.path().join("input.txt");
        std::fs::write(&input, b"abc").unwrap();

        let mut builder = ManifestBuilder::new("run", Some(2));
        builder.config("model", "od");
        builder.config("runs", 3u64);
        builder.seed(7);
        builder.seed(8);
        builder.input(&input).unwrap();
        builder.output("metrics.json");
        builder.timing("pipeline", 12);
        let path = builder.write(dir.path()).unwrap();

        let text = std::fs::read_to_string(path).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["command"], "run");
        assert_eq!(value["config"]["model"], "od");
        assert_eq!(value["seeds"], serde_json::json!([7, 8]));
        // SHA-256 of "abc", a fixed test vector.
        assert_eq!(
            value["inputs"][0]["sha256"],
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
        assert_eq!(value["outputs"], serde_json::json!(["metrics.json"]));
        assert_eq!(value["execution"]["threads"], 2);
        assert!(value["execution"]["timings_ms"]["total"].is_number());
        assert!(value.get("failures").is_none());
    }

    #[test]
    fn failures_appear_only_when_present() {
        let dir = tempfile::tempdir().unwrap();
        let mut builder = ManifestBuilder::new("domains", None);
        builder.failure("broken.edges", "parse error on line 3");
        let path = builder.write(dir.path()).unwrap();
        let value: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        assert_eq!(value["failures"][0]["path"], "broken.edges");
        assert_eq!(value["execution"]["threads"], serde_json::Value::Null);
    }

    #[test]
    fn file_hashes_are_streamed_and_stable() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        let chunk = vec![0x41u8; 100_000];
        file.write_all(&chunk).unwrap();
        let first = sha256_file(file.path()).unwrap();
        let second = sha256_file(file.path()).unwrap();
        assert_eq!(first, second);
        assert_eq!(first.len(), 64);
    }
}
