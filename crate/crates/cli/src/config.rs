//! Configuration file handling.
//!
//! A configuration file is a JSON object with a flat key namespace that
//! mirrors the command-line flags (`"runs": 20` stands for `--runs 20`).
//! Command-line flags override file values; built-in defaults fill whatever
//! remains. Unknown keys are rejected so typos surface instead of being
//! silently ignored.

use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::error::{CliError, CliResult};

/// Every key any command understands. The namespace is shared: a single
/// file may configure several commands, and each command reads only the
/// keys it uses.
const KNOWN_KEYS: &[&str] = &[
    "threads",
    "out",
    "target",
    "pair-list",
    "oracle",
    "model",
    "runs",
    "seed",
    "run-index",
    "background",
    "null-runs",
    "signature",
];

/// Parsed configuration file; empty when no file was given.
#[derive(Debug, Default)]
pub struct ConfigFile {
    values: serde_json::Map<String, Value>,
}

impl ConfigFile {
    /// Loads and validates a configuration file.
    pub fn load(path: Option<&Path>) -> CliResult<ConfigFile> {
        let Some(path) = path else {
            return Ok(ConfigFile::default());
        };
        let text = std::fs::read_to_string(path).map_err(|err| {
            CliError::Usage(format!("cannot read config {}: {err}", path.display()))
        })?;
        let value: Value = serde_json::from_str(&text).map_err(|err| {
            CliError::Usage(format!("config {} is not valid JSON: {err}", path.display()))
        })?;
        let Value::Object(values) = value else {
            return Err(CliError::Usage(format!(
                "config {} must be a JSON object with flat keys",
                path.display()
            )));
        };
        for key in values.keys() {
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::Usage(format!(
                    "config {}: unknown key {key:?} (known keys: {})",
                    path.display(),
                    KNOWN_KEYS.join(", ")
                )));
            }
        }
        Ok(ConfigFile { values })
    }

    pub fn string(&self, key: &str) -> CliResult<Option<String>> {
        match self.values.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(other) => Err(type_error(key, "a string", other)),
        }
    }

    pub fn path(&self, key: &str) -> CliResult<Option<PathBuf>> {
        Ok(self.string(key)?.map(PathBuf::from))
    }

    pub fn unsigned(&self, key: &str) -> CliResult<Option<u64>> {
        match self.values.get(key) {
            None => Ok(None),
            Some(Value::Number(n)) => n
                .as_u64()
                .map(Some)
                .ok_or_else(|| type_error(key, "a non-negative integer", &self.values[key])),
            Some(other) => Err(type_error(key, "a non-negative integer", other)),
        }
    }

    pub fn count(&self, key: &str) -> CliResult<Option<usize>> {
        Ok(self.unsigned(key)?.map(|v| v as usize))
    }

    pub fn flag(&self, key: &str) -> CliResult<Option<bool>> {
        match self.values.get(key) {
            None => Ok(None),
            Some(Value::Bool(b)) => Ok(Some(*b)),
            Some(other) => Err(type_error(key, "a boolean", other)),
        }
    }
}

fn type_error(key: &str, expected: &str, got: &Value) -> CliError {
    CliError::Usage(format!("config key {key:?} must be {expected}, got {got}"))
}
