//! Run manifests: command, resolved config, code version, seed, wall-clock
//! timestamps and output paths. Result artifacts (CSV, report JSON) are
//! byte-deterministic for a given config+seed; the manifest carries timing and
//! is the one non-deterministic file a run writes.

use serde::Serialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    pub seed: u64,
    pub config: BTreeMap<String, String>,
    pub started_unix: f64,
    pub finished_unix: f64,
    pub outputs: Vec<String>,
}

fn now_unix() -> f64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs_f64())
        .unwrap_or(0.0)
}

impl RunManifest {
    pub fn begin(command: &str, seed: u64, config: BTreeMap<String, String>) -> Self {
        RunManifest {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            config,
            started_unix: now_unix(),
            finished_unix: 0.0,
            outputs: Vec::new(),
        }
    }

    pub fn record_output(&mut self, path: &Path) {
        self.outputs.push(path.display().to_string());
    }

    pub fn finish_and_write(mut self, dir: &Path) -> std::io::Result<PathBuf> {
        self.finished_unix = now_unix();
        let path = dir.join("manifest.json");
        let json = serde_json::to_string_pretty(&self).expect("manifest serializes");
        std::fs::write(&path, json)?;
        Ok(path)
    }
}
