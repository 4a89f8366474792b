//! Run bookkeeping: input digest, stage timings, produced files and
//! warnings.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::time::Instant;

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 over every input file, each prefixed by its length.
    pub input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
    pub outputs: Vec<String>,
    pub warnings: Vec<String>,
    pub result: Value,
}

pub struct Recorder {
    command: String,
    hasher: Sha256,
    timings: BTreeMap<String, f64>,
    pub outputs: Vec<String>,
    pub warnings: Vec<String>,
}

impl Recorder {
    pub fn new(command: &str) -> Recorder {
        Recorder {
            command: command.to_string(),
            hasher: Sha256::new(),
            timings: BTreeMap::new(),
            outputs: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn input(&mut self, bytes: &[u8]) {
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
    }

    pub fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        *self.timings.entry(stage.to_string()).or_insert(0.0) += start.elapsed().as_secs_f64() * 1e3;
        out
    }

    pub fn finish(self, result: Value, timings: bool) -> RunReport {
        RunReport {
            command: self.command,
            input_digest: hex::encode(self.hasher.finalize()),
            timings_ms: timings.then_some(self.timings),
            outputs: self.outputs,
            warnings: self.warnings,
            result,
        }
    }
}
