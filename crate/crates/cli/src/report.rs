use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Report schema version.
pub const SCHEMA: u32 = 1;

/// What a command produced before it is wrapped into a [`RunReport`].
pub struct Outcome {
    pub verdicts: Value,
    /// 0 verified or realized, 2 refuted or empty, 3 undecided.
    pub status: u8,
    pub csv: Option<Vec<Vec<String>>>,
    pub hashes: BTreeMap<String, String>,
}

impl Outcome {
    pub fn new(verdicts: Value) -> Self {
        Outcome { verdicts, status: 0, csv: None, hashes: BTreeMap::new() }
    }
}

#[derive(Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub version: String,
    pub inputs: Value,
    pub input_hashes: BTreeMap<String, String>,
    pub exit_status: u8,
    pub verdicts: Value,
    pub timings: Timings,
}

#[derive(Serialize)]
pub struct Timings {
    pub elapsed_ms: u128,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value, outcome: &Outcome, elapsed: Duration) -> Self {
        RunReport {
            schema: SCHEMA,
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            inputs,
            input_hashes: outcome.hashes.clone(),
            exit_status: outcome.status,
            verdicts: outcome.verdicts.clone(),
            timings: Timings { elapsed_ms: elapsed.as_millis() },
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn to_csv(rows: &[Vec<String>]) -> String {
    let field = |s: &String| {
        if s.contains([',', '"', '\n']) {
            format!("\"{}\"", s.replace('"', "\"\""))
        } else {
            s.clone()
        }
    };
    rows.iter().map(|r| r.iter().map(field).collect::<Vec<_>>().join(",") + "\n").collect()
}
