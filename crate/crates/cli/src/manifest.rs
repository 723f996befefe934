use std::fs;
use std::path::Path;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;
use stabmatch_core::generate::SEED_RULE;

pub const MANIFEST_FILE: &str = "manifest.json";

/// Run record written next to the data files. Everything except
/// `started_unix_s` and `wall_time_s` is a function of the configuration.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed_rule: Option<&'static str>,
    pub files: Vec<String>,
    pub started_unix_s: u64,
    pub wall_time_s: f64,
}

impl Manifest {
    pub fn new(
        command: &'static str,
        config: Value,
        seed: Option<u64>,
        started: SystemTime,
    ) -> Self {
        Manifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            seed,
            seed_rule: seed.map(|_| SEED_RULE),
            files: Vec::new(),
            started_unix_s: started
                .duration_since(UNIX_EPOCH)
                .unwrap_or(Duration::ZERO)
                .as_secs(),
            wall_time_s: 0.0,
        }
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        let path = dir.join(MANIFEST_FILE);
        fs::write(&path, serde_json::to_string_pretty(self)? + "\n")
            .with_context(|| format!("writing {}", path.display()))
    }
}
