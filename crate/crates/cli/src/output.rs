//! Manifests and all-or-nothing file output.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use nlos_core::ScenarioConfig;
use serde::{Deserialize, Serialize};

use crate::{CliError, CliResult};

pub const TOOL_NAME: &str = "nlos-sim";

/// Everything needed to reproduce an output bundle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub created_unix: u64,
    pub config: ScenarioConfig,
}

impl Manifest {
    pub fn new(command: &str, config: &ScenarioConfig) -> Self {
        let created_unix =
            SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        Self {
            tool: TOOL_NAME.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            created_unix,
            config: config.clone(),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Runtime(e.into()))?;
    s.push('\n');
    Ok(s)
}

/// Writes every `(file name, contents)` pair into `dir`, or none of them.
///
/// Files are staged under a temporary name and renamed once all writes
/// succeeded; on failure staged and renamed files are removed.
pub fn write_bundle(dir: &Path, files: &[(&str, String)]) -> CliResult<Vec<PathBuf>> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::Runtime(anyhow::anyhow!("cannot create {}: {e}", dir.display())))?;
    let staged: Vec<(PathBuf, PathBuf)> = files
        .iter()
        .map(|(name, _)| (dir.join(format!(".{name}.partial")), dir.join(name)))
        .collect();

    let mut done: Vec<&Path> = Vec::new();
    let result = (|| -> std::io::Result<()> {
        for ((tmp, _), (_, contents)) in staged.iter().zip(files) {
            fs::write(tmp, contents)?;
        }
        for (tmp, dest) in &staged {
            fs::rename(tmp, dest)?;
            done.push(dest);
        }
        Ok(())
    })();

    if let Err(e) = result {
        for (tmp, _) in &staged {
            let _ = fs::remove_file(tmp);
        }
        for dest in done {
            let _ = fs::remove_file(dest);
        }
        return Err(CliError::Runtime(anyhow::anyhow!("writing output to {}: {e}", dir.display())));
    }
    Ok(staged.into_iter().map(|(_, dest)| dest).collect())
}
