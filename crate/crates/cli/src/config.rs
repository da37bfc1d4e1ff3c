//! JSON scenario files. Keys mirror `ScenarioConfig`; missing keys take the
//! reference defaults and unknown keys are rejected.

use std::fs;
use std::path::Path;

use nlos_core::ScenarioConfig;

use crate::CliError;

pub fn load_config(path: &Path) -> Result<ScenarioConfig, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text).map_err(|msg| CliError::Usage(format!("config {}: {msg}", path.display())))
}

pub fn parse_config(text: &str) -> Result<ScenarioConfig, String> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        if path == "." {
            e.inner().to_string()
        } else {
            format!("at key '{path}': {}", e.inner())
        }
    })
}

/// Config from `--config`, or defaults.
pub fn base_config(path: Option<&Path>) -> Result<ScenarioConfig, CliError> {
    match path {
        Some(p) => load_config(p),
        None => Ok(ScenarioConfig::default()),
    }
}
