//! Optional TOML configuration; any flag given on the command line wins.

use std::path::Path;

use serde::Deserialize;

/// Every field mirrors a command-line flag.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub beats: Option<f64>,
    pub range: Option<String>,
    pub level: Option<u32>,
    pub program: Option<u8>,
    pub instrument: Option<String>,
    pub scale: Option<String>,
    pub notes_per_scale: Option<u32>,
    pub interval_max: Option<u8>,
    pub thickness_ref: Option<f64>,
    pub progression: Option<bool>,
    pub interval: Option<bool>,
    pub dynamics: Option<bool>,
    pub pauses: Option<bool>,
    pub midi: Option<bool>,
    pub svg: Option<bool>,
    pub doc: Option<bool>,
    pub threshold: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
    }
}
