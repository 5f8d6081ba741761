use std::path::Path;

use fqp_core::Caps;
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Human,
    Machine,
}

/// Settings read from the TOML config file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub caps: Caps,
    pub format: Option<Format>,
    pub oracle: Option<bool>,
}

pub fn load(path: &Path) -> Result<FileConfig, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Applies `key=value` overrides (comma separated) on top of `caps`.
pub fn override_caps(caps: Caps, overrides: &[String]) -> Result<Caps, String> {
    let mut table = toml::Table::try_from(caps).map_err(|e| e.to_string())?;
    for item in overrides.iter().flat_map(|s| s.split(',')).map(str::trim) {
        if item.is_empty() {
            continue;
        }
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| format!("cap override `{item}` is not key=value"))?;
        let key = key.trim().replace('-', "_");
        let value: i64 = value
            .trim()
            .replace('_', "")
            .parse()
            .map_err(|_| format!("cap `{key}` needs an integer, got `{}`", value.trim()))?;
        if !table.contains_key(&key) {
            return Err(format!("unknown cap `{key}`"));
        }
        table.insert(key, toml::Value::Integer(value));
    }
    let caps: Caps = table.try_into().map_err(|e: toml::de::Error| e.to_string())?;
    caps.validate().map_err(|e| e.to_string())?;
    Ok(caps)
}
