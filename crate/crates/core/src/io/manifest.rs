//! JSON sidecars recording how an output file was produced.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::ResolvedConfig;
use super::IoError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub subcommand: String,
    /// Arguments after the program name.
    pub argv: Vec<String>,
    pub config: ResolvedConfig,
    /// Subcommand settings after defaults were applied.
    pub settings: serde_json::Value,
    pub version: String,
    /// RFC 3339 UTC time of the run.
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(subcommand: &str, argv: &[String], config: ResolvedConfig, settings: serde_json::Value) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            subcommand: subcommand.to_string(),
            argv: argv.to_vec(),
            config,
            settings,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }

    pub fn write(&self, path: &Path) -> Result<(), IoError> {
        std::fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, IoError> {
        let m: Self = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        if m.schema_version != SCHEMA_VERSION {
            return Err(IoError::Invalid(format!("unsupported manifest schema {}", m.schema_version)));
        }
        Ok(m)
    }
}

/// `<output>.manifest.json`.
pub fn sidecar_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::config::ConfigFile;

    #[test]
    fn sidecar_naming() {
        assert_eq!(sidecar_path(Path::new("out/fig1.csv")), PathBuf::from("out/fig1.csv.manifest.json"));
    }

    #[test]
    fn json_round_trip() {
        let cfg = ResolvedConfig::resolve(&ConfigFile::default()).unwrap();
        let m = RunManifest::new("audit", &["audit".into()], cfg, serde_json::json!({"k": 1}));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        m.write(&path).unwrap();
        assert_eq!(RunManifest::load(&path).unwrap(), m);
        assert!(chrono::DateTime::parse_from_rfc3339(&m.timestamp).is_ok());
    }
}
