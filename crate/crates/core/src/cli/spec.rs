//! `key = value` experiment files mirroring [`SimConfig`].

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sim::SimConfig;

/// A validated experiment description.
///
/// Blank lines and `#` comments are ignored; every other line must be
/// `key = value` with a key from [`crate::sim::CONFIG_KEYS`]. Keys left out keep
/// their [`SimConfig::default`] values and a key may appear only once.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub config: SimConfig,
}

impl ExperimentSpec {
    pub fn new(config: SimConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self { config })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut config = SimConfig::default();
        let mut seen: Vec<String> = Vec::new();
        for (index, raw) in text.lines().enumerate() {
            let line = index + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| Error::Parse {
                line,
                msg: format!("expected `key = value`, found `{content}`"),
            })?;
            let (key, value) = (key.trim(), value.trim());
            if seen.iter().any(|k| k == key) {
                return Err(Error::Parse { line, msg: format!("duplicate key `{key}`") });
            }
            config.set(key, value).map_err(|msg| Error::Parse { line, msg })?;
            seen.push(key.to_string());
        }
        config.validate()?;
        Ok(Self { config })
    }

    /// Reads and parses `path`. A relative `graph_file` is resolved against
    /// the directory holding the spec.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut spec = Self::parse(&text)?;
        if let Some(graph) = &spec.config.graph_file {
            if graph.is_relative() {
                if let Some(dir) = path.parent() {
                    spec.config.graph_file = Some(dir.join(graph));
                }
            }
        }
        Ok(spec)
    }

    pub fn to_text(&self) -> String {
        self.config.to_spec_string()
    }
}

impl FromStr for ExperimentSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for ExperimentSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
