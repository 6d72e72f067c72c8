//! Flat key = value configuration files with dotted keys.
//!
//! Unknown keys are errors, not warnings; missing required keys are listed by
//! name. Values are plain text until a schema asks for a number.

use std::collections::BTreeMap;

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigError {}

pub type ConfigResult<T> = Result<T, ConfigError>;

/// Parsed key/value file, keys in sorted order.
#[derive(Debug, Clone, Default)]
pub struct Config {
    entries: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> ConfigResult<Self> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError(format!(
                    "line {}: expected `key = value`, got `{raw}`",
                    lineno + 1
                )));
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() {
                return Err(ConfigError(format!("line {}: empty key", lineno + 1)));
            }
            if entries.insert(key.clone(), value).is_some() {
                return Err(ConfigError(format!("duplicate key `{key}`")));
            }
        }
        Ok(Config { entries })
    }

    /// Enforce a schema: every present key must be known, every required key present.
    pub fn check_schema(&self, required: &[&str], optional: &[&str]) -> ConfigResult<()> {
        let known = |k: &str| required.contains(&k) || optional.contains(&k);
        let unknown: Vec<&str> = self
            .entries
            .keys()
            .map(String::as_str)
            .filter(|k| !known(k))
            .collect();
        if !unknown.is_empty() {
            return Err(ConfigError(format!("unknown keys: {}", unknown.join(", "))));
        }
        let missing: Vec<&str> = required
            .iter()
            .copied()
            .filter(|k| !self.entries.contains_key(*k))
            .collect();
        if !missing.is_empty() {
            return Err(ConfigError(format!("missing keys: {}", missing.join(", "))));
        }
        Ok(())
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn entries(&self) -> &BTreeMap<String, String> {
        &self.entries
    }

    pub fn f64(&self, key: &str) -> ConfigResult<f64> {
        let raw = self
            .raw(key)
            .ok_or_else(|| ConfigError(format!("missing key `{key}`")))?;
        raw.parse::<f64>()
            .map_err(|_| ConfigError(format!("key `{key}`: `{raw}` is not a number")))
    }

    pub fn f64_or(&self, key: &str, default: f64) -> ConfigResult<f64> {
        match self.raw(key) {
            Some(_) => self.f64(key),
            None => Ok(default),
        }
    }

    pub fn usize(&self, key: &str) -> ConfigResult<usize> {
        let raw = self
            .raw(key)
            .ok_or_else(|| ConfigError(format!("missing key `{key}`")))?;
        raw.parse::<usize>()
            .map_err(|_| ConfigError(format!("key `{key}`: `{raw}` is not a count")))
    }

    pub fn usize_or(&self, key: &str, default: usize) -> ConfigResult<usize> {
        match self.raw(key) {
            Some(_) => self.usize(key),
            None => Ok(default),
        }
    }

    pub fn u64(&self, key: &str) -> ConfigResult<u64> {
        let raw = self
            .raw(key)
            .ok_or_else(|| ConfigError(format!("missing key `{key}`")))?;
        raw.parse::<u64>()
            .map_err(|_| ConfigError(format!("key `{key}`: `{raw}` is not an integer")))
    }

    /// Comma-separated list of numbers (a single number is a one-element list).
    pub fn f64_list(&self, key: &str) -> ConfigResult<Vec<f64>> {
        let raw = self
            .raw(key)
            .ok_or_else(|| ConfigError(format!("missing key `{key}`")))?;
        raw.split(',')
            .map(|piece| {
                piece
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| ConfigError(format!("key `{key}`: `{piece}` is not a number")))
            })
            .collect()
    }
}
