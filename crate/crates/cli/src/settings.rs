//! Flag values merged with an optional `key = value` config file.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use hyposhift::exact_linalg::parse_rational;
use hyposhift::Rational;

pub const KEYS: [&str; 19] = [
    "k", "h", "l", "x", "x2", "y2", "a2", "kappa2", "p", "q", "family", "decimal", "out", "vary", "start", "stop",
    "step", "tests", "format",
];

#[derive(Clone, Debug, Default)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

/// Parse `key = value` lines. `#` starts a comment; blank lines are skipped.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split_once('#').map_or(raw, |(before, _)| before).trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| anyhow!("line {}: expected `key = value`", n + 1))?;
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            bail!("line {}: unknown key {key:?}", n + 1);
        }
        if value.is_empty() {
            bail!("line {}: empty value for {key}", n + 1);
        }
        if out.insert(key.to_string(), value.to_string()).is_some() {
            bail!("line {}: {key} given twice", n + 1);
        }
    }
    Ok(out)
}

impl Settings {
    /// Flags win over the file; every disagreement is reported in the
    /// returned notes.
    pub fn merge(flags: &[(&'static str, Option<&String>)], file: BTreeMap<String, String>, source: &str) -> (Self, Vec<String>) {
        let mut values = file;
        let mut notes = Vec::new();
        for (key, flag) in flags {
            let Some(flag) = flag else { continue };
            if let Some(old) = values.insert(key.to_string(), flag.to_string()) {
                if old != **flag {
                    notes.push(format!("warning: --{key} {flag} overrides {key} = {old} from {source}"));
                }
            }
        }
        (Settings { values }, notes)
    }

    pub fn load(flags: &[(&'static str, Option<&String>)], config: Option<&Path>) -> Result<(Self, Vec<String>)> {
        let Some(path) = config else {
            return Ok(Self::merge(flags, BTreeMap::new(), ""));
        };
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        let file = parse_config(&text).with_context(|| format!("in config {}", path.display()))?;
        Ok(Self::merge(flags, file, &path.display().to_string()))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn set(&mut self, key: &str, value: String) {
        self.values.insert(key.to_string(), value);
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| anyhow!("missing --{key}"))
    }

    pub fn require_rational(&self, key: &str) -> Result<Rational> {
        parse_rational(self.require(key)?).with_context(|| format!("--{key}"))
    }

    pub fn count(&self, key: &str) -> Result<Option<usize>> {
        self.get(key)
            .map(|v| {
                let n: usize = v.parse().map_err(|_| anyhow!("--{key} must be a positive integer, got {v:?}"))?;
                if n == 0 {
                    bail!("--{key} must be at least 1");
                }
                Ok(n)
            })
            .transpose()
    }

    pub fn decimal(&self) -> Result<Option<u32>> {
        self.get("decimal")
            .map(|v| {
                let n: u32 = v.parse().map_err(|_| anyhow!("--decimal must be a digit count, got {v:?}"))?;
                if n > 1000 {
                    bail!("--decimal must be at most 1000");
                }
                Ok(n)
            })
            .transpose()
    }
}
