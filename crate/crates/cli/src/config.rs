// Copyright 2026 The dissent Authors
// SPDX-License-Identifier: Apache-2.0

//! Flat `key = value` configuration files.
//!
//! Keys are the long flag names (`gamma2`, `deltaL`, `tol-negativity`, …);
//! `#` starts a comment. Flags given on the command line win over the file.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};

pub const KNOWN_KEYS: &[&str] = &[
    "gamma1",
    "gamma2",
    "rabi0",
    "delta0",
    "deltaL",
    "kr12",
    "cos2eta",
    "omega12-override",
    "gamma12-override",
    "model",
    "convention",
    "threads",
    "out",
    "gnuplot",
    "points",
    "min",
    "max",
    "alpha-min",
    "alpha-max",
    "cos2theta-min",
    "cos2theta-max",
    "omega",
    "seed",
    "samples",
    "tol-trace",
    "tol-condition",
    "tol-negativity",
    "tol-hermitization",
    "tol-resonance",
    "tol-rtol",
    "tol-atol",
    "tol-min-step",
];

#[derive(Debug, Default, Clone, PartialEq)]
pub struct ConfigFile {
    /// key → (line number, raw value)
    entries: BTreeMap<String, (usize, String)>,
}

fn canonical_key(raw: &str) -> String {
    let key = raw.trim().replace('_', "-");
    if key.eq_ignore_ascii_case("deltal") || key.eq_ignore_ascii_case("delta-l") {
        "deltaL".to_string()
    } else {
        key.to_ascii_lowercase()
    }
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (k, line) in text.lines().enumerate() {
            let lineno = k + 1;
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| anyhow!("line {lineno}: expected `key = value`, got `{content}`"))?;
            let key = canonical_key(key);
            let value = value.trim();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                bail!("line {lineno}: unknown key `{key}`");
            }
            if value.is_empty() {
                bail!("line {lineno}: empty value for `{key}`");
            }
            if let Some((first, _)) = entries.insert(key.clone(), (lineno, value.to_string())) {
                bail!("line {lineno}: `{key}` already set on line {first}");
            }
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in config {}", path.display()))
    }

    pub fn value<T>(&self, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        match self.entries.get(key) {
            None => Ok(None),
            Some((lineno, raw)) => raw
                .parse()
                .map(Some)
                .map_err(|e| anyhow!("config line {lineno}: invalid value `{raw}` for `{key}`: {e}")),
        }
    }

    /// `flag` if given, otherwise the file's value for `key`.
    pub fn pick<T>(&self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.value(key),
        }
    }
}
