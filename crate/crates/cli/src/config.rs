//! `key = value` configuration files. Blank lines and lines starting with
//! `#` are skipped; anything else must contain `=`. Values are kept verbatim
//! (no inline comments) and parsed on demand, so a typo is reported with the
//! key name rather than a line number, while malformed lines are reported
//! with theirs.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context, Result};

#[derive(Debug, Default)]
pub struct FileConfig {
    entries: BTreeMap<String, String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!(
                    "{}: line {}: expected `key = value`, got `{}`",
                    path.display(),
                    idx + 1,
                    raw.trim_end()
                );
            };
            let key = key.trim();
            let value = value.trim();
            if key.is_empty() {
                bail!("{}: line {}: empty key", path.display(), idx + 1);
            }
            if entries
                .insert(key.to_string(), value.to_string())
                .is_some()
            {
                bail!(
                    "{}: line {}: duplicate key `{key}`",
                    path.display(),
                    idx + 1
                );
            }
        }
        Ok(Self { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// Parse the value under `key`, if present.
    pub fn parse<T>(&self, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        match self.get(key) {
            None => Ok(None),
            Some(raw) => match raw.parse::<T>() {
                Ok(v) => Ok(Some(v)),
                Err(e) => bail!("config key `{key}`: invalid value `{raw}`: {e}"),
            },
        }
    }
}
