//! Flat `key = value` job files. Flags given on the command line win over
//! the file; the file wins over `QSYM_CACHE_DIR` and `QSYM_THREADS`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};

pub const KEYS: &[&str] = &[
    "family",
    "graph6",
    "q",
    "n",
    "m",
    "sign",
    "dim",
    "max-internal",
    "max-edges",
    "max-products",
    "time-limit",
    "cache-dir",
    "threads",
    "out",
    "checkpoint",
];

#[derive(Clone, Debug, Default)]
pub struct JobFile {
    values: BTreeMap<String, String>,
}

impl JobFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in config {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                bail!("line {}: expected key = value", no + 1);
            };
            let (k, v) = (k.trim(), v.trim());
            if !KEYS.contains(&k) {
                bail!("line {}: unknown key {k:?}", no + 1);
            }
            if values.insert(k.to_string(), v.to_string()).is_some() {
                bail!("line {}: key {k:?} repeated", no + 1);
            }
        }
        Ok(JobFile { values })
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse().map(Some).map_err(|e| anyhow::anyhow!("config key {key}: {e}")),
        }
    }

    /// Flag if given, else the file's value.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(key),
        }
    }

    pub fn cache_dir(&self, flag: Option<PathBuf>) -> Result<Option<PathBuf>> {
        Ok(self.pick(flag, "cache-dir")?.or_else(|| std::env::var_os("QSYM_CACHE_DIR").map(PathBuf::from)))
    }

    pub fn threads(&self, flag: Option<usize>) -> Result<Option<usize>> {
        if let Some(t) = self.pick(flag, "threads")? {
            return Ok(Some(t));
        }
        match std::env::var("QSYM_THREADS") {
            Ok(s) => Ok(Some(s.trim().parse().with_context(|| format!("QSYM_THREADS={s}"))?)),
            Err(_) => Ok(None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects() {
        let f = JobFile::parse("# job\nfamily = o6minus\nq=3\n\nmax-products = 10\n").unwrap();
        assert_eq!(f.get::<u32>("q").unwrap(), Some(3));
        assert_eq!(f.pick(Some(2u32), "q").unwrap(), Some(2));
        assert_eq!(f.get::<usize>("max-edges").unwrap(), None);
        assert!(JobFile::parse("colour = red").is_err());
        assert!(JobFile::parse("q = 2\nq = 3").is_err());
        assert!(JobFile::parse("q").is_err());
        assert!(f.get::<u32>("family").is_err());
    }
}
