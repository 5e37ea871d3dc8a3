//! Flat `key = value` configuration files.
//!
//! Blank lines and lines starting with `#` are ignored. Keys are the long
//! flag names of the chosen subcommand or the global options; `_` and `-`
//! are interchangeable. Flags given on the command line win.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use super::UsageError;

#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

fn normalize(key: &str) -> String {
    key.trim().replace('_', "-")
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, UsageError> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                UsageError(format!(
                    "config line {}: expected key=value, got '{line}'",
                    i + 1
                ))
            })?;
            let key = normalize(key);
            if key.is_empty() {
                return Err(UsageError(format!("config line {}: empty key", i + 1)));
            }
            if entries
                .insert(key.clone(), value.trim().to_string())
                .is_some()
            {
                return Err(UsageError(format!(
                    "config line {}: duplicate key '{key}'",
                    i + 1
                )));
            }
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self, UsageError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read config file {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Rejects any key that is not in `allowed`.
    pub fn check_keys(&self, allowed: &[String]) -> Result<(), UsageError> {
        match self.entries.keys().find(|k| !allowed.contains(k)) {
            Some(k) => Err(UsageError(format!(
                "unknown config key '{k}' (allowed: {})",
                allowed.join(", ")
            ))),
            None => Ok(()),
        }
    }

    /// The flag value if present, else the parsed config value.
    pub fn merge<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, UsageError>
    where
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.entries.get(&normalize(key)) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|e| UsageError(format!("config key '{key}': invalid value '{raw}': {e}"))),
        }
    }
}

/// Comma-separated list of reals.
#[derive(Debug, Clone, PartialEq)]
pub struct RealList(pub Vec<f64>);

impl FromStr for RealList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|part| {
                part.trim()
                    .parse::<f64>()
                    .map_err(|e| format!("'{}': {e}", part.trim()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(RealList)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_normalizes_keys() {
        let c = ConfigFile::parse("# comment\n\nwire_area = 100\nalpha=2\n").unwrap();
        assert_eq!(c.merge::<f64>(None, "wire-area").unwrap(), Some(100.0));
        assert_eq!(c.merge(Some(3.0), "alpha").unwrap(), Some(3.0));
        assert_eq!(c.merge::<f64>(None, "alpha").unwrap(), Some(2.0));
        assert_eq!(c.merge::<f64>(None, "t0").unwrap(), None);
    }

    #[test]
    fn rejects_malformed_and_unknown() {
        assert!(ConfigFile::parse("novalue\n").is_err());
        assert!(ConfigFile::parse("a=1\na=2\n").is_err());
        let c = ConfigFile::parse("bogus = 1").unwrap();
        assert!(c.check_keys(&["alpha".to_string()]).is_err());
        let c = ConfigFile::parse("alpha = x").unwrap();
        assert!(c.merge::<f64>(None, "alpha").is_err());
    }

    #[test]
    fn real_lists() {
        assert_eq!("1, 2.5".parse::<RealList>().unwrap().0, vec![1.0, 2.5]);
        assert!("1,,2".parse::<RealList>().is_err());
    }
}
