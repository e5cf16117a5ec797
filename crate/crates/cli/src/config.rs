//! Flat `key = value` settings file. Blank lines and `#` comments are skipped.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

pub const KEYS: &[&str] = &[
    "alpha", "K", "r", "T", "N", "eps", "kind", "mesh-file", "rhs-mode", "out-dir", "cg-tol", "threads",
];

#[derive(Debug, Default, Clone)]
pub struct CliConfig {
    values: BTreeMap<String, String>,
}

impl CliConfig {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected `key = value`", i + 1))?;
            let (k, v) = (k.trim(), v.trim());
            if !KEYS.contains(&k) {
                return Err(format!("config line {}: unknown key `{k}`", i + 1));
            }
            values.insert(k.to_string(), v.to_string());
        }
        let cfg = CliConfig { values };
        cfg.type_check()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text)
    }

    fn type_check(&self) -> Result<(), String> {
        for key in ["alpha", "r", "T", "eps", "cg-tol"] {
            self.get::<f64>(key)?;
        }
        for key in ["K", "N", "threads"] {
            self.get::<usize>(key)?;
        }
        Ok(())
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, String> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| format!("config key `{key}`: cannot parse `{v}`")),
        }
    }

    pub fn get_str(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_known_keys() {
        let c = CliConfig::parse("# run\nalpha = 0.5\nK=40 # steps\n\nrhs-mode = exact-manufactured\n").unwrap();
        assert_eq!(c.get::<f64>("alpha").unwrap(), Some(0.5));
        assert_eq!(c.get::<usize>("K").unwrap(), Some(40));
        assert_eq!(c.get_str("rhs-mode"), Some("exact-manufactured"));
        assert_eq!(c.get::<f64>("r").unwrap(), None);
    }

    #[test]
    fn rejects_unknown_and_mistyped() {
        assert!(CliConfig::parse("alpah = 0.5").is_err());
        assert!(CliConfig::parse("K = forty").is_err());
        assert!(CliConfig::parse("alpha 0.5").is_err());
    }
}
