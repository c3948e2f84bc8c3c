//! Parameter resolution: defaults, then the config file, then flags.

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};
use std::path::Path;

use crate::CliError;

/// Contents of a `--config` file: top-level keys apply to every command, a
/// section named after the command (`"beam-modes"`, `"poisson"`, …)
/// overrides them.
#[derive(Debug, Clone, Default)]
pub struct ConfigFile {
    root: Map<String, Value>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("--config: cannot read {}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("--config: {} is not valid JSON: {e}", path.display())))?;
        match value {
            Value::Object(root) => Ok(Self { root }),
            _ => Err(CliError::Usage("--config: top level must be a JSON object".into())),
        }
    }

    /// Merged key/value view for `command`.
    pub fn section(&self, command: &str) -> Map<String, Value> {
        let mut out: Map<String, Value> = self
            .root
            .iter()
            .filter(|(_, v)| !v.is_object())
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        if let Some(Value::Object(sec)) = self.root.get(command) {
            out.extend(sec.clone());
        }
        out
    }
}

/// Build the effective parameter record of type `P` from a config section
/// and the flags that were given.
pub fn resolve<P, F>(config: &Map<String, Value>, flags: &F) -> Result<P, CliError>
where
    P: DeserializeOwned + Serialize + Default,
    F: Serialize,
{
    // start from the defaults so unknown config keys are dropped
    let defaults = match serde_json::to_value(P::default()).expect("defaults serialize") {
        Value::Object(m) => m,
        _ => unreachable!("parameter records are structs"),
    };
    let mut merged = Map::new();
    for (k, v) in &defaults {
        merged.insert(k.clone(), config.get(k).cloned().unwrap_or_else(|| v.clone()));
    }
    if let Value::Object(given) = serde_json::to_value(flags).expect("flags serialize") {
        for (k, v) in given {
            if defaults.contains_key(&k) {
                merged.insert(k, v);
            }
        }
    }
    serde_json::from_value(Value::Object(merged))
        .map_err(|e| CliError::Usage(format!("invalid parameter value: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde::Deserialize;

    #[derive(Debug, Serialize, Deserialize, PartialEq)]
    #[serde(rename_all = "kebab-case")]
    struct P {
        alpha: f64,
        count: usize,
        name: Option<String>,
    }

    impl Default for P {
        fn default() -> Self {
            Self {
                alpha: 1.0,
                count: 3,
                name: None,
            }
        }
    }

    #[derive(Serialize)]
    struct Flags {
        #[serde(skip_serializing_if = "Option::is_none")]
        count: Option<usize>,
    }

    #[test]
    fn flags_override_config_override_defaults() {
        let cfg = ConfigFile {
            root: serde_json::from_str(r#"{"alpha": 0.8, "count": 7, "other": 1, "beam-modes": {"count": 9}}"#).unwrap(),
        };
        let p: P = resolve(&cfg.section("measure"), &Flags { count: None }).unwrap();
        assert_eq!(p, P { alpha: 0.8, count: 7, name: None });
        let p: P = resolve(&cfg.section("beam-modes"), &Flags { count: None }).unwrap();
        assert_eq!(p.count, 9);
        let p: P = resolve(&cfg.section("beam-modes"), &Flags { count: Some(2) }).unwrap();
        assert_eq!(p.count, 2);
        let p: P = resolve(&Map::new(), &Flags { count: None }).unwrap();
        assert_eq!(p, P::default());
    }

    #[test]
    fn bad_types_are_usage_errors() {
        let cfg = ConfigFile {
            root: serde_json::from_str(r#"{"alpha": "big"}"#).unwrap(),
        };
        let r: Result<P, _> = resolve(&cfg.section("x"), &Flags { count: None });
        assert!(matches!(r, Err(CliError::Usage(_))));
    }
}
