use serde::{Deserialize, Serialize};

use crate::config::EvalConfig;
use crate::error::{Error, Result};

/// Prefix of the environment variables overriding config keys, e.g.
/// `ZETA_AUDIT_ABS_TOL=1e-9`.
pub const ENV_PREFIX: &str = "ZETA_AUDIT_";

/// Every key accepted in a config file or through the environment.
pub const CONFIG_KEYS: &[&str] = &[
    "dirichlet_terms",
    "em_cutoff",
    "em_bernoulli_terms",
    "abs_tol",
    "weierstrass_terms",
    "zero_guard",
    "zero_tol",
    "residual_tol",
    "quadrature_tol",
    "max_halvings",
    "threads",
    "out",
    "alphas",
    "t_values",
];

/// Run parameters: numerical knobs plus defaults for the sweep lists.
///
/// Sources are layered: built-in defaults, then the config file (flat
/// `key = value` pairs), then `ZETA_AUDIT_<KEY>` environment variables, then
/// command-line flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub eval: EvalConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(default)]
    pub alphas: Vec<f64>,
    #[serde(default)]
    pub t_values: Vec<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            eval: EvalConfig::default(),
            threads: None,
            out: None,
            alphas: vec![0.45, 0.49],
            t_values: vec![100.0, 250.0, 500.0, 1000.0],
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.eval.validate()?;
        if let Some(&a) = self.alphas.iter().find(|&&a| !(a > 0.0 && a < 0.5)) {
            return Err(Error::Validation(format!("alpha {a} outside (0, 1/2)")));
        }
        if let Some(&t) = self.t_values.iter().find(|&&t| !(t > 0.0 && t.is_finite())) {
            return Err(Error::Validation(format!("T value {t} is not positive")));
        }
        if self.threads == Some(0) {
            return Err(Error::Config("threads must be at least 1".into()));
        }
        Ok(())
    }

    /// Drops repeated T values, keeping first occurrences.
    pub fn dedupe_t_values(&mut self) {
        let mut seen = Vec::new();
        self.t_values.retain(|t| {
            let new = !seen.contains(t);
            seen.push(*t);
            new
        });
    }
}

#[cfg(feature = "cli")]
impl RunConfig {
    fn check_keys(table: &toml::Table, source: &str) -> Result<()> {
        match table.keys().find(|k| !CONFIG_KEYS.contains(&k.as_str())) {
            Some(k) => Err(Error::Usage(format!("unknown config key '{k}' in {source}"))),
            None => Ok(()),
        }
    }

    /// Parses one environment value as a TOML value, falling back to a string.
    fn env_value(raw: &str) -> toml::Value {
        format!("v = {raw}")
            .parse::<toml::Table>()
            .ok()
            .and_then(|mut t| t.remove("v"))
            .unwrap_or_else(|| toml::Value::String(raw.to_string()))
    }

    /// Builds the configuration from optional file contents and an
    /// environment snapshot.
    pub fn load<I>(file: Option<&str>, env: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, String)>,
    {
        let mut table = toml::Table::try_from(RunConfig::default())
            .map_err(|e| Error::Config(e.to_string()))?;
        if let Some(text) = file {
            let file_table: toml::Table =
                text.parse().map_err(|e| Error::Usage(format!("config file: {e}")))?;
            Self::check_keys(&file_table, "config file")?;
            table.extend(file_table);
        }
        let mut env_table = toml::Table::new();
        for (key, value) in env {
            if let Some(name) = key.strip_prefix(ENV_PREFIX) {
                env_table.insert(name.to_ascii_lowercase(), Self::env_value(&value));
            }
        }
        Self::check_keys(&env_table, "environment")?;
        table.extend(env_table);
        let mut cfg: RunConfig = table
            .try_into()
            .map_err(|e: toml::de::Error| Error::Usage(e.to_string()))?;
        cfg.dedupe_t_values();
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }
}
