//! Report envelopes, run configuration and the drivers behind each
//! `zeta-audit` subcommand. Drivers return the rendered output instead of
//! writing it, so they can be tested and compared byte for byte.

mod commands;
mod run_config;

pub use commands::{
    cmd_audit, cmd_census, cmd_figure_data, cmd_sweep, cmd_zeros, CommandOutput, FigureKind,
    FigureRange, SweepRow, SweepTable, SweepTrend,
};
pub use run_config::{RunConfig, CONFIG_KEYS, ENV_PREFIX};

use serde::{Deserialize, Serialize};

use crate::census::CensusReport;
use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::littlewood::LittlewoodReport;

pub const TOOL_NAME: &str = "zeta-audit";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Census(CensusReport),
    Audit(Box<LittlewoodReport>),
    Sweep(SweepTable),
}

/// Self-describing wrapper around every JSON report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub tool: String,
    pub version: String,
    /// Numerical configuration the payload was computed with.
    pub config: EvalConfig,
    /// Seconds since the Unix epoch; taken from SOURCE_DATE_EPOCH when set.
    pub timestamp: u64,
    pub payload: Payload,
    pub flags: Vec<String>,
}

impl ReportEnvelope {
    pub fn new(config: EvalConfig, payload: Payload, flags: Vec<String>) -> Self {
        ReportEnvelope {
            tool: TOOL_NAME.into(),
            version: TOOL_VERSION.into(),
            config,
            timestamp: timestamp(),
            payload,
            flags,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Io(e.to_string()))
    }
}

fn timestamp() -> u64 {
    if let Some(epoch) = std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|v| v.parse().ok()) {
        return epoch;
    }
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Float formatting for CSV: 17 significant digits, enough to round-trip.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Runs `f` on a dedicated pool of `threads` workers (0 = machine default).
#[cfg(feature = "parallel")]
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Usage(format!("cannot start {threads} threads: {e}")))?;
    Ok(pool.install(f))
}
