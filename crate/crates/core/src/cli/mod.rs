//! Command-line surface: JSON configs in, JSON reports out.
//!
//! Subcommands: `star`, `momentum`, `class`, `compare`, `verify`. Exit codes
//! are 0 on success, 1 when an invariant fails (or a computation hits an
//! obstruction it cannot report as a result) and 2 when the input is
//! rejected.

mod config;
mod report;
mod run;

use std::path::Path;

use serde_json::Value;

pub use config::{load_config, ConfigError, RawConfig, RunConfig, SecondPair};
pub use report::CheckRow;
pub use run::RESOLVED_SIGN;

use crate::cohomology::Witness;
use crate::error::Error;

#[derive(Clone, Debug)]
pub enum Command {
    Star,
    Momentum,
    Class,
    Compare,
    /// Optionally re-checks a witness printed by `compare`.
    Verify { witness: Option<Witness> },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Star => "star",
            Command::Momentum => "momentum",
            Command::Class => "class",
            Command::Compare => "compare",
            Command::Verify { .. } => "verify",
        }
    }
}

/// Command-line values that replace the corresponding config entries.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub f: Option<String>,
    pub g: Option<String>,
    pub order: Option<usize>,
    pub degree_bound: Option<u32>,
}

impl Overrides {
    pub fn apply(&self, raw: &mut RawConfig) {
        if let Some(f) = &self.f {
            raw.f = Some(f.clone());
        }
        if let Some(g) = &self.g {
            raw.g = Some(g.clone());
        }
        if let Some(k) = self.order {
            raw.order = k;
        }
        if let Some(d) = self.degree_bound {
            raw.degree_bound = Some(d);
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    /// False only when `verify` found a failing invariant.
    pub passed: bool,
}

impl Report {
    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("JSON values serialize");
        s.push('\n');
        s
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

/// Failure before a report exists.
#[derive(Debug)]
pub enum RunError {
    Config(ConfigError),
    Engine(Error),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Config(e) => write!(f, "config: {e}"),
            RunError::Engine(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Engine(e) => match e {
                Error::Parse(_)
                | Error::DimensionMismatch { .. }
                | Error::Invalid(_)
                | Error::Unsupported(_)
                | Error::Validity(_)
                | Error::NotClosed(_)
                | Error::NuZeroTerm(_) => 2,
                _ => 1,
            },
        }
    }
}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e)
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Engine(e)
    }
}

pub fn run(cmd: &Command, cfg: &RunConfig) -> Result<Report, RunError> {
    let (json, passed) = run::run_command(cmd, cfg)?;
    Ok(Report { json, passed })
}

/// Loads the config with overrides applied and runs the command.
pub fn run_config_text(cmd: &Command, text: &str, overrides: &Overrides) -> Result<Report, RunError> {
    let mut raw = RawConfig::parse(text)?;
    overrides.apply(&mut raw);
    let cfg = raw.validate()?;
    run(cmd, &cfg)
}

/// Reads a witness `{ "C": [...], "t": "..." }`, either bare or as the
/// `result.witness` of a `compare` report.
pub fn parse_witness(text: &str, dim: usize, order: usize) -> Result<Witness, ConfigError> {
    let err = |m: String| ConfigError {
        location: "witness".into(),
        message: m,
    };
    let v: Value = serde_json::from_str(text).map_err(|e| err(format!("JSON: {e}")))?;
    let w = v
        .pointer("/result/witness")
        .or_else(|| v.get("witness"))
        .unwrap_or(&v)
        .clone();
    if w.is_null() {
        return Err(err("the report carries no witness".into()));
    }
    let raw: config::RawTransport = serde_json::from_value(w).map_err(|e| err(e.to_string()))?;
    let (c, t) = config::transport(&raw, dim, order, "witness")?;
    Ok(Witness { c, t })
}

pub fn read_witness(path: &Path, dim: usize, order: usize) -> Result<Witness, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError {
        location: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_witness(&text, dim, order)
}
