//! Pipeline driver behind the `galcov` binary: run configuration, the
//! presentation cache, machine-readable reports and the full certificate.

pub mod cache;
pub mod pipeline;
pub mod report;

use std::path::PathBuf;

use serde::Serialize;

pub use pipeline::run_pipeline;
pub use report::{emit_report, Check, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error(transparent)]
    Core(#[from] galcov_core::Error),
    #[error(transparent)]
    Analysis(#[from] galcov_analysis::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// 2 for configuration and budget problems, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Budget(_) => 2,
            CliError::Core(galcov_core::Error::InvalidN(_) | galcov_core::Error::Budget { .. }) => 2,
            CliError::Analysis(galcov_analysis::Error::Config(_)) => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub n: usize,
    #[serde(rename = "mod")]
    pub modulus: u32,
    pub depth: usize,
    pub window: usize,
    pub max_cosets: usize,
    pub format: Format,
    pub out_path: Option<PathBuf>,
    pub cache_dir: PathBuf,
}

impl RunConfig {
    pub fn new(n: usize, modulus: u32) -> Self {
        RunConfig {
            n,
            modulus,
            depth: 0,
            window: 2,
            max_cosets: 4_000_000,
            format: Format::Text,
            out_path: None,
            cache_dir: cache::default_dir(),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.n < 2 {
            return Err(CliError::Config(format!("--n must be at least 2, got {}", self.n)));
        }
        if self.modulus < 2 {
            return Err(CliError::Config(format!("--mod must be at least 2, got {}", self.modulus)));
        }
        if self.max_cosets < 1 {
            return Err(CliError::Config("--max-cosets must be positive".into()));
        }
        Ok(())
    }
}
