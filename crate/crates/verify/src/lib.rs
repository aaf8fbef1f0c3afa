//! Sampling harness for the elliptic-fusion identities: configuration,
//! singularity-guarded point sampling, the identity catalogue, a
//! parallel/sequential runner and text/JSON reports.

pub mod catalogue;
pub mod config;
pub mod report;
pub mod runner;
pub mod sampling;

pub use catalogue::{catalogue, Identity, ParamValue, Params};
pub use config::{parse_config_text, Suite, SuiteConfig};
pub use report::{emit_report, to_json, to_text, Format};
pub use runner::{run_suite, run_suite_with, Executor, IdentityReport, Status, SuiteRun};
pub use sampling::{sample_points, Guards};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("sampling error: point {index} not found after {redraws} redraws")]
    Sampling { index: usize, redraws: usize },
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
