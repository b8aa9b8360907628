//! Command-line surface for the symbolic automata toolkit: parse inputs,
//! run a chosen decision engine, and emit verdicts, counterexamples, and
//! explored-state metrics in human- and machine-readable form.

pub mod bench;
pub mod commands;
pub mod query;
pub mod record;

pub use bench::{run_bench, BenchOpts, BenchReport, EngineSummary};
pub use commands::{run_empty, run_equiv, run_ltlf_sat, run_regex, RunOpts, DEFAULT_TIMEOUT_MS,
    LTLF_TIMEOUT_MS};
pub use record::{Engine, RunRecord, StatsRecord};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    InFile {
        path: String,
        source: safa_core::Error,
    },
    #[error(transparent)]
    Core(#[from] safa_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("internal error: a counterexample failed re-verification")]
    BadCounterexample,
}
