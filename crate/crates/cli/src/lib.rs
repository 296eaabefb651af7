//! Survey ingestion, experiment orchestration and serialization for the
//! `randisc` command-line tool.

pub mod error;
pub mod experiment;
pub mod formats;
pub mod output;
pub mod rates;
pub mod report;
pub mod svg;

pub use error::{CliError, Result};
pub use experiment::{parse_weighting, Experiment, ExperimentConfig};
pub use rates::{ingest_rates, split_groups, RateTable};
