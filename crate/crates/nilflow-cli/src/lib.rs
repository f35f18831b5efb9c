//! Support library of the `nilflow` binary: flag/config parsing and
//! trajectory export. Kept as a library so the integration tests can drive
//! the same CSV codec the binary uses.

pub mod config;
pub mod output;

/// Output format of reports and trajectories.
#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}
