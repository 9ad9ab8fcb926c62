//! Command-line tooling, threading and file formats on top of `nilprod-core`.

pub mod cli;
pub mod files;
pub mod memo;
pub mod parallel;
pub mod report;

/// Seed used by sampled suites unless `--seed` says otherwise.
pub const DEFAULT_SEED: u64 = 218184014;
