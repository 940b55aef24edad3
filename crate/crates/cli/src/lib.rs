//! Std companion to `textstab-core`: corpus file formats, audit
//! configuration, parallel sweep execution, and report writers backing the
//! `textstab` binary.

pub mod config;
pub mod io;
pub mod report;
pub mod runner;

/// Tool version embedded in every generated artifact.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
