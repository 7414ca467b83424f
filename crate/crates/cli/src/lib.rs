//! Command-line front end for precision and recall of distributions.
//!
//! The `prd` binary is a thin wrapper over [`commands`]; everything here is
//! public so integration tests can drive the same code paths in-process.

pub mod commands;
pub mod error;
pub mod experiment;
pub mod featfile;
pub mod report;
pub mod svg;
pub mod synthetic;

pub use error::{CliError, CliResult};
