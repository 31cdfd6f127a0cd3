//! Library side of the `omniscience` command: each subcommand is a plain
//! function so the integration tests can drive it without spawning a process.

pub mod bench;
pub mod error;
pub mod gen;
pub mod parse;
pub mod solve;

pub use error::{CliError, ExitCode, Result};
