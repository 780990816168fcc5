//! Command-line front end: JSON documents, subcommands and the
//! decision-versus-oracle cross-check.

pub mod commands;
pub mod doc;
pub mod error;
pub mod verify;

pub use commands::{run, Cli, Command, DEFAULT_SEED};
pub use error::CliError;
