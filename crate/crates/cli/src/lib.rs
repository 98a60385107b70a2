//! Front end for `milnor-alg`: run configuration, input documents, the
//! subcommands and the verification suite behind the `milnor` binary.

pub mod commands;
pub mod config;
pub mod input;
pub mod verify;

pub use config::{CliError, Format, Outcome, RunConfig};
