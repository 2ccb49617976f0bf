//! Command-line front end: element and matrix parsing, command dispatch,
//! deterministic seeding, and machine-readable output.

pub mod commands;
pub mod parse;

pub use commands::{run_command, RunOutput};
