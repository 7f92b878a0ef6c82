//! Command-line front end: JSON inputs, built-in fixtures, a character-table
//! cache and certificate rendering on top of `bohrcheck-core`.

pub mod amalgam_input;
pub mod args;
pub mod cache;
pub mod commands;
pub mod descriptor;
pub mod fixtures;
pub mod lie_input;
pub mod soundness;

pub use args::{Cli, Format};
pub use commands::{run, Output};

/// Exit code for malformed input or a failed computation.
pub const EXIT_INPUT_ERROR: u8 = 1;
