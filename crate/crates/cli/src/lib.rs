//! Document formats and subcommands of the `toricmon` tool.

pub mod commands;
pub mod document;
pub mod emit;

pub use commands::{run, Command, Output};
pub use document::{parse, Document, InputError};
