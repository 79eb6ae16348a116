//! Problem-file parsing, command dispatch and text output for the `tfan` binary.

pub mod checks;
pub mod commands;
pub mod format;
pub mod parse;
