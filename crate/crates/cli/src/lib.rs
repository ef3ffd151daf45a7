//! Text format, DOT and JSON output, and the command implementations behind
//! the `opacity` binary.

pub mod commands;
pub mod dot;
pub mod format;
pub mod report;
