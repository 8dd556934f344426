//! Library side of the `psiset` command: problem files, paving and statistics
//! formats, SVG rendering and the subcommand implementations.

pub mod commands;
pub mod error;
pub mod format;
pub mod paving_io;
pub mod problem;
pub mod svg;

pub use error::CliError;
