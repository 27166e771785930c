//! Command-line pipeline around `shapesection`: contour extraction,
//! canonicalization with distance matrix and Dunn index, grid search over
//! parameter families, and classification.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;

pub use commands::{run, Command};
pub use config::{RunConfig, Subset};
pub use error::{CliError, CliResult};
