//! Command-line front end and file formats for `termlat-core`.

mod cli;
pub mod report;
pub mod sigfile;

pub use cli::{run, EXIT_ERROR, EXIT_FAIL, EXIT_OK, EXIT_VERIFY};
