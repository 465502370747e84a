//! Command-line front end for `fluxbound`: argument and config parsing,
//! grid specifications, table output, and command execution.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod config;
pub mod error;
pub mod grid;
pub mod run;
pub mod table;

pub use args::{parse_args, resolve, Command, Job, RunSpec};
pub use config::parse_config;
pub use error::{CliError, RunError};
pub use grid::Grid;
pub use run::{execute, run};
pub use table::{emit_table, parse_csv_table, Format, Table, Value};

/// Parses a grid specification `lo:hi:n`.
pub fn parse_grid(s: &str) -> Result<Grid, grid::GridError> {
    s.parse()
}
