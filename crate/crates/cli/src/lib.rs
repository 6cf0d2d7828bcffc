//! Command-line front end for the `waring-core` library: expression parsing,
//! the `waring` subcommands, and batch processing.

pub mod app;
pub mod output;
pub mod parse;

pub use app::{run, run_batch, Cli, Outcome};
pub use parse::{parse_form, ParseError};
