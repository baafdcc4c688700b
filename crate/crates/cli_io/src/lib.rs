//! Command-line frontend: interactive or flag-driven runs, the line-oriented
//! data files (`d2`, `product_*`, `massey_*`, `filtration_one`), module
//! presentation files, checkpointed sessions and per-generator timing logs.
//!
//! Every data file is UTF-8, one record per line, in a fixed order; each line
//! grammar in [`grammar`] parses back to the value it was printed from.

mod error;
pub mod grammar;
pub mod module_file;
pub mod prompt;
pub mod run;
pub mod session;
pub mod timing;
mod token;

pub use error::CliError;
pub use token::{ClassToken, TokenError};
