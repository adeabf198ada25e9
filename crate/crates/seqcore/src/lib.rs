//! Files, parsing and the command-line driver around `seqcore-core`.

pub mod core_syntax;
pub mod driver;
pub mod lexer;
pub mod parse;

pub use driver::{execute, run_source, Command, Outcome, RunConfig};
