//! Command-line front end: the input language and report rendering.

pub mod commands;
pub mod parser;

pub use commands::{error_code, run_command, session_presentation, Command, Options, Report, Target};
pub use parser::{parse_input, parse_polynomial, ParseError, Session};
