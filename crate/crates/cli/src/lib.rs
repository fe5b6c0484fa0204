//! Presentation-file parsing, printing and report assembly for the
//! `arcspace` command-line tool.
//!
//! The file grammar:
//!
//! ```text
//! file  := decl*
//! decl  := "gen" NAME "deg" INT ["iw" INT] ["d" "=" expr] ";"
//! expr  := ["+"|"-"] term (("+"|"-") term)*
//! term  := coeff ("*" factor)* | factor ("*" factor)*
//! coeff := INT ["/" INT]
//! factor:= NAME ["^" INT]
//! ```
//!
//! `#` starts a line comment; whitespace is insignificant. A file parses
//! successfully only if the resulting presentation passes the
//! differential-graded checks, so every presentation obtained from
//! [`parse::parse_presentation`] is valid.

pub mod parse;
pub mod print;
pub mod report;

use std::fmt;

/// Errors surfaced by the command-line tool, split by exit code: input
/// problems exit 2, engine refusals exit 1.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Engine(arcspace::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "{msg}"),
            CliError::Engine(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<arcspace::Error> for CliError {
    fn from(e: arcspace::Error) -> Self {
        CliError::Engine(e)
    }
}

impl From<parse::ParseError> for CliError {
    fn from(e: parse::ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}
