//! Text formats, seeded sampling and verification suites on top of
//! `superbracket-core`, plus the `superbracket` command-line tool.

pub mod expr_io;
pub mod sample;
pub mod structure;
pub mod suites;

pub use expr_io::{parse_expression, print_expression, ParseError};
pub use structure::{FileError, StructureFile};
