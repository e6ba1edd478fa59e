//! A small script language for exact wavelet checks over GF(q)((t)): parsing,
//! canonical printing, and a runner that reports JSON lines.

pub mod ast;
mod eval;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod runner;

pub use parser::{parse, ParseError};
pub use printer::print;
pub use runner::{run, Options, Report, RunMode};
