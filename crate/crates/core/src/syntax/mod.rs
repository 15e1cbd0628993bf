//! The RDD document language: lexer, recursive-descent parser, AST and
//! canonical printer.
//!
//! Besides the grammar's prefix form `SUBPROPERTY(B, C) A ;`, property
//! entries accept the infix form `A SUBPROPERTY B, C ;`, which desugars to
//! the same AST.

mod ast;
mod error;
mod lexer;
mod parser;
mod printer;

pub use ast::*;
pub use error::{ParseError, ParseErrorKind};
pub use parser::{parse_rdd, parse_rdd_traced, parse_rdd_with_prefixes, Production, MAX_CARDINALITY};
pub use printer::pretty_print;
