use alloc::string::String;
use core::fmt;

use super::ast::Loc;
use crate::iri::Iri;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedCharacter(char),
    UnknownWord(String),
    UnterminatedIri,
    Syntax { rule: &'static str, expected: &'static str, found: String },
    UnresolvedPrefix(String),
    RelativeIri(String),
    IntegerTooLarge(String),
    DuplicateClass(Iri),
    DuplicateConstraint { prop: Iri, keyword: &'static str },
    PartialAndTotal(Iri),
    MinExceedsMax { prop: Iri, min: u32, max: u32 },
    DuplicateKeyProperty(Iri),
    DuplicateSubclass(Iri),
}

/// First error encountered while reading an RDD document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub loc: Loc,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(loc: Loc, kind: ParseErrorKind) -> Self {
        ParseError { loc, kind }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.loc.line, self.loc.column)?;
        match &self.kind {
            ParseErrorKind::UnexpectedCharacter(c) => write!(f, "lexical error: unexpected character {c:?}"),
            ParseErrorKind::UnknownWord(w) => write!(f, "lexical error: unknown token `{w}`"),
            ParseErrorKind::UnterminatedIri => f.write_str("lexical error: unterminated IRI"),
            ParseErrorKind::Syntax { rule, expected, found } => {
                write!(f, "syntax error in {rule}: expected {expected}, found {found}")
            }
            ParseErrorKind::UnresolvedPrefix(p) => write!(f, "unresolved prefix `{p}:`"),
            ParseErrorKind::RelativeIri(iri) => write!(f, "relative IRI <{iri}>"),
            ParseErrorKind::IntegerTooLarge(n) => write!(f, "integer {n} exceeds the limit of 65536"),
            ParseErrorKind::DuplicateClass(c) => write!(f, "class {c} is defined more than once"),
            ParseErrorKind::DuplicateConstraint { prop, keyword } => {
                write!(f, "{keyword} given more than once for {prop}")
            }
            ParseErrorKind::PartialAndTotal(p) => write!(f, "PARTIAL and TOTAL both given for {p}"),
            ParseErrorKind::MinExceedsMax { prop, min, max } => {
                write!(f, "MIN({min}) exceeds MAX({max}) for {prop}")
            }
            ParseErrorKind::DuplicateKeyProperty(p) => write!(f, "key lists {p} more than once"),
            ParseErrorKind::DuplicateSubclass(c) => write!(f, "subclass {c} listed more than once"),
        }
    }
}

impl core::error::Error for ParseError {}
