//! Line-based N-Triples reader.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::dataset::Dataset;
use super::term::{Literal, Term, Triple};
use crate::iri::{is_absolute, is_iri_char, Iri};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NTriplesErrorKind {
    ExpectedTerm,
    UnterminatedIri,
    UnterminatedLiteral,
    InvalidEscape,
    RelativeIri(String),
    InvalidIriCharacter(char),
    InvalidBlankNodeLabel,
    InvalidLanguageTag,
    LiteralSubject,
    NonIriPredicate,
    MissingDot,
    TrailingContent,
}

/// A syntax error with a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NTriplesError {
    pub line: usize,
    pub column: usize,
    pub kind: NTriplesErrorKind,
}

impl fmt::Display for NTriplesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.column)?;
        match &self.kind {
            NTriplesErrorKind::ExpectedTerm => f.write_str("expected an IRI, blank node or literal"),
            NTriplesErrorKind::UnterminatedIri => f.write_str("unterminated IRI, missing '>'"),
            NTriplesErrorKind::UnterminatedLiteral => f.write_str("unterminated literal"),
            NTriplesErrorKind::InvalidEscape => f.write_str("invalid escape sequence"),
            NTriplesErrorKind::RelativeIri(iri) => write!(f, "relative IRI <{iri}>"),
            NTriplesErrorKind::InvalidIriCharacter(c) => write!(f, "character {c:?} not allowed in IRI"),
            NTriplesErrorKind::InvalidBlankNodeLabel => f.write_str("invalid blank node label"),
            NTriplesErrorKind::InvalidLanguageTag => f.write_str("invalid language tag"),
            NTriplesErrorKind::LiteralSubject => f.write_str("literal in subject position"),
            NTriplesErrorKind::NonIriPredicate => f.write_str("predicate must be an IRI"),
            NTriplesErrorKind::MissingDot => f.write_str("missing terminating '.'"),
            NTriplesErrorKind::TrailingContent => f.write_str("unexpected content after '.'"),
        }
    }
}

impl core::error::Error for NTriplesError {}

/// Parses an N-Triples document into a deduplicated [`Dataset`].
pub fn parse_ntriples(input: &str) -> Result<Dataset, NTriplesError> {
    parse_triples(input).map(Dataset::from_triples)
}

/// Parses an N-Triples document into its triples, in input order.
pub fn parse_triples(input: &str) -> Result<Vec<Triple>, NTriplesError> {
    let mut out = Vec::new();
    for (index, line) in input.split('\n').enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        if let Some(triple) = parse_line(line, index + 1)? {
            out.push(triple);
        }
    }
    Ok(out)
}

fn parse_line(line: &str, number: usize) -> Result<Option<Triple>, NTriplesError> {
    let mut cur = Cursor { chars: line.char_indices().collect(), pos: 0, line: number };
    cur.skip_ws();
    if cur.at_end_or_comment() {
        return Ok(None);
    }
    let s_col = cur.column();
    let s = cur.term()?;
    cur.skip_ws();
    let p_col = cur.column();
    let p = cur.term()?;
    cur.skip_ws();
    let o = cur.term()?;
    cur.skip_ws();
    if cur.peek() != Some('.') {
        return Err(cur.error(NTriplesErrorKind::MissingDot));
    }
    cur.pos += 1;
    cur.skip_ws();
    if !cur.at_end_or_comment() {
        return Err(cur.error(NTriplesErrorKind::TrailingContent));
    }
    if s.is_literal() {
        return Err(NTriplesError { line: number, column: s_col, kind: NTriplesErrorKind::LiteralSubject });
    }
    if !p.is_iri() {
        return Err(NTriplesError { line: number, column: p_col, kind: NTriplesErrorKind::NonIriPredicate });
    }
    Ok(Some(Triple { s, p, o }))
}

struct Cursor {
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn error(&self, kind: NTriplesErrorKind) -> NTriplesError {
        NTriplesError { line: self.line, column: self.column(), kind }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t')) {
            self.pos += 1;
        }
    }

    fn at_end_or_comment(&self) -> bool {
        matches!(self.peek(), None | Some('#'))
    }

    fn term(&mut self) -> Result<Term, NTriplesError> {
        match self.peek() {
            Some('<') => self.iri().map(Term::Iri),
            Some('_') => self.blank(),
            Some('"') => self.literal(),
            _ => Err(self.error(NTriplesErrorKind::ExpectedTerm)),
        }
    }

    fn iri(&mut self) -> Result<Iri, NTriplesError> {
        let start = self.column();
        self.pos += 1;
        let mut value = String::new();
        loop {
            match self.bump() {
                None => {
                    return Err(NTriplesError {
                        line: self.line,
                        column: start,
                        kind: NTriplesErrorKind::UnterminatedIri,
                    })
                }
                Some('>') => break,
                Some('\\') => {
                    let c = match self.bump() {
                        Some('u') => self.hex(4)?,
                        Some('U') => self.hex(8)?,
                        _ => return Err(self.error(NTriplesErrorKind::InvalidEscape)),
                    };
                    if !is_iri_char(c) {
                        return Err(self.error(NTriplesErrorKind::InvalidIriCharacter(c)));
                    }
                    value.push(c);
                }
                Some(c) if is_iri_char(c) => value.push(c),
                Some(c) => {
                    self.pos -= 1;
                    return Err(self.error(NTriplesErrorKind::InvalidIriCharacter(c)));
                }
            }
        }
        if !is_absolute(&value) {
            return Err(NTriplesError { line: self.line, column: start, kind: NTriplesErrorKind::RelativeIri(value) });
        }
        Ok(Iri::new_unchecked(value))
    }

    fn blank(&mut self) -> Result<Term, NTriplesError> {
        let start = self.column();
        let err = NTriplesError { line: self.line, column: start, kind: NTriplesErrorKind::InvalidBlankNodeLabel };
        self.pos += 1;
        if self.bump() != Some(':') {
            return Err(err);
        }
        let mut label = String::new();
        match self.peek() {
            Some(c) if c.is_alphanumeric() || c == '_' => {
                label.push(c);
                self.pos += 1;
            }
            _ => return Err(err),
        }
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || matches!(c, '_' | '-' | '.') {
                label.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        // a trailing '.' terminates the triple, not the label
        while label.ends_with('.') {
            label.pop();
            self.pos -= 1;
        }
        Ok(Term::BlankNode(label))
    }

    fn literal(&mut self) -> Result<Term, NTriplesError> {
        let start = self.column();
        self.pos += 1;
        let mut lexical = String::new();
        loop {
            match self.bump() {
                None => {
                    return Err(NTriplesError {
                        line: self.line,
                        column: start,
                        kind: NTriplesErrorKind::UnterminatedLiteral,
                    })
                }
                Some('"') => break,
                Some('\\') => {
                    let c = match self.bump() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') => self.hex(4)?,
                        Some('U') => self.hex(8)?,
                        _ => return Err(self.error(NTriplesErrorKind::InvalidEscape)),
                    };
                    lexical.push(c);
                }
                Some(c) => lexical.push(c),
            }
        }
        match self.peek() {
            Some('^') => {
                self.pos += 1;
                if self.bump() != Some('^') || self.peek() != Some('<') {
                    return Err(self.error(NTriplesErrorKind::ExpectedTerm));
                }
                let dt = self.iri()?;
                Ok(Term::Literal(Literal::typed(lexical, dt)))
            }
            Some('@') => {
                self.pos += 1;
                let tag_start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '-') {
                    self.pos += 1;
                }
                let tag: String = self.chars[tag_start..self.pos].iter().map(|(_, c)| *c).collect();
                if !valid_language_tag(&tag) {
                    return Err(NTriplesError {
                        line: self.line,
                        column: tag_start + 1,
                        kind: NTriplesErrorKind::InvalidLanguageTag,
                    });
                }
                Ok(Term::Literal(Literal::lang_tagged(lexical, tag)))
            }
            _ => Ok(Term::Literal(Literal::simple(lexical))),
        }
    }

    fn hex(&mut self, digits: usize) -> Result<char, NTriplesError> {
        let mut value = 0u32;
        for _ in 0..digits {
            let d = self
                .bump()
                .and_then(|c| c.to_digit(16))
                .ok_or_else(|| self.error(NTriplesErrorKind::InvalidEscape))?;
            value = value * 16 + d;
        }
        char::from_u32(value).ok_or_else(|| self.error(NTriplesErrorKind::InvalidEscape))
    }
}

fn valid_language_tag(tag: &str) -> bool {
    let mut parts = tag.split('-');
    let first = parts.next().unwrap_or("");
    !first.is_empty()
        && first.chars().all(|c| c.is_ascii_alphabetic())
        && parts.all(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_alphanumeric()))
}
