use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::ast::Loc;
use super::error::{ParseError, ParseErrorKind};
use crate::iri::{is_iri_char, is_local_char, is_local_start};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Keyword {
    Prefix,
    Classes,
    Properties,
    Class,
    Singleton,
    Subclass,
    Key,
    Min,
    Max,
    Domain,
    Range,
    Path,
    SubProperty,
    Partial,
    Total,
    Owa,
    Cwa,
    Iri,
    BNode,
    Resource,
    Literal,
}

impl Keyword {
    fn from_word(word: &str) -> Option<Keyword> {
        Some(match word {
            "PREFIX" => Keyword::Prefix,
            "CLASSES" => Keyword::Classes,
            "PROPERTIES" => Keyword::Properties,
            "CLASS" => Keyword::Class,
            "SINGLETON" => Keyword::Singleton,
            "SUBCLASS" => Keyword::Subclass,
            "KEY" => Keyword::Key,
            "MIN" => Keyword::Min,
            "MAX" => Keyword::Max,
            "DOMAIN" => Keyword::Domain,
            "RANGE" => Keyword::Range,
            "PATH" => Keyword::Path,
            "SUBPROPERTY" => Keyword::SubProperty,
            "PARTIAL" => Keyword::Partial,
            "TOTAL" => Keyword::Total,
            "OWA" => Keyword::Owa,
            "CWA" => Keyword::Cwa,
            "IRI" => Keyword::Iri,
            "BNODE" => Keyword::BNode,
            "RESOURCE" => Keyword::Resource,
            "LITERAL" => Keyword::Literal,
            _ => return None,
        })
    }

    pub(crate) fn as_str(self) -> &'static str {
        match self {
            Keyword::Prefix => "PREFIX",
            Keyword::Classes => "CLASSES",
            Keyword::Properties => "PROPERTIES",
            Keyword::Class => "CLASS",
            Keyword::Singleton => "SINGLETON",
            Keyword::Subclass => "SUBCLASS",
            Keyword::Key => "KEY",
            Keyword::Min => "MIN",
            Keyword::Max => "MAX",
            Keyword::Domain => "DOMAIN",
            Keyword::Range => "RANGE",
            Keyword::Path => "PATH",
            Keyword::SubProperty => "SUBPROPERTY",
            Keyword::Partial => "PARTIAL",
            Keyword::Total => "TOTAL",
            Keyword::Owa => "OWA",
            Keyword::Cwa => "CWA",
            Keyword::Iri => "IRI",
            Keyword::BNode => "BNODE",
            Keyword::Resource => "RESOURCE",
            Keyword::Literal => "LITERAL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Keyword(Keyword),
    IriRef(String),
    PName { prefix: String, local: String },
    Integer(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Semicolon,
    Colon,
    Slash,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Keyword(k) => f.write_str(k.as_str()),
            Tok::IriRef(iri) => write!(f, "<{iri}>"),
            Tok::PName { prefix, local } => write!(f, "{prefix}:{local}"),
            Tok::Integer(n) => f.write_str(n),
            Tok::LBrace => f.write_str("'{'"),
            Tok::RBrace => f.write_str("'}'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Comma => f.write_str("','"),
            Tok::Semicolon => f.write_str("';'"),
            Tok::Colon => f.write_str("':'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

pub(crate) fn tokenize(input: &str) -> Result<Vec<(Tok, Loc)>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut lexer = Lexer { chars, pos: 0, line: 1, column: 1 };
    let mut out = Vec::new();
    loop {
        lexer.skip_trivia();
        let loc = lexer.loc();
        let Some(c) = lexer.peek() else {
            out.push((Tok::Eof, loc));
            return Ok(out);
        };
        let tok = match c {
            '{' => lexer.single(Tok::LBrace),
            '}' => lexer.single(Tok::RBrace),
            '(' => lexer.single(Tok::LParen),
            ')' => lexer.single(Tok::RParen),
            ',' => lexer.single(Tok::Comma),
            ';' => lexer.single(Tok::Semicolon),
            '/' => lexer.single(Tok::Slash),
            ':' => {
                lexer.bump();
                match lexer.peek() {
                    Some(n) if is_local_start(n) => Tok::PName { prefix: String::new(), local: lexer.local() },
                    _ => Tok::Colon,
                }
            }
            '<' => lexer.iri_ref(loc)?,
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(d) = lexer.peek().filter(char::is_ascii_digit) {
                    digits.push(d);
                    lexer.bump();
                }
                Tok::Integer(digits)
            }
            c if c.is_alphabetic() => lexer.word(loc)?,
            other => return Err(ParseError::new(loc, ParseErrorKind::UnexpectedCharacter(other))),
        };
        out.push((tok, loc));
    }
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: u32,
    column: u32,
}

impl Lexer {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn loc(&self) -> Loc {
        Loc::new(self.line, self.column)
    }

    fn single(&mut self, tok: Tok) -> Tok {
        self.bump();
        tok
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while !matches!(self.peek(), None | Some('\n')) {
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn iri_ref(&mut self, loc: Loc) -> Result<Tok, ParseError> {
        self.bump();
        let mut value = String::new();
        loop {
            match self.peek() {
                Some('>') => {
                    self.bump();
                    return Ok(Tok::IriRef(value));
                }
                Some(c) if is_iri_char(c) => {
                    value.push(c);
                    self.bump();
                }
                Some(c) => return Err(ParseError::new(self.loc(), ParseErrorKind::UnexpectedCharacter(c))),
                None => return Err(ParseError::new(loc, ParseErrorKind::UnterminatedIri)),
            }
        }
    }

    /// A keyword, or the prefix of a prefixed name when a ':' follows.
    fn word(&mut self, loc: Loc) -> Result<Tok, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_alphanumeric() || matches!(c, '_' | '-' | '.')) {
            self.bump();
        }
        let mut word: String = self.chars[start..self.pos].iter().collect();
        if self.peek() == Some(':') && !word.ends_with('.') {
            self.bump();
            let local = match self.peek() {
                Some(c) if is_local_start(c) => self.local(),
                _ => String::new(),
            };
            return Ok(Tok::PName { prefix: word, local });
        }
        while word.ends_with('.') {
            word.pop();
            self.pos -= 1;
            self.column -= 1;
        }
        Keyword::from_word(&word)
            .map(Tok::Keyword)
            .ok_or(ParseError::new(loc, ParseErrorKind::UnknownWord(word)))
    }

    fn local(&mut self) -> String {
        let mut local = String::new();
        while let Some(c) = self.peek() {
            let inner_colon = c == ':' && matches!(self.peek_at(1), Some(n) if is_local_char(n));
            if is_local_char(c) || inner_colon {
                local.push(c);
                self.bump();
            } else {
                break;
            }
        }
        while local.ends_with('.') {
            local.pop();
            self.pos -= 1;
            self.column -= 1;
        }
        local
    }
}
