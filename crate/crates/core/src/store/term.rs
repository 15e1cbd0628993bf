use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt::{self, Write};

use crate::iri::{vocab, Iri};

/// An RDF term.
///
/// Equality is syntactic: two literals are equal only if lexical form,
/// datatype and language tag are byte-identical. Ordering compares the
/// N-Triples serialization, which is also the order used for every
/// deterministic output of this crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Iri(Iri),
    BlankNode(String),
    Literal(Literal),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Annotation {
    None,
    Datatype(Iri),
    Language(String),
}

/// A literal: lexical form plus either a datatype IRI, a language tag, or
/// neither.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    lexical: String,
    annotation: Annotation,
}

impl Literal {
    pub fn simple(lexical: impl Into<String>) -> Self {
        Literal { lexical: lexical.into(), annotation: Annotation::None }
    }

    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Self {
        Literal { lexical: lexical.into(), annotation: Annotation::Datatype(datatype) }
    }

    pub fn lang_tagged(lexical: impl Into<String>, language: impl Into<String>) -> Self {
        Literal { lexical: lexical.into(), annotation: Annotation::Language(language.into()) }
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    /// The explicit datatype, if one was written.
    pub fn datatype(&self) -> Option<&Iri> {
        match &self.annotation {
            Annotation::Datatype(dt) => Some(dt),
            _ => None,
        }
    }

    pub fn language(&self) -> Option<&str> {
        match &self.annotation {
            Annotation::Language(lang) => Some(lang),
            _ => None,
        }
    }

    /// The datatype used for range-type checks: the explicit datatype,
    /// `rdf:langString` for language-tagged literals, none for simple ones.
    pub fn effective_datatype(&self) -> Option<&str> {
        match &self.annotation {
            Annotation::None => None,
            Annotation::Datatype(dt) => Some(dt.as_str()),
            Annotation::Language(_) => Some(vocab::RDF_LANG_STRING),
        }
    }
}

impl Term {
    pub fn iri(value: &str) -> Option<Term> {
        Iri::new(value).map(Term::Iri)
    }

    pub fn blank(label: impl Into<String>) -> Term {
        Term::BlankNode(label.into())
    }

    pub fn literal(lexical: impl Into<String>) -> Term {
        Term::Literal(Literal::simple(lexical))
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::BlankNode(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    pub fn is_resource(&self) -> bool {
        !self.is_literal()
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    /// N-Triples token syntax.
    pub fn to_ntriples(&self) -> String {
        self.to_string()
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "<{}>", iri.as_str()),
            Term::BlankNode(label) => write!(f, "_:{label}"),
            Term::Literal(lit) => {
                f.write_char('"')?;
                write_escaped(f, &lit.lexical)?;
                f.write_char('"')?;
                match &lit.annotation {
                    Annotation::None => Ok(()),
                    Annotation::Datatype(dt) => write!(f, "^^<{}>", dt.as_str()),
                    Annotation::Language(lang) => write!(f, "@{lang}"),
                }
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_string().cmp(&other.to_string())
    }
}

fn write_escaped(f: &mut impl Write, value: &str) -> fmt::Result {
    for c in value.chars() {
        match c {
            '"' => f.write_str("\\\"")?,
            '\\' => f.write_str("\\\\")?,
            '\n' => f.write_str("\\n")?,
            '\r' => f.write_str("\\r")?,
            '\t' => f.write_str("\\t")?,
            '\u{8}' => f.write_str("\\b")?,
            '\u{c}' => f.write_str("\\f")?,
            c if c.is_control() => write!(f, "\\u{:04X}", c as u32)?,
            c => f.write_char(c)?,
        }
    }
    Ok(())
}

/// An RDF triple. Subjects are IRIs or blank nodes, predicates are IRIs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub s: Term,
    pub p: Term,
    pub o: Term,
}

impl Triple {
    /// Builds a triple, rejecting literal subjects and non-IRI predicates.
    pub fn new(s: Term, p: Term, o: Term) -> Option<Triple> {
        (s.is_resource() && p.is_iri()).then_some(Triple { s, p, o })
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.s, self.p, self.o)
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn syntactic_identity() {
        let xsd_int = Iri::new_unchecked("http://www.w3.org/2001/XMLSchema#integer");
        let a = Term::Literal(Literal::typed("01", xsd_int.clone()));
        let b = Term::Literal(Literal::typed("1", xsd_int));
        assert_ne!(a, b);
        assert_ne!(Term::literal("x"), Term::Literal(Literal::lang_tagged("x", "en")));
    }

    #[test]
    fn serialization_escapes() {
        let t = Term::literal("a\"b\\c\nd");
        assert_eq!(t.to_string(), "\"a\\\"b\\\\c\\nd\"");
        let t = Term::Literal(Literal::lang_tagged("chat", "fr"));
        assert_eq!(t.to_string(), "\"chat\"@fr");
    }

    #[test]
    fn lang_string_datatype() {
        let lit = Literal::lang_tagged("x", "en");
        assert_eq!(lit.effective_datatype(), Some(vocab::RDF_LANG_STRING));
        assert_eq!(lit.datatype(), None);
        assert_eq!(Literal::simple("x").effective_datatype(), None);
    }

    #[test]
    fn positional_rules() {
        let a = Term::iri("http://ex.com/a").unwrap();
        assert!(Triple::new(Term::literal("x"), a.clone(), a.clone()).is_none());
        assert!(Triple::new(a.clone(), Term::blank("b"), a.clone()).is_none());
        assert!(Triple::new(Term::blank("b"), a.clone(), Term::literal("x")).is_some());
    }
}
