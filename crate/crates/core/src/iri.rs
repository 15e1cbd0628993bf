use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// An absolute IRI.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(String);

impl Iri {
    /// Wraps `value` if it is absolute (has a scheme) and contains no
    /// characters forbidden inside `<...>`.
    pub fn new(value: impl Into<String>) -> Option<Self> {
        let value = value.into();
        if is_absolute(&value) && value.chars().all(is_iri_char) {
            Some(Iri(value))
        } else {
            None
        }
    }

    /// Wraps `value` without validation. Used for vocabulary constants.
    pub fn new_unchecked(value: impl Into<String>) -> Self {
        Iri(value.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl AsRef<str> for Iri {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_absolute(value: &str) -> bool {
    let Some(colon) = value.find(':') else {
        return false;
    };
    let scheme = &value[..colon];
    let mut chars = scheme.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
}

pub(crate) fn is_iri_char(c: char) -> bool {
    !(c <= ' ' || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\'))
}

/// Well-known vocabulary IRIs.
pub mod vocab {
    pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
    pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
    pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
    pub const FOAF: &str = "http://xmlns.com/foaf/0.1/";
    pub const OWL: &str = "http://www.w3.org/2002/07/owl#";

    pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
    pub const RDF_LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

    /// Prefix bindings injected by `--well-known-prefixes`.
    pub const WELL_KNOWN_PREFIXES: [(&str, &str); 5] = [
        ("rdf", RDF),
        ("rdfs", RDFS),
        ("xsd", XSD),
        ("foaf", FOAF),
        ("owl", OWL),
    ];
}

/// An ordered prefix table. Redeclaring a prefix replaces its namespace but
/// keeps its original position.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Prefixes {
    entries: Vec<(String, Iri)>,
}

impl Prefixes {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn well_known() -> Self {
        let mut prefixes = Self::new();
        for (name, ns) in vocab::WELL_KNOWN_PREFIXES {
            prefixes.insert(name, Iri::new_unchecked(ns));
        }
        prefixes
    }

    pub fn insert(&mut self, name: &str, namespace: Iri) {
        match self.entries.iter_mut().find(|(n, _)| n == name) {
            Some(entry) => entry.1 = namespace,
            None => self.entries.push((name.to_owned(), namespace)),
        }
    }

    pub fn get(&self, name: &str) -> Option<&Iri> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, ns)| ns)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Iri)> {
        self.entries.iter().map(|(n, ns)| (n.as_str(), ns))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Finds the binding giving the shortest prefixed name for `iri`:
    /// longest namespace first, ties broken by declaration order.
    pub fn compaction<'a>(&'a self, iri: &'a str) -> Option<(&'a str, &'a str)> {
        let mut best: Option<(&str, &str)> = None;
        for (name, ns) in &self.entries {
            if let Some(local) = iri.strip_prefix(ns.as_str()) {
                if is_local_name(local) && best.is_none_or(|(_, l)| local.len() < l.len()) {
                    best = Some((name.as_str(), local));
                }
            }
        }
        best
    }

    /// Renders `iri` as `prefix:local` when possible, `<iri>` otherwise.
    pub fn compact(&self, iri: &str) -> String {
        match self.compaction(iri) {
            Some((name, local)) => alloc::format!("{name}:{local}"),
            None => alloc::format!("<{iri}>"),
        }
    }
}

pub(crate) fn is_local_start(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

pub(crate) fn is_local_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '.')
}

/// Local names accepted (and printed) by the RDD grammar: a letter, digit
/// or underscore, then letters, digits, `_`, `-`, `.` and `:` (inner `:`
/// must be followed by a name character), never ending in `.` or `:`.
pub(crate) fn is_local_name(local: &str) -> bool {
    let mut chars = local.chars().peekable();
    let Some(first) = chars.next() else {
        return true;
    };
    if !is_local_start(first) {
        return false;
    }
    while let Some(c) = chars.next() {
        match c {
            ':' => {
                if !matches!(chars.peek(), Some(&n) if is_local_char(n)) {
                    return false;
                }
            }
            c if is_local_char(c) => {}
            _ => return false,
        }
    }
    !local.ends_with('.')
}
