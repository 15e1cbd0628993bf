use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use crate::iri::{Iri, Prefixes};

/// A 1-based source position.
///
/// Locations never take part in AST comparison: `Loc == Loc` is always
/// true, so two documents differing only in layout compare equal.
#[derive(Clone, Copy, Debug, Default)]
pub struct Loc {
    pub line: u32,
    pub column: u32,
}

impl Loc {
    pub fn new(line: u32, column: u32) -> Self {
        Loc { line, column }
    }
}

impl PartialEq for Loc {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Loc {}

impl fmt::Display for Loc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// A value with the location it was parsed from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned<T> {
    pub value: T,
    pub loc: Loc,
}

impl<T> Spanned<T> {
    pub fn new(value: T, loc: Loc) -> Self {
        Spanned { value, loc }
    }
}

impl<T> Deref for Spanned<T> {
    type Target = T;

    fn deref(&self) -> &T {
        &self.value
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RddDocument {
    pub prefixes: Prefixes,
    pub class_section: ClassConstraintSec,
    pub prop_section: PropConstraintSec,
}

impl RddDocument {
    /// `OWA CLASSES { } OWA PROPERTIES { }`
    pub fn empty() -> Self {
        RddDocument {
            prefixes: Prefixes::new(),
            class_section: ClassConstraintSec { is_owa: true, classes: Vec::new(), loc: Loc::default() },
            prop_section: PropConstraintSec { is_owa: true, upcs: Vec::new(), loc: Loc::default() },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassConstraintSec {
    pub is_owa: bool,
    pub classes: Vec<ClassConstraint>,
    pub loc: Loc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropConstraintSec {
    pub is_owa: bool,
    pub upcs: Vec<PropConstraint>,
    pub loc: Loc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassConstraint {
    pub class: Iri,
    pub sub_classes: Vec<Iri>,
    pub is_singleton: bool,
    pub keys: Vec<Key>,
    pub qpcs: Vec<PropConstraint>,
    pub is_owa: bool,
    pub loc: Loc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Key {
    pub props: Vec<PropWithRange>,
    pub loc: Loc,
}

/// A property IRI with an optional range type (`ex:p : LITERAL`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropWithRange {
    pub prop: Iri,
    pub range_type: Option<RangeType>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropConstraint {
    pub constraints: Vec<Spanned<ConstraintAtom>>,
    pub prop: Iri,
    pub range_type: Option<RangeType>,
    pub loc: Loc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstraintAtom {
    Min(u32),
    Max(u32),
    Domain(Iri),
    Range(Iri),
    Path(Vec<Iri>),
    SubProperty(Vec<Iri>),
    Partial,
    Total,
}

impl ConstraintAtom {
    pub fn keyword(&self) -> &'static str {
        match self {
            ConstraintAtom::Min(_) => "MIN",
            ConstraintAtom::Max(_) => "MAX",
            ConstraintAtom::Domain(_) => "DOMAIN",
            ConstraintAtom::Range(_) => "RANGE",
            ConstraintAtom::Path(_) => "PATH",
            ConstraintAtom::SubProperty(_) => "SUBPROPERTY",
            ConstraintAtom::Partial => "PARTIAL",
            ConstraintAtom::Total => "TOTAL",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RangeKind {
    Iri,
    BNode,
    Resource,
    Literal,
}

impl RangeKind {
    pub fn keyword(self) -> &'static str {
        match self {
            RangeKind::Iri => "IRI",
            RangeKind::BNode => "BNODE",
            RangeKind::Resource => "RESOURCE",
            RangeKind::Literal => "LITERAL",
        }
    }
}

/// `IRI`, `BNODE`, `RESOURCE`, `LITERAL` or `LITERAL(datatype)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RangeType {
    pub kind: RangeKind,
    pub datatype: Option<Iri>,
}

impl RangeType {
    pub fn new(kind: RangeKind) -> Self {
        RangeType { kind, datatype: None }
    }

    pub fn literal_of(datatype: Iri) -> Self {
        RangeType { kind: RangeKind::Literal, datatype: Some(datatype) }
    }
}
