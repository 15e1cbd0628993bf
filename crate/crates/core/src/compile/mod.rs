//! Translation of an RDD document into a set of first-order constraints.
//!
//! Each section, class definition and property entry is compiled by its own
//! function. A class with subclasses replicates its keys and property
//! constraints onto every subclass (recursively through the environment),
//! with the copies always treated as open-world and non-singleton.
//!
//! Identical constraints produced by different rules are merged; the merged
//! constraint keeps every provenance.

pub mod fol;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::env::Environment;
use crate::iri::{Iri, Prefixes};
use crate::syntax::{
    ClassConstraint, ClassConstraintSec, ConstraintAtom, Key, Loc, PropConstraint, PropConstraintSec, RangeType,
    RddDocument,
};
pub use fol::Sentence;

/// Constraint kinds in report order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstraintKind {
    RangeTypeC { prop: Iri, range: RangeType },
    MinC { prop: Iri, n: u32 },
    MaxC { prop: Iri, n: u32 },
    DomainC { prop: Iri, class: Iri },
    RangeC { prop: Iri, class: Iri },
    PathC { prop: Iri, path: Vec<Iri> },
    SubPropC { super_prop: Iri, sub_prop: Iri },
    /// Sorted, duplicate-free.
    PropClosure { props: Vec<Iri> },
    /// Sorted, duplicate-free.
    ClassClosure { classes: Vec<Iri> },
    SingletonExists { class: Iri },
    SingletonUnique { class: Iri },
    /// Key properties in declaration order.
    KeyC { class: Iri, props: Vec<Iri> },
}

impl ConstraintKind {
    pub fn name(&self) -> &'static str {
        match self {
            ConstraintKind::RangeTypeC { .. } => "RangeTypeC",
            ConstraintKind::MinC { .. } => "MinC",
            ConstraintKind::MaxC { .. } => "MaxC",
            ConstraintKind::DomainC { .. } => "DomainC",
            ConstraintKind::RangeC { .. } => "RangeC",
            ConstraintKind::PathC { .. } => "PathC",
            ConstraintKind::SubPropC { .. } => "SubPropC",
            ConstraintKind::PropClosure { .. } => "PropClosure",
            ConstraintKind::ClassClosure { .. } => "ClassClosure",
            ConstraintKind::SingletonExists { .. } => "SingletonExists",
            ConstraintKind::SingletonUnique { .. } => "SingletonUnique",
            ConstraintKind::KeyC { .. } => "KeyC",
        }
    }

    pub fn rank(&self) -> u8 {
        match self {
            ConstraintKind::RangeTypeC { .. } => 0,
            ConstraintKind::MinC { .. } => 1,
            ConstraintKind::MaxC { .. } => 2,
            ConstraintKind::DomainC { .. } => 3,
            ConstraintKind::RangeC { .. } => 4,
            ConstraintKind::PathC { .. } => 5,
            ConstraintKind::SubPropC { .. } => 6,
            ConstraintKind::PropClosure { .. } => 7,
            ConstraintKind::ClassClosure { .. } => 8,
            ConstraintKind::SingletonExists { .. } => 9,
            ConstraintKind::SingletonUnique { .. } => 10,
            ConstraintKind::KeyC { .. } => 11,
        }
    }
}

/// Where a constraint came from: the source location of the construct and
/// a short description of the rule chain that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub loc: Loc,
    pub derivation: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub kind: ConstraintKind,
    /// The class `C` when the constraint only applies to instances of `C`.
    pub qualifier: Option<Iri>,
    pub provenance: Vec<Provenance>,
    pub fol_text: String,
}

impl Constraint {
    pub fn sentence(&self) -> Sentence {
        Sentence::of(&self.kind, self.qualifier.as_ref())
    }

    fn sort_key(&self) -> (u8, &Option<Iri>, &ConstraintKind) {
        (self.kind.rank(), &self.qualifier, &self.kind)
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fol_text)
    }
}

/// Compiled constraints, sorted by kind, then qualifier (unqualified
/// first), then parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSet {
    pub prefixes: Prefixes,
    constraints: Vec<Constraint>,
}

impl ConstraintSet {
    pub fn as_slice(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Constraint> {
        self.constraints.iter()
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&Constraint> {
        self.constraints.get(index)
    }

    /// The constraint's FOL text, one per line, in set order.
    pub fn fol_lines(&self) -> Vec<&str> {
        self.constraints.iter().map(|c| c.fol_text.as_str()).collect()
    }

    /// Sorted, merged union.
    pub fn union(sets: impl IntoIterator<Item = ConstraintSet>, prefixes: &Prefixes) -> ConstraintSet {
        let mut acc = Accumulator::default();
        for set in sets {
            for c in set.constraints {
                for p in c.provenance {
                    acc.add(c.kind.clone(), c.qualifier.clone(), p);
                }
            }
        }
        acc.finish(prefixes)
    }
}

impl<'a> IntoIterator for &'a ConstraintSet {
    type Item = &'a Constraint;
    type IntoIter = core::slice::Iter<'a, Constraint>;

    fn into_iter(self) -> Self::IntoIter {
        self.constraints.iter()
    }
}

#[derive(Default)]
struct Accumulator {
    found: BTreeMap<(ConstraintKind, Option<Iri>), Vec<Provenance>>,
}

impl Accumulator {
    fn add(&mut self, kind: ConstraintKind, qualifier: Option<Iri>, provenance: Provenance) {
        let entry = self.found.entry((kind, qualifier)).or_default();
        let same = |p: &Provenance| {
            p.derivation == provenance.derivation && (p.loc.line, p.loc.column) == (provenance.loc.line, provenance.loc.column)
        };
        if !entry.iter().any(same) {
            entry.push(provenance);
        }
    }

    fn finish(self, prefixes: &Prefixes) -> ConstraintSet {
        let mut constraints: Vec<Constraint> = self
            .found
            .into_iter()
            .map(|((kind, qualifier), provenance)| {
                let fol_text = Sentence::of(&kind, qualifier.as_ref()).render(prefixes);
                Constraint { kind, qualifier, provenance, fol_text }
            })
            .collect();
        constraints.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        ConstraintSet { prefixes: prefixes.clone(), constraints }
    }
}

/// The scope a property constraint is compiled in: the qualifying class
/// (if any) and a human-readable description of how we got there.
#[derive(Clone)]
struct Scope<'a> {
    qualifier: Option<&'a Iri>,
    place: String,
}

struct Compiler<'a> {
    env: &'a Environment,
    prefixes: &'a Prefixes,
    acc: Accumulator,
}

impl<'a> Compiler<'a> {
    fn name(&self, iri: &Iri) -> String {
        self.prefixes.compact(iri.as_str())
    }

    fn emit(&mut self, scope: &Scope<'_>, kind: ConstraintKind, loc: Loc, what: String) {
        let derivation = format!("{what} in {}", scope.place);
        self.acc.add(kind, scope.qualifier.cloned(), Provenance { loc, derivation });
    }

    fn prop_section(&mut self, sec: &PropConstraintSec) {
        let scope = Scope { qualifier: None, place: "PROPERTIES".into() };
        if !sec.is_owa {
            let props = sorted_unique(sec.upcs.iter().map(|pc| &pc.prop));
            self.emit(&scope, ConstraintKind::PropClosure { props }, sec.loc, "CWA".into());
        }
        for pc in &sec.upcs {
            self.prop_constraint(&scope, pc);
        }
    }

    fn prop_constraint(&mut self, scope: &Scope<'_>, pc: &PropConstraint) {
        let prop = &pc.prop;
        let pname = self.name(prop);
        if let Some(range) = &pc.range_type {
            let kind = ConstraintKind::RangeTypeC { prop: prop.clone(), range: range.clone() };
            self.emit(scope, kind, pc.loc, format!("range type of {pname}"));
        }
        for atom in &pc.constraints {
            let what = |label: &str| format!("{label} {pname}");
            match &atom.value {
                ConstraintAtom::Min(0) => {}
                ConstraintAtom::Min(n) => {
                    let kind = ConstraintKind::MinC { prop: prop.clone(), n: *n };
                    self.emit(scope, kind, atom.loc, what(&format!("MIN({n})")));
                }
                ConstraintAtom::Max(n) => {
                    let kind = ConstraintKind::MaxC { prop: prop.clone(), n: *n };
                    self.emit(scope, kind, atom.loc, what(&format!("MAX({n})")));
                }
                ConstraintAtom::Domain(class) => {
                    let kind = ConstraintKind::DomainC { prop: prop.clone(), class: class.clone() };
                    self.emit(scope, kind, atom.loc, what("DOMAIN"));
                }
                ConstraintAtom::Range(class) => {
                    let kind = ConstraintKind::RangeC { prop: prop.clone(), class: class.clone() };
                    self.emit(scope, kind, atom.loc, what("RANGE"));
                }
                ConstraintAtom::Path(path) => {
                    let kind = ConstraintKind::PathC { prop: prop.clone(), path: path.clone() };
                    self.emit(scope, kind, atom.loc, what("PATH"));
                }
                ConstraintAtom::SubProperty(subs) => {
                    self.sub_property(scope, prop, subs, atom.loc, &what("SUBPROPERTY"));
                }
                ConstraintAtom::Partial => {
                    let kind = ConstraintKind::MaxC { prop: prop.clone(), n: 1 };
                    self.emit(scope, kind, atom.loc, what("PARTIAL"));
                }
                ConstraintAtom::Total => {
                    let min = ConstraintKind::MinC { prop: prop.clone(), n: 1 };
                    self.emit(scope, min, atom.loc, what("TOTAL"));
                    let max = ConstraintKind::MaxC { prop: prop.clone(), n: 1 };
                    self.emit(scope, max, atom.loc, what("TOTAL"));
                }
            }
        }
    }

    /// `super_prop` must contain every declared subproperty of each member
    /// of `subs`, transitively.
    fn sub_property(&mut self, scope: &Scope<'_>, super_prop: &Iri, subs: &[Iri], loc: Loc, what: &str) {
        for sub in subs {
            let kind = ConstraintKind::SubPropC { super_prop: super_prop.clone(), sub_prop: sub.clone() };
            self.emit(scope, kind, loc, String::from(what));
            let env = self.env;
            let nested = env.subproperties(sub);
            if !nested.is_empty() {
                let via = format!("{what}, transitively via {}", self.name(sub));
                self.sub_property(scope, super_prop, nested, loc, &via);
            }
        }
    }

    fn class_section(&mut self, sec: &ClassConstraintSec) {
        if !sec.is_owa {
            let classes = sorted_unique(sec.classes.iter().map(|cc| &cc.class));
            let scope = Scope { qualifier: None, place: "CLASSES".into() };
            self.emit(&scope, ConstraintKind::ClassClosure { classes }, sec.loc, "CWA".into());
        }
        for cc in &sec.classes {
            let structure = ClassStructure::from_ast(cc);
            let place = format!("class {}", self.name(&cc.class));
            self.class_constraint(&structure, place, cc.loc);
        }
    }

    fn class_constraint(&mut self, st: &ClassStructure<'_>, place: String, loc: Loc) {
        let class = &st.class;
        let scope = Scope { qualifier: Some(class), place: place.clone() };
        let unqualified = Scope { qualifier: None, place: place.clone() };
        if st.is_singleton {
            self.emit(&unqualified, ConstraintKind::SingletonExists { class: class.clone() }, loc, "SINGLETON".into());
            self.emit(&unqualified, ConstraintKind::SingletonUnique { class: class.clone() }, loc, "SINGLETON".into());
        }
        for sub in &st.sub_classes {
            let copy = ClassStructure {
                class: sub.clone(),
                sub_classes: self.env.subclasses(sub).to_vec(),
                is_singleton: false,
                keys: st.keys,
                qpcs: st.qpcs,
                is_owa: true,
            };
            let place = format!("{place}, inherited by SUBCLASS {}", self.name(sub));
            self.class_constraint(&copy, place, loc);
        }
        for key in st.keys {
            self.key(&scope, class, key);
        }
        for pc in st.qpcs {
            self.prop_constraint(&scope, pc);
        }
        if !st.is_owa {
            let props = sorted_unique(self.env.class_properties(class));
            self.emit(&scope, ConstraintKind::PropClosure { props }, loc, "CWA".into());
        }
    }

    fn key(&mut self, scope: &Scope<'_>, class: &Iri, key: &Key) {
        for k in &key.props {
            let pname = self.name(&k.prop);
            if let Some(range) = &k.range_type {
                let kind = ConstraintKind::RangeTypeC { prop: k.prop.clone(), range: range.clone() };
                self.emit(scope, kind, key.loc, format!("KEY range type of {pname}"));
            }
            self.emit(scope, ConstraintKind::MinC { prop: k.prop.clone(), n: 1 }, key.loc, format!("KEY {pname}"));
            self.emit(scope, ConstraintKind::MaxC { prop: k.prop.clone(), n: 1 }, key.loc, format!("KEY {pname}"));
        }
        let props = key.props.iter().map(|k| k.prop.clone()).collect();
        self.emit(scope, ConstraintKind::KeyC { class: class.clone(), props }, key.loc, "KEY".into());
    }
}

fn sorted_unique<'a>(iris: impl IntoIterator<Item = &'a Iri>) -> Vec<Iri> {
    let mut out: Vec<Iri> = iris.into_iter().cloned().collect();
    out.sort();
    out.dedup();
    out
}

/// The class-definition record the replication rule works on. Subclass
/// copies share the keys and property constraints of the original.
#[derive(Clone, Debug)]
pub struct ClassStructure<'a> {
    pub class: Iri,
    pub sub_classes: Vec<Iri>,
    pub is_singleton: bool,
    pub keys: &'a [Key],
    pub qpcs: &'a [PropConstraint],
    pub is_owa: bool,
}

impl<'a> ClassStructure<'a> {
    pub fn from_ast(cc: &'a ClassConstraint) -> Self {
        ClassStructure {
            class: cc.class.clone(),
            sub_classes: cc.sub_classes.clone(),
            is_singleton: cc.is_singleton,
            keys: &cc.keys,
            qpcs: &cc.qpcs,
            is_owa: cc.is_owa,
        }
    }
}

/// Compiles a whole document. `env` must come from
/// [`build_environment`](crate::env::build_environment) on the same document.
pub fn compile(doc: &RddDocument, env: &Environment) -> ConstraintSet {
    let mut c = Compiler { env, prefixes: &doc.prefixes, acc: Accumulator::default() };
    c.class_section(&doc.class_section);
    c.prop_section(&doc.prop_section);
    c.acc.finish(&doc.prefixes)
}

pub fn compile_prop_section(sec: &PropConstraintSec, env: &Environment, prefixes: &Prefixes) -> ConstraintSet {
    let mut c = Compiler { env, prefixes, acc: Accumulator::default() };
    c.prop_section(sec);
    c.acc.finish(prefixes)
}

pub fn compile_class_section(sec: &ClassConstraintSec, env: &Environment, prefixes: &Prefixes) -> ConstraintSet {
    let mut c = Compiler { env, prefixes, acc: Accumulator::default() };
    c.class_section(sec);
    c.acc.finish(prefixes)
}

/// Compiles one class definition (and its subclass copies) without the
/// section-level closure.
pub fn compile_class_constraint(st: &ClassStructure<'_>, env: &Environment, prefixes: &Prefixes) -> ConstraintSet {
    let mut c = Compiler { env, prefixes, acc: Accumulator::default() };
    let place = format!("class {}", prefixes.compact(st.class.as_str()));
    c.class_constraint(st, place, Loc::default());
    c.acc.finish(prefixes)
}
