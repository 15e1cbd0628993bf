//! First-order sentences over the triple relation `T` and the unary
//! relations `IRI`, `BNode`, `Resource` and `Literal`.
//!
//! Every compiled constraint has the shape `∀x̄ (body → conclusion)` (or a
//! bare existential for singleton existence). The same [`Sentence`] value is
//! rendered to text, interpreted by the reference evaluator, and used to
//! re-check witnesses.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::ConstraintKind;
use crate::iri::{vocab, Iri, Prefixes};
use crate::store::UnaryRelation;
use crate::syntax::{RangeKind, RangeType};

/// A variable of a sentence. `Obj(i)` renders as `o{i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    S,
    S1,
    S2,
    P,
    O,
    C,
    Obj(u32),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::S => f.write_str("s"),
            Var::S1 => f.write_str("s1"),
            Var::S2 => f.write_str("s2"),
            Var::P => f.write_str("p"),
            Var::O => f.write_str("o"),
            Var::C => f.write_str("c"),
            Var::Obj(i) => write!(f, "o{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Var(Var),
    Const(Iri),
}

impl From<Var> for Arg {
    fn from(v: Var) -> Self {
        Arg::Var(v)
    }
}

impl From<&Iri> for Arg {
    fn from(iri: &Iri) -> Self {
        Arg::Const(iri.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    /// `T(s, p, o)`
    Triple(Arg, Arg, Arg),
    Unary(UnaryRelation, Var),
    Eq(Arg, Arg),
    Neq(Var, Var),
    /// `datatype(x) = dt`; false for non-literals and simple literals,
    /// `rdf:langString` for language-tagged literals.
    Datatype(Var, Iri),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Atom(Atom),
    And(Vec<Formula>),
    /// The empty disjunction is false.
    Or(Vec<Formula>),
    Exists(Vec<Var>, Box<Formula>),
}

/// `∀ universals (body₁ ∧ … ∧ bodyₙ → conclusion)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sentence {
    pub universals: Vec<Var>,
    pub body: Vec<Atom>,
    pub conclusion: Formula,
    /// Universals that can be permuted without changing the sentence.
    /// Violations are reported only for bindings where these are strictly
    /// increasing in term order.
    pub interchangeable: Vec<Var>,
}

fn t(s: impl Into<Arg>, p: impl Into<Arg>, o: impl Into<Arg>) -> Atom {
    Atom::Triple(s.into(), p.into(), o.into())
}

fn rdf_type() -> Iri {
    Iri::new_unchecked(vocab::RDF_TYPE)
}

fn objects(n: u32) -> Vec<Var> {
    (1..=n).map(Var::Obj).collect()
}

fn all_dist(vars: &[Var]) -> Vec<Formula> {
    let mut out = Vec::new();
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            out.push(Formula::Atom(Atom::Neq(vars[i], vars[j])));
        }
    }
    out
}

fn some_eq(vars: &[Var]) -> Formula {
    let mut out = Vec::new();
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            out.push(Formula::Atom(Atom::Eq(vars[i].into(), vars[j].into())));
        }
    }
    Formula::Or(out)
}

fn range_type_conclusion(rt: &RangeType) -> Formula {
    let rel = match rt.kind {
        RangeKind::Iri => UnaryRelation::Iri,
        RangeKind::BNode => UnaryRelation::BNode,
        RangeKind::Resource => UnaryRelation::Resource,
        RangeKind::Literal => UnaryRelation::Literal,
    };
    let is_kind = Formula::Atom(Atom::Unary(rel, Var::O));
    match &rt.datatype {
        Some(dt) => Formula::And(vec![is_kind, Formula::Atom(Atom::Datatype(Var::O, dt.clone()))]),
        None => is_kind,
    }
}

impl Sentence {
    /// The sentence a constraint of `kind`, optionally qualified by a
    /// class, stands for.
    pub fn of(kind: &ConstraintKind, qualifier: Option<&Iri>) -> Sentence {
        let qual = |subject: Var| qualifier.map(|c| t(subject, &rdf_type(), c));
        let mut body: Vec<Atom> = Vec::new();
        let plain = |universals: Vec<Var>, body: Vec<Atom>, conclusion: Formula| Sentence {
            universals,
            body,
            conclusion,
            interchangeable: Vec::new(),
        };
        match kind {
            ConstraintKind::RangeTypeC { prop, range } => {
                body.extend(qual(Var::S));
                body.push(t(Var::S, prop, Var::O));
                plain(vec![Var::S, Var::O], body, range_type_conclusion(range))
            }
            ConstraintKind::MinC { prop, n } => {
                match qual(Var::S) {
                    Some(q) => body.push(q),
                    None => body.push(Atom::Unary(UnaryRelation::Resource, Var::S)),
                }
                let os = objects(*n);
                let mut inner: Vec<Formula> = os.iter().map(|o| Formula::Atom(t(Var::S, prop, *o))).collect();
                inner.extend(all_dist(&os));
                plain(vec![Var::S], body, Formula::Exists(os, Box::new(Formula::And(inner))))
            }
            ConstraintKind::MaxC { prop, n } => {
                body.extend(qual(Var::S));
                let os = objects(n + 1);
                body.extend(os.iter().map(|o| t(Var::S, prop, *o)));
                let mut universals = vec![Var::S];
                universals.extend(os.iter().copied());
                Sentence { universals, body, conclusion: some_eq(&os), interchangeable: os }
            }
            ConstraintKind::DomainC { prop, class } => {
                body.extend(qual(Var::S));
                body.push(t(Var::S, prop, Var::O));
                plain(vec![Var::S, Var::O], body, Formula::Atom(t(Var::S, &rdf_type(), class)))
            }
            ConstraintKind::RangeC { prop, class } => {
                body.extend(qual(Var::S));
                body.push(t(Var::S, prop, Var::O));
                plain(vec![Var::S, Var::O], body, Formula::Atom(t(Var::O, &rdf_type(), class)))
            }
            ConstraintKind::PathC { prop, path } => {
                body.extend(qual(Var::S));
                body.push(t(Var::S, prop, Var::O));
                let n = path.len() as u32;
                let hop = |i: u32| if i == 0 { Var::S } else if i == n { Var::O } else { Var::Obj(i) };
                let atoms: Vec<Formula> =
                    path.iter().enumerate().map(|(i, q)| Formula::Atom(t(hop(i as u32), q, hop(i as u32 + 1)))).collect();
                let conclusion = if n == 1 {
                    atoms.into_iter().next().expect("non-empty path")
                } else {
                    Formula::Exists(objects(n - 1), Box::new(Formula::And(atoms)))
                };
                plain(vec![Var::S, Var::O], body, conclusion)
            }
            ConstraintKind::SubPropC { super_prop, sub_prop } => {
                body.extend(qual(Var::S));
                body.push(t(Var::S, sub_prop, Var::O));
                plain(vec![Var::S, Var::O], body, Formula::Atom(t(Var::S, super_prop, Var::O)))
            }
            ConstraintKind::PropClosure { props } => {
                body.extend(qual(Var::S));
                body.push(t(Var::S, Var::P, Var::O));
                let options = props.iter().map(|p| Formula::Atom(Atom::Eq(Var::P.into(), p.into()))).collect();
                plain(vec![Var::S, Var::P, Var::O], body, Formula::Or(options))
            }
            ConstraintKind::ClassClosure { classes } => {
                body.push(t(Var::S, &rdf_type(), Var::C));
                let options = classes.iter().map(|c| Formula::Atom(Atom::Eq(Var::C.into(), c.into()))).collect();
                plain(vec![Var::S, Var::C], body, Formula::Or(options))
            }
            ConstraintKind::SingletonExists { class } => plain(
                Vec::new(),
                Vec::new(),
                Formula::Exists(vec![Var::S], Box::new(Formula::Atom(t(Var::S, &rdf_type(), class)))),
            ),
            ConstraintKind::SingletonUnique { class } => Sentence {
                universals: vec![Var::S1, Var::S2],
                body: vec![t(Var::S1, &rdf_type(), class), t(Var::S2, &rdf_type(), class)],
                conclusion: Formula::Atom(Atom::Eq(Var::S1.into(), Var::S2.into())),
                interchangeable: vec![Var::S1, Var::S2],
            },
            ConstraintKind::KeyC { class, props } => {
                let vals: Vec<Var> = if props.len() == 1 { vec![Var::O] } else { objects(props.len() as u32) };
                for subject in [Var::S1, Var::S2] {
                    body.push(t(subject, &rdf_type(), class));
                    body.extend(props.iter().zip(&vals).map(|(p, o)| t(subject, p, *o)));
                }
                let mut universals = vec![Var::S1, Var::S2];
                universals.extend(vals.iter().copied());
                Sentence {
                    universals,
                    body,
                    conclusion: Formula::Atom(Atom::Eq(Var::S1.into(), Var::S2.into())),
                    interchangeable: vec![Var::S1, Var::S2],
                }
            }
        }
    }

    /// Canonical text, with IRIs compacted through `prefixes`. `rdf:type`
    /// is always written `rdf:type`.
    pub fn render(&self, prefixes: &Prefixes) -> String {
        let r = Renderer { prefixes };
        if self.universals.is_empty() && self.body.is_empty() {
            return r.formula(&self.conclusion);
        }
        let vars: Vec<String> = self.universals.iter().map(|v| format!("{v}")).collect();
        let body: Vec<String> = self.body.iter().map(|a| r.atom(a)).collect();
        format!("∀{} ({} → {})", vars.join(","), body.join(" ∧ "), r.formula(&self.conclusion))
    }
}

struct Renderer<'a> {
    prefixes: &'a Prefixes,
}

impl Renderer<'_> {
    fn iri(&self, iri: &Iri) -> String {
        if iri.as_str() == vocab::RDF_TYPE {
            "rdf:type".into()
        } else {
            self.prefixes.compact(iri.as_str())
        }
    }

    fn arg(&self, arg: &Arg) -> String {
        match arg {
            Arg::Var(v) => format!("{v}"),
            Arg::Const(iri) => self.iri(iri),
        }
    }

    fn atom(&self, atom: &Atom) -> String {
        match atom {
            Atom::Triple(s, p, o) => format!("T({},{},{})", self.arg(s), self.arg(p), self.arg(o)),
            Atom::Unary(rel, v) => {
                let name = match rel {
                    UnaryRelation::Iri => "IRI",
                    UnaryRelation::BNode => "BNode",
                    UnaryRelation::Resource => "Resource",
                    UnaryRelation::Literal => "Literal",
                };
                format!("{name}({v})")
            }
            Atom::Eq(a, b) => format!("{}={}", self.arg(a), self.arg(b)),
            Atom::Neq(a, b) => format!("{a}≠{b}"),
            Atom::Datatype(v, dt) => format!("datatype({v})={}", self.iri(dt)),
        }
    }

    fn formula(&self, f: &Formula) -> String {
        match f {
            Formula::Atom(a) => self.atom(a),
            Formula::And(parts) => parts.iter().map(|p| self.formula(p)).collect::<Vec<_>>().join(" ∧ "),
            Formula::Or(parts) if parts.is_empty() => "⊥".into(),
            Formula::Or(parts) => parts.iter().map(|p| self.formula(p)).collect::<Vec<_>>().join(" ∨ "),
            Formula::Exists(vars, inner) => {
                let vars: Vec<String> = vars.iter().map(|v| format!("{v}")).collect();
                format!("∃{} ({})", vars.join(","), self.formula(inner))
            }
        }
    }
}
