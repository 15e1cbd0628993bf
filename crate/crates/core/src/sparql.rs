//! SPARQL 1.1 `ASK` queries that answer `true` exactly when a constraint is
//! violated in the queried default graph.
//!
//! A sentence `∀x̄ (φ → ψ)` becomes `ASK { φ FILTER NOT EXISTS { ψ } }`;
//! equality disjunctions become `!sameTerm` filters. Each query starts with
//! `PREFIX` lines for the prefixes it uses (sorted by name) followed by a
//! single-line `ASK`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::compile::{Constraint, ConstraintKind, ConstraintSet};
use crate::iri::{Iri, Prefixes};
use crate::syntax::RangeKind;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AskQuery {
    /// `c0001`, `c0002`, … by position in the constraint set.
    pub id: String,
    pub text: String,
    /// The ASK result that signals a violation; always `true`.
    pub violated_when: bool,
}

/// Identifier of the constraint at `index` (0-based) in a set.
pub fn constraint_id(index: usize) -> String {
    format!("c{:04}", index + 1)
}

/// One query per constraint, in set order.
pub fn bundle(set: &ConstraintSet) -> Vec<AskQuery> {
    set.iter().enumerate().map(|(i, c)| to_ask(c, i, &set.prefixes)).collect()
}

pub fn to_ask(c: &Constraint, index: usize, prefixes: &Prefixes) -> AskQuery {
    AskQuery { id: constraint_id(index), text: ask_text(c, prefixes), violated_when: true }
}

struct Writer<'a> {
    prefixes: &'a Prefixes,
    used: BTreeMap<String, String>,
}

impl Writer<'_> {
    fn iri(&mut self, iri: &Iri) -> String {
        match self.prefixes.compaction(iri.as_str()) {
            Some((name, local)) => {
                let ns = &iri.as_str()[..iri.as_str().len() - local.len()];
                self.used.insert(name.into(), ns.into());
                format!("{name}:{local}")
            }
            None => format!("<{}>", iri.as_str()),
        }
    }

    /// `?s a C ; p1 o1 ; p2 o2` with the type triple only when qualified.
    fn subject(&mut self, var: &str, qualifier: Option<&Iri>, pos: &[(String, String)]) -> String {
        let mut parts = Vec::new();
        if let Some(c) = qualifier {
            parts.push(format!("a {}", self.iri(c)));
        }
        parts.extend(pos.iter().map(|(p, o)| format!("{p} {o}")));
        format!("{var} {}", parts.join(" ; "))
    }

    fn prop_block(&mut self, qualifier: Option<&Iri>, prop: &Iri, objects: &str) -> String {
        let p = self.iri(prop);
        self.subject("?s", qualifier, &[(p, objects.into())])
    }
}

fn objects(n: u32) -> Vec<String> {
    (1..=n).map(|i| format!("?o{i}")).collect()
}

fn distinct(vars: &[String]) -> String {
    let mut parts = Vec::new();
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            parts.push(format!("!sameTerm({}, {})", vars[i], vars[j]));
        }
    }
    parts.join(" && ")
}

fn excluded(var: &str, allowed: &[String]) -> String {
    allowed.iter().map(|a| format!("!sameTerm({var}, {a})")).collect::<Vec<_>>().join(" && ")
}

/// The query text for `c`, without a trailing newline.
pub fn ask_text(c: &Constraint, prefixes: &Prefixes) -> String {
    let mut w = Writer { prefixes, used: BTreeMap::new() };
    let q = c.qualifier.as_ref();
    let body = match &c.kind {
        ConstraintKind::RangeTypeC { prop, range } => {
            let block = w.prop_block(q, prop, "?o");
            let cond = match (range.kind, &range.datatype) {
                (RangeKind::Iri, _) => String::from("!isIRI(?o)"),
                (RangeKind::BNode, _) => String::from("!isBlank(?o)"),
                (RangeKind::Resource, _) => String::from("isLiteral(?o)"),
                (RangeKind::Literal, None) => String::from("!isLiteral(?o)"),
                (RangeKind::Literal, Some(dt)) => {
                    format!("!isLiteral(?o) || !sameTerm(datatype(?o), {})", w.iri(dt))
                }
            };
            format!("{block} . FILTER({cond})")
        }
        ConstraintKind::MinC { prop, n } => {
            let os = objects(*n);
            let mut inner = w.prop_block(None, prop, &os.join(" , "));
            if os.len() > 1 {
                inner = format!("{inner} . FILTER({})", distinct(&os));
            }
            let outer = match q {
                Some(class) => format!("?s a {} .", w.iri(class)),
                None => String::from("{ ?s ?p0 ?o0 } UNION { ?s0 ?s ?o0 } UNION { ?s0 ?p0 ?s } FILTER(!isLiteral(?s))"),
            };
            format!("{outer} FILTER NOT EXISTS {{ {inner} }}")
        }
        ConstraintKind::MaxC { prop, n } => {
            let os = objects(n + 1);
            let block = w.prop_block(q, prop, &os.join(" , "));
            if os.len() > 1 {
                format!("{block} . FILTER({})", distinct(&os))
            } else {
                block
            }
        }
        ConstraintKind::DomainC { prop, class } => {
            let block = w.prop_block(q, prop, "?o");
            format!("{block} . FILTER NOT EXISTS {{ ?s a {} }}", w.iri(class))
        }
        ConstraintKind::RangeC { prop, class } => {
            let block = w.prop_block(q, prop, "?o");
            format!("{block} . FILTER NOT EXISTS {{ ?o a {} }}", w.iri(class))
        }
        ConstraintKind::PathC { prop, path } => {
            let block = w.prop_block(q, prop, "?o");
            let n = path.len();
            let hop = |i: usize| match i {
                0 => String::from("?s"),
                i if i == n => String::from("?o"),
                i => format!("?o{i}"),
            };
            let steps: Vec<String> =
                path.iter().enumerate().map(|(i, step)| format!("{} {} {}", hop(i), w.iri(step), hop(i + 1))).collect();
            format!("{block} . FILTER NOT EXISTS {{ {} }}", steps.join(" . "))
        }
        ConstraintKind::SubPropC { super_prop, sub_prop } => {
            let block = w.prop_block(q, sub_prop, "?o");
            format!("{block} . FILTER NOT EXISTS {{ ?s {} ?o }}", w.iri(super_prop))
        }
        ConstraintKind::PropClosure { props } => {
            let block = w.subject("?s", q, &[(String::from("?p"), String::from("?o"))]);
            let allowed: Vec<String> = props.iter().map(|p| w.iri(p)).collect();
            if allowed.is_empty() {
                block
            } else {
                format!("{block} . FILTER({})", excluded("?p", &allowed))
            }
        }
        ConstraintKind::ClassClosure { classes } => {
            let allowed: Vec<String> = classes.iter().map(|c| w.iri(c)).collect();
            if allowed.is_empty() {
                String::from("?s a ?c")
            } else {
                format!("?s a ?c . FILTER({})", excluded("?c", &allowed))
            }
        }
        ConstraintKind::SingletonExists { class } => format!("FILTER NOT EXISTS {{ ?s a {} }}", w.iri(class)),
        ConstraintKind::SingletonUnique { class } => {
            let c = w.iri(class);
            format!("?s1 a {c} . ?s2 a {c} . FILTER(!sameTerm(?s1, ?s2))")
        }
        ConstraintKind::KeyC { class, props } => {
            let vals = if props.len() == 1 { alloc::vec![String::from("?o")] } else { objects(props.len() as u32) };
            let pos: Vec<(String, String)> = props.iter().zip(&vals).map(|(p, o)| (w.iri(p), o.clone())).collect();
            let first = w.subject("?s1", Some(class), &pos);
            let second = w.subject("?s2", Some(class), &pos);
            format!("{first} . {second} . FILTER(!sameTerm(?s1, ?s2))")
        }
    };
    let mut out = String::new();
    for (name, ns) in &w.used {
        out.push_str(&format!("PREFIX {name}: <{ns}>\n"));
    }
    out.push_str(&format!("ASK {{ {body} }}"));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compile::Provenance;
    use crate::syntax::{Loc, RangeType};
    use alloc::vec;

    fn constraint(kind: ConstraintKind, qualifier: Option<&str>) -> Constraint {
        Constraint {
            kind,
            qualifier: qualifier.map(Iri::new_unchecked),
            provenance: vec![Provenance { loc: Loc::default(), derivation: String::new() }],
            fol_text: String::new(),
        }
    }

    #[test]
    fn unprefixed_iris_and_prefix_selection() {
        let mut prefixes = Prefixes::new();
        prefixes.insert("z", Iri::new_unchecked("http://z.org/"));
        prefixes.insert("a", Iri::new_unchecked("http://a.org/"));
        prefixes.insert("unused", Iri::new_unchecked("http://u.org/"));
        let c = constraint(
            ConstraintKind::DomainC { prop: Iri::new_unchecked("http://z.org/p"), class: Iri::new_unchecked("http://a.org/D") },
            Some("http://other.org/C"),
        );
        assert_eq!(
            ask_text(&c, &prefixes),
            "PREFIX a: <http://a.org/>\nPREFIX z: <http://z.org/>\nASK { ?s a <http://other.org/C> ; z:p ?o . FILTER NOT EXISTS { ?s a a:D } }"
        );
    }

    #[test]
    fn single_step_path_and_bundle_ids() {
        let c = constraint(
            ConstraintKind::PathC { prop: Iri::new_unchecked("http://e.org/p"), path: vec![Iri::new_unchecked("http://e.org/q")] },
            None,
        );
        let q = to_ask(&c, 41, &Prefixes::new());
        assert_eq!(q.id, "c0042");
        assert!(q.violated_when);
        assert_eq!(q.text, "ASK { ?s <http://e.org/p> ?o . FILTER NOT EXISTS { ?s <http://e.org/q> ?o } }");
    }

    #[test]
    fn qualified_max_zero() {
        let c = constraint(ConstraintKind::MaxC { prop: Iri::new_unchecked("http://e.org/p"), n: 0 }, Some("http://e.org/C"));
        assert_eq!(ask_text(&c, &Prefixes::new()), "ASK { ?s a <http://e.org/C> ; <http://e.org/p> ?o1 }");
        let rt = constraint(
            ConstraintKind::RangeTypeC { prop: Iri::new_unchecked("http://e.org/p"), range: RangeType::new(RangeKind::BNode) },
            Some("http://e.org/C"),
        );
        assert!(ask_text(&rt, &Prefixes::new()).ends_with("FILTER(!isBlank(?o)) }"));
    }
}
