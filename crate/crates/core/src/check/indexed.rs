//! Index-backed evaluation, one routine per constraint kind. Body triple
//! atoms are bound through the dataset's SPO/POS/OSP indexes.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::reference::Interp;
use crate::compile::{Constraint, ConstraintKind};
use crate::iri::{vocab, Iri};
use crate::store::{Dataset, Term, TermId, UnaryRelation};
use crate::syntax::{RangeKind, RangeType};

fn id(d: &Dataset, iri: &Iri) -> Option<TermId> {
    d.id_of(&Term::Iri(iri.clone()))
}

fn instances(d: &Dataset, class: &Iri) -> Vec<TermId> {
    match (id(d, &Iri::new_unchecked(vocab::RDF_TYPE)), id(d, class)) {
        (Some(t), Some(c)) => d.subjects(t, c).collect(),
        _ => Vec::new(),
    }
}

fn is_instance(d: &Dataset, s: TermId, class: Option<TermId>, rdf_type: Option<TermId>) -> bool {
    match (rdf_type, class) {
        (Some(t), Some(c)) => d.contains_ids([s, t, c]),
        _ => false,
    }
}

/// `(s, o)` pairs of `T(s, p, o)`, restricted to instances of the
/// qualifier when there is one.
fn pairs(d: &Dataset, prop: &Iri, qualifier: Option<&Iri>) -> Vec<(TermId, TermId)> {
    let Some(p) = id(d, prop) else { return Vec::new() };
    let rdf_type = id(d, &Iri::new_unchecked(vocab::RDF_TYPE));
    let class = qualifier.map(|q| id(d, q));
    d.match_ids(None, Some(p), None)
        .into_iter()
        .filter(|[s, _, _]| match class {
            None => true,
            Some(c) => is_instance(d, *s, c, rdf_type),
        })
        .map(|[s, _, o]| (s, o))
        .collect()
}

fn range_ok(x: &Interp<'_>, range: &RangeType, o: TermId) -> bool {
    let term = x.d.term(o);
    match range.kind {
        RangeKind::Iri => term.is_iri(),
        RangeKind::BNode => term.is_blank(),
        RangeKind::Resource => term.is_resource(),
        RangeKind::Literal => match (&range.datatype, term) {
            (None, t) => t.is_literal(),
            (Some(dt), Term::Literal(lit)) => lit.effective_datatype() == Some(dt.as_str()),
            (Some(_), _) => false,
        },
    }
}

/// Strictly increasing `k`-subsets of `items` (which is sorted).
fn combinations(items: &[TermId], k: usize) -> Vec<Vec<TermId>> {
    fn go(items: &[TermId], k: usize, start: usize, cur: &mut Vec<TermId>, out: &mut Vec<Vec<TermId>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Whether `o` is reachable from `s` along `path`.
fn path_reaches(d: &Dataset, s: TermId, path: &[Iri], o: TermId) -> bool {
    let mut frontier: BTreeSet<TermId> = BTreeSet::from([s]);
    for q in path {
        let Some(q) = id(d, q) else { return false };
        frontier = frontier.iter().flat_map(|&x| d.objects(x, q)).collect();
        if frontier.is_empty() {
            return false;
        }
    }
    frontier.contains(&o)
}

pub(crate) fn violations(x: &Interp<'_>, c: &Constraint) -> Vec<Vec<TermId>> {
    let d = x.d;
    let q = c.qualifier.as_ref();
    let mut out: Vec<Vec<TermId>> = Vec::new();
    match &c.kind {
        ConstraintKind::RangeTypeC { prop, range } => {
            for (s, o) in pairs(d, prop, q) {
                if !range_ok(x, range, o) {
                    out.push(vec![s, o]);
                }
            }
        }
        ConstraintKind::MinC { prop, n } => {
            let candidates: Vec<TermId> = match q {
                Some(class) => instances(d, class),
                None if x.lenient_resources => d.positional_resources().to_vec(),
                None => d.unary_ids(UnaryRelation::Resource).to_vec(),
            };
            let p = id(d, prop);
            for s in candidates {
                let count = p.map_or(0, |p| d.objects(s, p).count());
                if count < *n as usize {
                    out.push(vec![s]);
                }
            }
        }
        ConstraintKind::MaxC { prop, n } => {
            let mut by_subject: BTreeMap<TermId, Vec<TermId>> = BTreeMap::new();
            for (s, o) in pairs(d, prop, q) {
                by_subject.entry(s).or_default().push(o);
            }
            for (s, objs) in by_subject {
                if objs.len() > *n as usize {
                    for combo in combinations(&objs, *n as usize + 1) {
                        let mut w = vec![s];
                        w.extend(combo);
                        out.push(w);
                    }
                }
            }
        }
        ConstraintKind::DomainC { prop, class } => {
            let rdf_type = id(d, &Iri::new_unchecked(vocab::RDF_TYPE));
            let class = id(d, class);
            for (s, o) in pairs(d, prop, q) {
                if !is_instance(d, s, class, rdf_type) {
                    out.push(vec![s, o]);
                }
            }
        }
        ConstraintKind::RangeC { prop, class } => {
            let rdf_type = id(d, &Iri::new_unchecked(vocab::RDF_TYPE));
            let class = id(d, class);
            for (s, o) in pairs(d, prop, q) {
                if !is_instance(d, o, class, rdf_type) {
                    out.push(vec![s, o]);
                }
            }
        }
        ConstraintKind::PathC { prop, path } => {
            for (s, o) in pairs(d, prop, q) {
                if !path_reaches(d, s, path, o) {
                    out.push(vec![s, o]);
                }
            }
        }
        ConstraintKind::SubPropC { super_prop, sub_prop } => {
            let sup = id(d, super_prop);
            for (s, o) in pairs(d, sub_prop, q) {
                if !sup.is_some_and(|p| d.contains_ids([s, p, o])) {
                    out.push(vec![s, o]);
                }
            }
        }
        ConstraintKind::PropClosure { props } => {
            let allowed: BTreeSet<TermId> = props.iter().filter_map(|p| id(d, p)).collect();
            let subjects: Option<BTreeSet<TermId>> = q.map(|class| instances(d, class).into_iter().collect());
            for &[s, p, o] in d.id_triples() {
                if subjects.as_ref().is_none_or(|set| set.contains(&s)) && !allowed.contains(&p) {
                    out.push(vec![s, p, o]);
                }
            }
        }
        ConstraintKind::ClassClosure { classes } => {
            let allowed: BTreeSet<TermId> = classes.iter().filter_map(|c| id(d, c)).collect();
            if let Some(t) = id(d, &Iri::new_unchecked(vocab::RDF_TYPE)) {
                for [s, _, c] in d.match_ids(None, Some(t), None) {
                    if !allowed.contains(&c) {
                        out.push(vec![s, c]);
                    }
                }
            }
        }
        ConstraintKind::SingletonExists { class } => {
            if instances(d, class).is_empty() {
                out.push(Vec::new());
            }
        }
        ConstraintKind::SingletonUnique { class } => {
            out.extend(combinations(&instances(d, class), 2));
        }
        ConstraintKind::KeyC { class, props } => {
            let ids: Option<Vec<TermId>> = props.iter().map(|p| id(d, p)).collect();
            let Some(ids) = ids else { return out };
            let mut groups: BTreeMap<Vec<TermId>, Vec<TermId>> = BTreeMap::new();
            for s in instances(d, class) {
                // every combination of values, one per key property
                let mut tuples: Vec<Vec<TermId>> = vec![Vec::new()];
                for &p in &ids {
                    let values: Vec<TermId> = d.objects(s, p).collect();
                    tuples = tuples
                        .into_iter()
                        .flat_map(|t| {
                            values.iter().map(move |v| {
                                let mut t = t.clone();
                                t.push(*v);
                                t
                            })
                        })
                        .collect();
                }
                for t in tuples {
                    groups.entry(t).or_default().push(s);
                }
            }
            for (values, subjects) in groups {
                for pair in combinations(&subjects, 2) {
                    let mut w = pair;
                    w.extend(values.iter().copied());
                    out.push(w);
                }
            }
        }
    }
    out
}
