use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::term::{Term, Triple};

/// Index of a term inside a [`Dataset`]. Ids follow the N-Triples
/// serialization order of the terms they denote.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermId(pub u32);

/// A triple of term ids in subject, predicate, object order.
pub type IdTriple = [TermId; 3];

/// The four unary relations over the active domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UnaryRelation {
    Iri,
    BNode,
    Resource,
    Literal,
}

/// An immutable set of triples with SPO, POS and OSP indexes.
#[derive(Clone, Debug, Default)]
pub struct Dataset {
    terms: Vec<Term>,
    keys: Vec<String>,
    spo: Vec<IdTriple>,
    pos: Vec<IdTriple>,
    osp: Vec<IdTriple>,
    iris: Vec<TermId>,
    bnodes: Vec<TermId>,
    resources: Vec<TermId>,
    literals: Vec<TermId>,
    positional_resources: Vec<TermId>,
}

impl Dataset {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a dataset from a single document's triples.
    pub fn from_triples(triples: impl IntoIterator<Item = Triple>) -> Self {
        let mut builder = DatasetBuilder::new();
        builder.add_document(triples);
        builder.build()
    }

    pub fn len(&self) -> usize {
        self.spo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spo.is_empty()
    }

    /// Every term occurring in some triple, in serialization order.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn term(&self, id: TermId) -> &Term {
        &self.terms[id.0 as usize]
    }

    pub fn id_of(&self, term: &Term) -> Option<TermId> {
        let key = term.to_string();
        self.keys.binary_search(&key).ok().map(|i| TermId(i as u32))
    }

    /// All triples as ids, in (s, p, o) serialization order.
    pub fn id_triples(&self) -> &[IdTriple] {
        &self.spo
    }

    pub fn triples(&self) -> impl Iterator<Item = Triple> + '_ {
        self.spo.iter().map(|t| self.resolve(*t))
    }

    pub fn resolve(&self, [s, p, o]: IdTriple) -> Triple {
        Triple { s: self.term(s).clone(), p: self.term(p).clone(), o: self.term(o).clone() }
    }

    pub fn contains_ids(&self, triple: IdTriple) -> bool {
        self.spo.binary_search(&triple).is_ok()
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        match (self.id_of(&triple.s), self.id_of(&triple.p), self.id_of(&triple.o)) {
            (Some(s), Some(p), Some(o)) => self.contains_ids([s, p, o]),
            _ => false,
        }
    }

    /// Triples agreeing with every bound position, in (s, p, o) order.
    pub fn match_triples(&self, s: Option<&Term>, p: Option<&Term>, o: Option<&Term>) -> Vec<Triple> {
        let lookup = |t: Option<&Term>| match t {
            None => Some(None),
            Some(t) => self.id_of(t).map(Some),
        };
        match (lookup(s), lookup(p), lookup(o)) {
            (Some(s), Some(p), Some(o)) => {
                self.match_ids(s, p, o).into_iter().map(|t| self.resolve(t)).collect()
            }
            _ => Vec::new(),
        }
    }

    /// Id-level pattern lookup, choosing the index whose key prefix covers
    /// the most bound positions. Output is in (s, p, o) order.
    pub fn match_ids(&self, s: Option<TermId>, p: Option<TermId>, o: Option<TermId>) -> Vec<IdTriple> {
        match (s, p, o) {
            (Some(s), Some(p), Some(o)) => {
                if self.contains_ids([s, p, o]) {
                    alloc::vec![[s, p, o]]
                } else {
                    Vec::new()
                }
            }
            (Some(s), Some(p), None) => range(&self.spo, &[s, p]).to_vec(),
            (Some(s), None, None) => range(&self.spo, &[s]).to_vec(),
            (Some(s), None, Some(o)) => {
                let mut out: Vec<IdTriple> =
                    range(&self.osp, &[o, s]).iter().map(|&[o, s, p]| [s, p, o]).collect();
                out.sort_unstable();
                out
            }
            (None, Some(p), o) => {
                let rows = match o {
                    Some(o) => range(&self.pos, &[p, o]),
                    None => range(&self.pos, &[p]),
                };
                let mut out: Vec<IdTriple> = rows.iter().map(|&[p, o, s]| [s, p, o]).collect();
                out.sort_unstable();
                out
            }
            (None, None, Some(o)) => {
                let mut out: Vec<IdTriple> =
                    range(&self.osp, &[o]).iter().map(|&[o, s, p]| [s, p, o]).collect();
                out.sort_unstable();
                out
            }
            (None, None, None) => self.spo.clone(),
        }
    }

    /// Objects of `(s, p, ?)`, sorted and distinct.
    pub fn objects(&self, s: TermId, p: TermId) -> impl Iterator<Item = TermId> + '_ {
        range(&self.spo, &[s, p]).iter().map(|t| t[2])
    }

    /// Subjects of `(?, p, o)`, sorted and distinct.
    pub fn subjects(&self, p: TermId, o: TermId) -> impl Iterator<Item = TermId> + '_ {
        range(&self.pos, &[p, o]).iter().map(|t| t[2])
    }

    pub fn unary_ids(&self, relation: UnaryRelation) -> &[TermId] {
        match relation {
            UnaryRelation::Iri => &self.iris,
            UnaryRelation::BNode => &self.bnodes,
            UnaryRelation::Resource => &self.resources,
            UnaryRelation::Literal => &self.literals,
        }
    }

    pub fn unary(&self, relation: UnaryRelation) -> impl Iterator<Item = &Term> + '_ {
        self.unary_ids(relation).iter().map(|id| self.term(*id))
    }

    /// Resources occurring in subject or object position only.
    pub fn positional_resources(&self) -> &[TermId] {
        &self.positional_resources
    }

    pub fn holds(&self, relation: UnaryRelation, id: TermId) -> bool {
        let term = self.term(id);
        match relation {
            UnaryRelation::Iri => term.is_iri(),
            UnaryRelation::BNode => term.is_blank(),
            UnaryRelation::Resource => term.is_resource(),
            UnaryRelation::Literal => term.is_literal(),
        }
    }

    /// Canonical N-Triples: one line per triple in serialization order,
    /// LF line endings.
    pub fn to_ntriples(&self) -> String {
        let mut out = String::new();
        for t in &self.spo {
            let [s, p, o] = t.map(|id| &self.keys[id.0 as usize]);
            out.push_str(&format!("{s} {p} {o} .\n"));
        }
        out
    }

    /// A copy without the triples rejected by `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(&Triple) -> bool) -> Dataset {
        Dataset::from_triples(self.triples().filter(|t| keep(t)))
    }
}

impl PartialEq for Dataset {
    fn eq(&self, other: &Self) -> bool {
        self.keys == other.keys && self.spo == other.spo
    }
}

impl Eq for Dataset {}

fn range<'a>(index: &'a [IdTriple], prefix: &[TermId]) -> &'a [IdTriple] {
    let n = prefix.len();
    let lo = index.partition_point(|t| t[..n] < *prefix);
    let hi = lo + index[lo..].partition_point(|t| t[..n] == *prefix);
    &index[lo..hi]
}

/// Accumulates documents into a [`Dataset`]. Blank node labels are scoped
/// per document: a label already used by an earlier document is renamed
/// with a fresh numeric suffix.
#[derive(Debug, Default)]
pub struct DatasetBuilder {
    triples: Vec<Triple>,
    used_labels: BTreeSet<String>,
}

impl DatasetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_document(&mut self, triples: impl IntoIterator<Item = Triple>) {
        let doc: Vec<Triple> = triples.into_iter().collect();
        let mut labels = BTreeSet::new();
        for t in &doc {
            for term in [&t.s, &t.o] {
                if let Term::BlankNode(label) = term {
                    labels.insert(label.clone());
                }
            }
        }
        let mut renames = BTreeMap::new();
        let mut taken: BTreeSet<String> = self.used_labels.union(&labels).cloned().collect();
        for label in &labels {
            if self.used_labels.contains(label) {
                let fresh = (1..)
                    .map(|k| format!("{label}_{k}"))
                    .find(|candidate| !taken.contains(candidate))
                    .expect("unbounded suffix search");
                taken.insert(fresh.clone());
                renames.insert(label.clone(), fresh);
            }
        }
        for label in labels {
            let label = renames.get(&label).cloned().unwrap_or(label);
            self.used_labels.insert(label);
        }
        let rename = |term: Term| match term {
            Term::BlankNode(label) => match renames.get(&label) {
                Some(fresh) => Term::BlankNode(fresh.clone()),
                None => Term::BlankNode(label),
            },
            other => other,
        };
        self.triples
            .extend(doc.into_iter().map(|t| Triple { s: rename(t.s), p: t.p, o: rename(t.o) }));
    }

    pub fn build(self) -> Dataset {
        let mut by_key: BTreeMap<String, Term> = BTreeMap::new();
        for t in &self.triples {
            for term in [&t.s, &t.p, &t.o] {
                by_key.entry(term.to_string()).or_insert_with(|| term.clone());
            }
        }
        let mut keys = Vec::with_capacity(by_key.len());
        let mut terms = Vec::with_capacity(by_key.len());
        for (k, t) in by_key {
            keys.push(k);
            terms.push(t);
        }
        let id = |term: &Term| {
            let key = term.to_string();
            TermId(keys.binary_search(&key).expect("term collected above") as u32)
        };
        let mut spo: Vec<IdTriple> = self.triples.iter().map(|t| [id(&t.s), id(&t.p), id(&t.o)]).collect();
        spo.sort_unstable();
        spo.dedup();
        let mut pos: Vec<IdTriple> = spo.iter().map(|&[s, p, o]| [p, o, s]).collect();
        pos.sort_unstable();
        let mut osp: Vec<IdTriple> = spo.iter().map(|&[s, p, o]| [o, s, p]).collect();
        osp.sort_unstable();

        let all = (0..terms.len() as u32).map(TermId);
        let select = |f: fn(&Term) -> bool| -> Vec<TermId> {
            all.clone().filter(|id| f(&terms[id.0 as usize])).collect()
        };
        let iris = select(Term::is_iri);
        let bnodes = select(Term::is_blank);
        let resources = select(Term::is_resource);
        let literals = select(Term::is_literal);
        let mut positional: BTreeSet<TermId> = BTreeSet::new();
        for &[s, _, o] in &spo {
            positional.insert(s);
            if terms[o.0 as usize].is_resource() {
                positional.insert(o);
            }
        }
        Dataset {
            terms,
            keys,
            spo,
            pos,
            osp,
            iris,
            bnodes,
            resources,
            literals,
            positional_resources: positional.into_iter().collect(),
        }
    }
}
