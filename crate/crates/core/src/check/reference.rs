//! Naive model checker: interprets a constraint's [`Sentence`] over the
//! active domain by nested loops, pruning as soon as a fully bound body atom
//! is false.

use alloc::vec::Vec;

use crate::compile::fol::{Arg, Atom, Formula, Sentence, Var};
use crate::iri::Iri;
use crate::store::{Dataset, Term, TermId, UnaryRelation};

pub(crate) type Binding = Vec<(Var, TermId)>;

pub(crate) struct Interp<'a> {
    pub d: &'a Dataset,
    pub lenient_resources: bool,
}

fn lookup(binding: &Binding, var: Var) -> Option<TermId> {
    binding.iter().rev().find(|(v, _)| *v == var).map(|(_, id)| *id)
}

/// `None` if a constant does not occur in the dataset; such an atom can
/// never hold.
fn arg_id(d: &Dataset, binding: &Binding, arg: &Arg) -> Option<Option<TermId>> {
    match arg {
        Arg::Var(v) => lookup(binding, *v).map(Some),
        Arg::Const(iri) => Some(d.id_of(&Term::Iri(iri.clone()))),
    }
}

fn atom_vars(atom: &Atom) -> Vec<Var> {
    let mut out = Vec::new();
    let mut push = |a: &Arg| {
        if let Arg::Var(v) = a {
            out.push(*v);
        }
    };
    match atom {
        Atom::Triple(s, p, o) => {
            push(s);
            push(p);
            push(o);
        }
        Atom::Eq(a, b) => {
            push(a);
            push(b);
        }
        Atom::Unary(_, v) | Atom::Datatype(v, _) => out.push(*v),
        Atom::Neq(a, b) => {
            out.push(*a);
            out.push(*b);
        }
    }
    out
}

fn has_datatype(term: &Term, dt: &Iri) -> bool {
    match term {
        Term::Literal(lit) => lit.effective_datatype() == Some(dt.as_str()),
        _ => false,
    }
}

impl Interp<'_> {
    pub fn holds(&self, rel: UnaryRelation, id: TermId) -> bool {
        if rel == UnaryRelation::Resource && self.lenient_resources {
            return self.d.positional_resources().binary_search(&id).is_ok();
        }
        self.d.holds(rel, id)
    }

    /// Evaluates an atom whose variables are all bound.
    pub fn atom(&self, atom: &Atom, binding: &Binding) -> bool {
        let d = self.d;
        let id = |a: &Arg| arg_id(d, binding, a).expect("atom variables are bound");
        match atom {
            Atom::Triple(s, p, o) => match (id(s), id(p), id(o)) {
                (Some(s), Some(p), Some(o)) => d.contains_ids([s, p, o]),
                _ => false,
            },
            Atom::Unary(rel, v) => self.holds(*rel, lookup(binding, *v).expect("bound")),
            Atom::Eq(a, b) => match (id(a), id(b)) {
                (Some(a), Some(b)) => a == b,
                _ => false,
            },
            Atom::Neq(a, b) => lookup(binding, *a) != lookup(binding, *b),
            Atom::Datatype(v, dt) => has_datatype(d.term(lookup(binding, *v).expect("bound")), dt),
        }
    }

    pub fn formula(&self, f: &Formula, binding: &mut Binding) -> bool {
        match f {
            Formula::Atom(a) => self.atom(a, binding),
            Formula::And(parts) => parts.iter().all(|p| self.formula(p, binding)),
            Formula::Or(parts) => parts.iter().any(|p| self.formula(p, binding)),
            Formula::Exists(vars, inner) => self.exists(vars, inner, binding),
        }
    }

    fn exists(&self, vars: &[Var], inner: &Formula, binding: &mut Binding) -> bool {
        let Some((first, rest)) = vars.split_first() else {
            return self.formula(inner, binding);
        };
        for i in 0..self.d.terms().len() {
            binding.push((*first, TermId(i as u32)));
            let found = self.exists(rest, inner, binding);
            binding.pop();
            if found {
                return true;
            }
        }
        false
    }

    /// Every binding of the universals (in variable order, canonical for
    /// interchangeable variables) under which the body holds and the
    /// conclusion fails.
    pub fn violations(&self, sentence: &Sentence) -> Vec<Vec<TermId>> {
        let mut out = Vec::new();
        let body_vars: Vec<Vec<Var>> = sentence.body.iter().map(atom_vars).collect();
        self.assign(sentence, &body_vars, &mut Vec::new(), &mut out);
        out
    }

    fn assign(&self, s: &Sentence, body_vars: &[Vec<Var>], binding: &mut Binding, out: &mut Vec<Vec<TermId>>) {
        let i = binding.len();
        if i == s.universals.len() {
            if !self.formula(&s.conclusion, binding) {
                out.push(binding.iter().map(|(_, id)| *id).collect());
            }
            return;
        }
        let var = s.universals[i];
        let previous = s
            .interchangeable
            .iter()
            .position(|v| *v == var)
            .filter(|&k| k > 0)
            .map(|k| lookup(binding, s.interchangeable[k - 1]).expect("interchangeable variables bind in order"));
        for id in 0..self.d.terms().len() {
            let id = TermId(id as u32);
            if previous.is_some_and(|p| id <= p) {
                continue;
            }
            binding.push((var, id));
            // atoms that just became fully bound
            let ok = s.body.iter().zip(body_vars).all(|(atom, vars)| {
                !vars.contains(&var) || vars.iter().any(|v| lookup(binding, *v).is_none()) || self.atom(atom, binding)
            });
            if ok {
                self.assign(s, body_vars, binding, out);
            }
            binding.pop();
        }
    }

    /// Body true and conclusion false under `binding`.
    pub fn refutes(&self, sentence: &Sentence, binding: &mut Binding) -> bool {
        sentence.body.iter().all(|a| self.atom(a, binding)) && !self.formula(&sentence.conclusion, binding)
    }
}
