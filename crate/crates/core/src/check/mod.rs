//! Consistency checking of a dataset against a compiled constraint set.
//!
//! Two evaluators are provided. [`Mode::Reference`] interprets each
//! constraint's first-order sentence directly over the active domain;
//! [`Mode::Indexed`] runs a hand-written routine per constraint kind on top
//! of the dataset indexes. Both report the same violations in the same
//! canonical order.

mod indexed;
mod reference;

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::compile::fol::Var;
use crate::compile::{Constraint, ConstraintKind, ConstraintSet};
use crate::store::{Dataset, Term, TermId};
use reference::Interp;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    Reference,
    #[default]
    Indexed,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CheckOptions {
    pub mode: Mode,
    /// Keep at most this many violations per constraint.
    pub limit: Option<usize>,
    /// Interpret `Resource` as "occurs in subject or object position"
    /// instead of "is an IRI or blank node of the active domain".
    pub lenient_resources: bool,
}

/// A failing instance of a constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub constraint: Arc<Constraint>,
    /// Bindings of the universally quantified variables, in quantifier
    /// order. Empty for singleton existence.
    pub witness: Vec<(Var, Term)>,
    pub message: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub constraints: usize,
    pub triples: usize,
    /// Wall time; always 0 in this crate, which has no clock.
    pub millis: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub consistent: bool,
    pub violations: Vec<Violation>,
    pub stats: Stats,
}

/// Violations of `c` in `d`, sorted by witness and capped at
/// `opts.limit`.
pub fn evaluate_constraint(d: &Dataset, c: &Constraint, opts: &CheckOptions) -> Vec<Violation> {
    let x = Interp { d, lenient_resources: opts.lenient_resources };
    let mut found = match opts.mode {
        Mode::Reference => x.violations(&c.sentence()),
        Mode::Indexed => indexed::violations(&x, c),
    };
    found.sort_unstable();
    found.dedup();
    if let Some(limit) = opts.limit {
        found.truncate(limit);
    }
    if found.is_empty() {
        return Vec::new();
    }
    let shared = Arc::new(c.clone());
    let vars = c.sentence().universals;
    found
        .into_iter()
        .map(|ids| {
            let witness: Vec<(Var, Term)> = vars.iter().zip(&ids).map(|(v, id)| (*v, d.term(*id).clone())).collect();
            debug_assert!(
                verify_witness(d, c, &witness, opts.lenient_resources),
                "witness {witness:?} does not refute {}",
                c.fol_text
            );
            let message = message(&c.kind, &witness);
            Violation { constraint: shared.clone(), witness, message }
        })
        .collect()
}

/// Checks every constraint independently and assembles the report.
pub fn check(d: &Dataset, set: &ConstraintSet, opts: &CheckOptions) -> Report {
    Report::assemble(set.iter().map(|c| evaluate_constraint(d, c, opts)), set.len(), d.len())
}

/// True if substituting `witness` into the constraint makes its body true
/// and its conclusion false.
pub fn verify_witness(d: &Dataset, c: &Constraint, witness: &[(Var, Term)], lenient_resources: bool) -> bool {
    let sentence = c.sentence();
    if witness.len() != sentence.universals.len() {
        return false;
    }
    let mut binding: Vec<(Var, TermId)> = Vec::new();
    for ((var, term), expected) in witness.iter().zip(&sentence.universals) {
        let Some(id) = d.id_of(term) else { return false };
        if var != expected {
            return false;
        }
        binding.push((*var, id));
    }
    Interp { d, lenient_resources }.refutes(&sentence, &mut binding)
}

fn message(kind: &ConstraintKind, witness: &[(Var, Term)]) -> String {
    let w = |i: usize| witness.get(i).map(|(_, t)| t.to_ntriples()).unwrap_or_default();
    let last = || w(witness.len().saturating_sub(1));
    match kind {
        ConstraintKind::RangeTypeC { prop, range } => {
            let mut want = String::from(range.kind.keyword());
            if let Some(dt) = &range.datatype {
                let _ = write!(want, "({dt})");
            }
            format!("value {} of {prop} on {} is not {want}", w(1), w(0))
        }
        ConstraintKind::MinC { prop, n } => format!("{} has fewer than {n} distinct values for {prop}", w(0)),
        ConstraintKind::MaxC { prop, n } => format!("{} has more than {n} values for {prop}", w(0)),
        ConstraintKind::DomainC { prop, class } => format!("{} uses {prop} but is not typed {class}", w(0)),
        ConstraintKind::RangeC { prop, class } => format!("{} is a value of {prop} but is not typed {class}", w(1)),
        ConstraintKind::PathC { prop, .. } => {
            format!("{} {prop} {} is not matched by the required path", w(0), w(1))
        }
        ConstraintKind::SubPropC { super_prop, sub_prop } => {
            format!("{} {sub_prop} {} has no matching {super_prop} triple", w(0), w(1))
        }
        ConstraintKind::PropClosure { .. } => format!("property {} on {} is not allowed", w(1), w(0)),
        ConstraintKind::ClassClosure { .. } => format!("class {} of {} is not declared", w(1), w(0)),
        ConstraintKind::SingletonExists { class } => format!("no instance of {class}"),
        ConstraintKind::SingletonUnique { class } => format!("{} and {} are both instances of {class}", w(0), w(1)),
        ConstraintKind::KeyC { class, .. } => {
            format!("{} and {} are distinct instances of {class} sharing the key value {}", w(0), w(1), last())
        }
    }
}

impl Report {
    /// Joins per-constraint results (given in constraint order).
    pub fn assemble(per_constraint: impl IntoIterator<Item = Vec<Violation>>, constraints: usize, triples: usize) -> Report {
        let violations: Vec<Violation> = per_constraint.into_iter().flatten().collect();
        Report { consistent: violations.is_empty(), violations, stats: Stats { constraints, triples, millis: 0 } }
    }

    /// Deterministic text form, one line per violation. Excludes timing.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.consistent {
            let _ = writeln!(out, "OK ({} constraints checked)", self.stats.constraints);
            return out;
        }
        let _ = writeln!(
            out,
            "INCONSISTENT: {} violation(s) ({} constraints checked, {} triples)",
            self.violations.len(),
            self.stats.constraints,
            self.stats.triples
        );
        for v in &self.violations {
            out.push_str(&v.to_text());
            out.push('\n');
        }
        out
    }
}

impl Violation {
    /// `Kind[@qualifier] fol | line:col derivation; ... | var=term, ...`
    pub fn to_text(&self) -> String {
        let c = &self.constraint;
        let mut out = String::from(c.kind.name());
        if let Some(q) = &c.qualifier {
            let _ = write!(out, "@{q}");
        }
        let _ = write!(out, " {} |", c.fol_text);
        for (i, p) in c.provenance.iter().enumerate() {
            let sep = if i == 0 { " " } else { "; " };
            let _ = write!(out, "{sep}{} {}", p.loc, p.derivation);
        }
        out.push_str(" |");
        if self.witness.is_empty() {
            out.push_str(" -");
        }
        for (i, (var, term)) in self.witness.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            let _ = write!(out, "{sep}{var}={}", term.to_ntriples());
        }
        let _ = write!(out, " | {}", self.message);
        out
    }
}
