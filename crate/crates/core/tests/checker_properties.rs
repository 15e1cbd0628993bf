mod common;

use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::Rng;
use rdd_core::check::verify_witness;
use rdd_core::compile::fol::{Arg, Atom};
use rdd_core::store::{Dataset, Term, Triple};
use rdd_core::{check, evaluate_constraint, vocab, CheckOptions, Constraint, ConstraintKind, Mode};

use common::*;

fn opts(mode: Mode) -> CheckOptions {
    CheckOptions { mode, ..Default::default() }
}

fn satisfied(d: &Dataset, c: &Constraint) -> bool {
    evaluate_constraint(d, c, &opts(Mode::Indexed)).is_empty()
}

#[test]
fn reference_and_indexed_agree() {
    for seed in 0..1000u64 {
        let mut rng = rng(seed);
        let (text, set) = random_rdd(&mut rng, 6);
        let d = random_dataset(&mut rng, 30, 8);
        let lenient = seed % 5 == 0;
        let o = |mode| CheckOptions { mode, lenient_resources: lenient, limit: None };
        let reference = check(&d, &set, &o(Mode::Reference));
        let indexed = check(&d, &set, &o(Mode::Indexed));
        assert_eq!(reference.to_text(), indexed.to_text(), "seed {seed}\n{text}\n{}", d.to_ntriples());
        for v in &indexed.violations {
            assert!(verify_witness(&d, &v.constraint, &v.witness, lenient), "seed {seed}: {}", v.to_text());
        }
    }
}

#[test]
fn limits_keep_the_smallest_witnesses() {
    for seed in 0..200u64 {
        let mut rng = rng(seed);
        let (_, set) = random_rdd(&mut rng, 6);
        let d = random_dataset(&mut rng, 30, 8);
        let full = check(&d, &set, &opts(Mode::Indexed));
        let capped = check(&d, &set, &CheckOptions { limit: Some(1), ..opts(Mode::Reference) });
        let firsts: Vec<String> = set
            .iter()
            .filter_map(|c| full.violations.iter().find(|v| *v.constraint == *c).map(|v| v.to_text()))
            .collect();
        let got: Vec<String> = capped.violations.iter().map(|v| v.to_text()).collect();
        assert_eq!(got, firsts, "seed {seed}");
    }
}

fn downward_closed(kind: &ConstraintKind) -> bool {
    matches!(
        kind,
        ConstraintKind::MaxC { .. }
            | ConstraintKind::KeyC { .. }
            | ConstraintKind::PropClosure { .. }
            | ConstraintKind::ClassClosure { .. }
            | ConstraintKind::RangeTypeC { .. }
            | ConstraintKind::SingletonUnique { .. }
    )
}

/// Every single-triple deletion, plus a few random multi-triple deletions.
fn deletions(d: &Dataset, rng: &mut impl Rng) -> Vec<Dataset> {
    let triples: Vec<Triple> = d.triples().collect();
    let mut out = Vec::new();
    for skip in &triples {
        out.push(d.filtered(|t| t != skip));
    }
    for _ in 0..3 {
        let keep: BTreeSet<usize> = (0..triples.len()).filter(|_| rng.random_bool(0.5)).collect();
        out.push(Dataset::from_triples(keep.iter().map(|&i| triples[i].clone())));
    }
    out
}

#[test]
fn downward_closure() {
    let mut instances = 0;
    let mut seed = 0u64;
    while instances < 500 {
        let mut rng = rng(10_000 + seed);
        seed += 1;
        let (_, set) = random_rdd(&mut rng, 6);
        let d = random_dataset(&mut rng, 30, 8);
        for c in set.iter().filter(|c| downward_closed(&c.kind)) {
            if !satisfied(&d, c) {
                continue;
            }
            instances += 1;
            for smaller in deletions(&d, &mut rng) {
                assert!(satisfied(&smaller, c), "{} lost on deletion\n{}", c.fol_text, smaller.to_ntriples());
            }
        }
    }
}

#[test]
fn repairing_a_violation_removes_it() {
    let rdf_type = Term::iri(vocab::RDF_TYPE).unwrap();
    let mut repaired = 0;
    for seed in 0..2000u64 {
        let mut rng = rng(20_000 + seed);
        let (_, set) = random_rdd(&mut rng, 6);
        let d = random_dataset(&mut rng, 30, 8);
        for c in set.iter() {
            let violations = evaluate_constraint(&d, c, &opts(Mode::Indexed));
            let Some(v) = violations.choose(&mut rng) else { continue };
            let (s, o) = match v.witness.as_slice() {
                [(_, s), (_, o)] => (s.clone(), o.clone()),
                _ => continue,
            };
            let fix = match &c.kind {
                ConstraintKind::DomainC { class, .. } => Triple::new(s, rdf_type.clone(), Term::Iri(class.clone())),
                ConstraintKind::RangeC { class, .. } => Triple::new(o, rdf_type.clone(), Term::Iri(class.clone())),
                ConstraintKind::SubPropC { super_prop, .. } => Triple::new(s, Term::Iri(super_prop.clone()), o),
                _ => continue,
            };
            // a literal cannot be typed; such violations are not repairable
            let Some(fix) = fix else { continue };
            let mut triples: Vec<Triple> = d.triples().collect();
            triples.push(fix);
            let after = Dataset::from_triples(triples);
            let remaining = evaluate_constraint(&after, c, &opts(Mode::Indexed));
            assert!(!remaining.iter().any(|r| r.witness == v.witness), "{} still violated at {:?}", c.fol_text, v.witness);
            repaired += 1;
        }
    }
    assert!(repaired > 100, "only {repaired} repairs exercised");
}

fn body_constants(c: &Constraint) -> Vec<Term> {
    let mut out = Vec::new();
    for atom in c.sentence().body {
        let args: Vec<Arg> = match atom {
            Atom::Triple(s, p, o) => vec![s, p, o],
            Atom::Eq(a, b) => vec![a, b],
            _ => Vec::new(),
        };
        for a in args {
            if let Arg::Const(iri) = a {
                out.push(Term::Iri(iri));
            }
        }
    }
    out
}

#[test]
fn vacuity_on_unrelated_data() {
    let z = |l: &str| Term::iri(&format!("http://z.org/{l}")).unwrap();
    let unrelated = Dataset::from_triples(vec![
        Triple::new(z("a"), z("p"), z("b")).unwrap(),
        Triple::new(z("b"), z("q"), Term::literal("v")).unwrap(),
    ]);
    let mut checked = 0;
    for seed in 0..500u64 {
        let mut rng = rng(30_000 + seed);
        let (_, set) = random_rdd(&mut rng, 6);
        for c in set.iter() {
            let constants = body_constants(c);
            let mentions_data = constants.iter().any(|t| unrelated.id_of(t).is_some());
            if c.sentence().body.is_empty() || constants.is_empty() || mentions_data {
                continue;
            }
            checked += 1;
            for mode in [Mode::Reference, Mode::Indexed] {
                assert!(evaluate_constraint(&unrelated, c, &opts(mode)).is_empty(), "{}", c.fol_text);
            }
        }
    }
    assert!(checked > 500);
    // the two documented exceptions
    let (_, set) = common::compile_text(
        "PREFIX e: <http://e.org/> OWA CLASSES { OWA SINGLETON CLASS e:C { } } OWA PROPERTIES { MIN(1) e:p ; }",
    )
    .unwrap();
    let report = check(&unrelated, &set, &opts(Mode::Reference));
    let kinds: BTreeSet<&str> = report.violations.iter().map(|v| v.constraint.kind.name()).collect();
    assert_eq!(kinds, BTreeSet::from(["MinC", "SingletonExists"]));
}

#[test]
fn empty_dataset_only_violates_singleton_existence() {
    for seed in 0..300u64 {
        let mut rng = rng(40_000 + seed);
        let (_, set) = random_rdd(&mut rng, 6);
        for mode in [Mode::Reference, Mode::Indexed] {
            let report = check(&Dataset::empty(), &set, &opts(mode));
            assert!(report.violations.iter().all(|v| v.constraint.kind.name() == "SingletonExists"));
        }
    }
}
