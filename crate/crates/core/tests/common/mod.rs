//! Random RDD documents and datasets for property tests. Shared with the
//! `rdd` crate's acceptance suite via `#[path]`.
#![allow(dead_code)]

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rdd_core::env::build_environment;
use rdd_core::store::{Dataset, Term, Triple};
use rdd_core::syntax::parse_rdd;
use rdd_core::{compile, vocab, ConstraintSet, RddDocument};

pub const NS: &str = "http://e.org/";
pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const PROPS: [&str; 3] = ["p", "q", "r"];
pub const CLASSES: [&str; 2] = ["C", "D"];

fn e(local: &str) -> Term {
    Term::iri(&format!("{NS}{local}")).unwrap()
}

/// Candidate terms: the vocabulary the random documents talk about plus a
/// few instances of each term kind.
fn candidates() -> Vec<Term> {
    let mut out: Vec<Term> = PROPS.iter().chain(CLASSES.iter()).map(|l| e(l)).collect();
    out.extend([e("a"), e("b"), Term::blank("x"), Term::blank("y"), Term::literal("1")]);
    out.push(Term::Literal(rdd_core::store::Literal::typed("1", rdd_core::Iri::new_unchecked(XSD_INTEGER))));
    out.push(Term::Literal(rdd_core::store::Literal::lang_tagged("one", "en")));
    out
}

/// A dataset of at most `max_triples` triples over at most `max_terms`
/// distinct terms (`rdf:type` is always one of them).
pub fn random_dataset(rng: &mut impl Rng, max_triples: usize, max_terms: usize) -> Dataset {
    let rdf_type = Term::iri(vocab::RDF_TYPE).unwrap();
    let mut pool = candidates();
    pool.shuffle(rng);
    let mut chosen: Vec<Term> = vec![rdf_type.clone()];
    // favour a property and a class so that constraints are not all vacuous
    let p = e(PROPS[rng.random_range(0..PROPS.len())]);
    let c = e(CLASSES[rng.random_range(0..CLASSES.len())]);
    for t in [p, c] {
        if chosen.len() < max_terms && !chosen.contains(&t) {
            chosen.push(t);
        }
    }
    for t in pool {
        if chosen.len() >= max_terms {
            break;
        }
        if !chosen.contains(&t) {
            chosen.push(t);
        }
    }
    let subjects: Vec<&Term> = chosen.iter().filter(|t| t.is_resource()).collect();
    let predicates: Vec<&Term> = chosen.iter().filter(|t| t.is_iri()).collect();
    let n = rng.random_range(0..=max_triples);
    let mut triples = Vec::new();
    for _ in 0..n {
        let s = (*subjects.choose(rng).unwrap()).clone();
        let p = (*predicates.choose(rng).unwrap()).clone();
        let o = if p == rdf_type && rng.random_bool(0.7) {
            chosen.iter().filter(|t| t.is_iri() && **t != rdf_type).collect::<Vec<_>>().choose(rng).map(|t| (*t).clone()).unwrap_or_else(|| chosen.choose(rng).unwrap().clone())
        } else {
            chosen.choose(rng).unwrap().clone()
        };
        triples.push(Triple::new(s, p, o).unwrap());
    }
    Dataset::from_triples(triples)
}

fn pick<'a>(rng: &mut impl Rng, items: &[&'a str]) -> &'a str {
    items.choose(rng).unwrap()
}

fn range_type(rng: &mut impl Rng) -> String {
    match rng.random_range(0..6) {
        0 => " : IRI".into(),
        1 => " : BNODE".into(),
        2 => " : RESOURCE".into(),
        3 => " : LITERAL".into(),
        4 => format!(" : LITERAL(<{XSD_INTEGER}>)"),
        _ => String::new(),
    }
}

fn atom(rng: &mut impl Rng, prop: &str) -> String {
    let other = |rng: &mut _| loop {
        let q = pick(rng, &PROPS);
        if q != prop {
            break q;
        }
    };
    match rng.random_range(0..8) {
        0 => format!("MIN({})", rng.random_range(0..=3)),
        1 => format!("MAX({})", rng.random_range(0..=2)),
        2 => format!("DOMAIN(e:{})", pick(rng, &CLASSES)),
        3 => format!("RANGE(e:{})", pick(rng, &CLASSES)),
        4 => {
            let len = rng.random_range(1..=2);
            let steps: Vec<String> = (0..len).map(|_| format!("e:{}", pick(rng, &PROPS))).collect();
            format!("PATH({})", steps.join("/"))
        }
        5 => format!("SUBPROPERTY(e:{})", other(rng)),
        6 => "PARTIAL".into(),
        _ => "TOTAL".into(),
    }
}

fn prop_constraint(rng: &mut impl Rng) -> String {
    let prop = pick(rng, &PROPS);
    let n = rng.random_range(0..=2);
    let atoms: Vec<String> = (0..n).map(|_| atom(rng, prop)).collect();
    let mut out = atoms.join(", ");
    if !out.is_empty() {
        out.push(' ');
    }
    out.push_str(&format!("e:{prop}{} ;", range_type(rng)));
    out
}

fn wa(rng: &mut impl Rng) -> &'static str {
    if rng.random_bool(0.3) {
        "CWA"
    } else {
        "OWA"
    }
}

/// Random document text over the `e:` vocabulary. It may be rejected by the
/// parser (duplicate atoms, MIN > MAX) or the environment (cycles).
pub fn random_rdd_text(rng: &mut impl Rng) -> String {
    let mut out = format!("PREFIX e: <{NS}>\n{} CLASSES {{\n", wa(rng));
    let mut classes: Vec<&str> = CLASSES.to_vec();
    classes.shuffle(rng);
    let n_classes = rng.random_range(0..=2);
    for (i, class) in classes.iter().take(n_classes).enumerate() {
        let singleton = if rng.random_bool(0.2) { " SINGLETON" } else { "" };
        // only the first class may declare a subclass, so no cycles arise
        let sub = if i == 0 && rng.random_bool(0.3) {
            format!(" SUBCLASS e:{}", if *class == "C" { "D" } else { "C" })
        } else {
            String::new()
        };
        out.push_str(&format!("  {}{singleton} CLASS e:{class}{sub} {{\n", wa(rng)));
        if rng.random_bool(0.25) {
            let mut props = PROPS.to_vec();
            props.shuffle(rng);
            let k = rng.random_range(1..=2);
            let parts: Vec<String> = props[..k].iter().map(|p| format!("e:{p}{}", range_type(rng))).collect();
            out.push_str(&format!("    KEY {} ;\n", parts.join(", ")));
        }
        for _ in 0..rng.random_range(0..=2) {
            out.push_str(&format!("    {}\n", prop_constraint(rng)));
        }
        out.push_str("  }\n");
    }
    out.push_str(&format!("}}\n{} PROPERTIES {{\n", wa(rng)));
    for _ in 0..rng.random_range(0..=3) {
        out.push_str(&format!("  {}\n", prop_constraint(rng)));
    }
    out.push_str("}\n");
    out
}

pub fn compile_text(text: &str) -> Option<(RddDocument, ConstraintSet)> {
    let doc = parse_rdd(text).ok()?;
    let env = build_environment(&doc).ok()?;
    let set = compile(&doc, &env);
    Some((doc, set))
}

/// A valid random document compiling to at most `max_constraints`
/// constraints.
pub fn random_rdd(rng: &mut impl Rng, max_constraints: usize) -> (String, ConstraintSet) {
    loop {
        let text = random_rdd_text(rng);
        if let Some((_, set)) = compile_text(&text) {
            if set.len() <= max_constraints {
                return (text, set);
            }
        }
    }
}

/// The constraint each golden ASK file under `fixtures/golden/sparql` was
/// written for, with the prefixes they are rendered against.
pub fn sparql_golden_cases() -> (rdd_core::Prefixes, Vec<(&'static str, rdd_core::Constraint)>) {
    use rdd_core::syntax::{RangeKind, RangeType};
    use rdd_core::{Constraint, ConstraintKind as K, Iri, Prefixes};

    let ex = |l: &str| Iri::new_unchecked(format!("http://example.org/{l}"));
    let mut prefixes = Prefixes::new();
    prefixes.insert("ex", Iri::new_unchecked("http://example.org/"));
    prefixes.insert("xsd", Iri::new_unchecked("http://www.w3.org/2001/XMLSchema#"));
    let rt = |kind| RangeType::new(kind);
    let p = || ex("p");
    let cases: Vec<(&str, K, bool)> = vec![
        ("range_type_iri_unqualified", K::RangeTypeC { prop: p(), range: rt(RangeKind::Iri) }, false),
        ("range_type_iri_qualified", K::RangeTypeC { prop: p(), range: rt(RangeKind::Iri) }, true),
        ("range_type_bnode_unqualified", K::RangeTypeC { prop: p(), range: rt(RangeKind::BNode) }, false),
        ("range_type_resource_qualified", K::RangeTypeC { prop: p(), range: rt(RangeKind::Resource) }, true),
        ("range_type_literal_unqualified", K::RangeTypeC { prop: p(), range: rt(RangeKind::Literal) }, false),
        (
            "range_type_literal_datatype_qualified",
            K::RangeTypeC { prop: p(), range: RangeType::literal_of(Iri::new_unchecked(XSD_INTEGER)) },
            true,
        ),
        ("min_qualified", K::MinC { prop: p(), n: 2 }, true),
        ("min_unqualified", K::MinC { prop: p(), n: 2 }, false),
        ("min_one_unqualified", K::MinC { prop: p(), n: 1 }, false),
        ("max_qualified", K::MaxC { prop: p(), n: 1 }, true),
        ("max_unqualified", K::MaxC { prop: p(), n: 2 }, false),
        ("max_zero_unqualified", K::MaxC { prop: p(), n: 0 }, false),
        ("domain_qualified", K::DomainC { prop: p(), class: ex("D") }, true),
        ("domain_unqualified", K::DomainC { prop: p(), class: ex("D") }, false),
        ("range_qualified", K::RangeC { prop: p(), class: ex("R") }, true),
        ("range_unqualified", K::RangeC { prop: p(), class: ex("R") }, false),
        ("path_qualified", K::PathC { prop: p(), path: vec![ex("q1"), ex("q2")] }, true),
        ("path_unqualified", K::PathC { prop: p(), path: vec![ex("q1"), ex("q2"), ex("q3")] }, false),
        ("sub_property_qualified", K::SubPropC { super_prop: p(), sub_prop: ex("sub") }, true),
        ("sub_property_unqualified", K::SubPropC { super_prop: p(), sub_prop: ex("sub") }, false),
        ("prop_closure_qualified", K::PropClosure { props: vec![p(), ex("q")] }, true),
        ("prop_closure_unqualified", K::PropClosure { props: vec![p()] }, false),
        ("prop_closure_empty_unqualified", K::PropClosure { props: vec![] }, false),
        ("class_closure_unqualified", K::ClassClosure { classes: vec![ex("C"), ex("D")] }, false),
        ("singleton_exists_unqualified", K::SingletonExists { class: ex("C") }, false),
        ("singleton_unique_unqualified", K::SingletonUnique { class: ex("C") }, false),
        ("key_qualified", K::KeyC { class: ex("C"), props: vec![p(), ex("q")] }, true),
        ("key_single_qualified", K::KeyC { class: ex("C"), props: vec![p()] }, true),
    ];
    let out = cases
        .into_iter()
        .map(|(name, kind, qualified)| {
            let qualifier = qualified.then(|| ex("C"));
            let fol_text = rdd_core::compile::Sentence::of(&kind, qualifier.as_ref()).render(&prefixes);
            (name, Constraint { kind, qualifier, provenance: Vec::new(), fol_text })
        })
        .collect();
    (prefixes, out)
}
