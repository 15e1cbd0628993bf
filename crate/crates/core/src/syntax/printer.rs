use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::ast::*;
use crate::iri::{Iri, Prefixes};

/// Renders `doc` in canonical form: declared prefixes first, one member per
/// line, two-space indentation, keys before property constraints, and
/// `SUBPROPERTY` always in prefix form.
pub fn pretty_print(doc: &RddDocument) -> String {
    let mut out = String::new();
    let p = &doc.prefixes;
    for (name, ns) in p.iter() {
        let _ = writeln!(out, "PREFIX {name}: <{}>", ns.as_str());
    }
    if !p.is_empty() {
        out.push('\n');
    }
    let cs = &doc.class_section;
    let _ = writeln!(out, "{} CLASSES {{", wa(cs.is_owa));
    for cc in &cs.classes {
        out.push_str("  ");
        out.push_str(wa(cc.is_owa));
        if cc.is_singleton {
            out.push_str(" SINGLETON");
        }
        let _ = write!(out, " CLASS {}", iri(p, &cc.class));
        if !cc.sub_classes.is_empty() {
            let _ = write!(out, " SUBCLASS {}", iri_list(p, &cc.sub_classes, ", "));
        }
        out.push_str(" {\n");
        for key in &cc.keys {
            let props: Vec<String> = key.props.iter().map(|k| prop_with_range(p, &k.prop, k.range_type.as_ref())).collect();
            let _ = writeln!(out, "    KEY {} ;", props.join(", "));
        }
        for pc in &cc.qpcs {
            let _ = writeln!(out, "    {}", prop_constraint(p, pc));
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    let ps = &doc.prop_section;
    let _ = writeln!(out, "{} PROPERTIES {{", wa(ps.is_owa));
    for pc in &ps.upcs {
        let _ = writeln!(out, "  {}", prop_constraint(p, pc));
    }
    out.push_str("}\n");
    out
}

fn wa(is_owa: bool) -> &'static str {
    if is_owa {
        "OWA"
    } else {
        "CWA"
    }
}

fn iri(p: &Prefixes, iri: &Iri) -> String {
    p.compact(iri.as_str())
}

fn iri_list(p: &Prefixes, iris: &[Iri], sep: &str) -> String {
    iris.iter().map(|i| iri(p, i)).collect::<Vec<_>>().join(sep)
}

fn prop_with_range(p: &Prefixes, prop: &Iri, range_type: Option<&RangeType>) -> String {
    let mut out = iri(p, prop);
    if let Some(rt) = range_type {
        let _ = write!(out, " : {}", rt.kind.keyword());
        if let Some(dt) = &rt.datatype {
            let _ = write!(out, "({})", iri(p, dt));
        }
    }
    out
}

fn atom(p: &Prefixes, atom: &ConstraintAtom) -> String {
    match atom {
        ConstraintAtom::Min(n) => alloc::format!("MIN({n})"),
        ConstraintAtom::Max(n) => alloc::format!("MAX({n})"),
        ConstraintAtom::Domain(c) => alloc::format!("DOMAIN({})", iri(p, c)),
        ConstraintAtom::Range(c) => alloc::format!("RANGE({})", iri(p, c)),
        ConstraintAtom::Path(seq) => alloc::format!("PATH({})", iri_list(p, seq, "/")),
        ConstraintAtom::SubProperty(subs) => alloc::format!("SUBPROPERTY({})", iri_list(p, subs, ", ")),
        ConstraintAtom::Partial => "PARTIAL".into(),
        ConstraintAtom::Total => "TOTAL".into(),
    }
}

fn prop_constraint(p: &Prefixes, pc: &PropConstraint) -> String {
    let mut out = String::new();
    if !pc.constraints.is_empty() {
        let atoms: Vec<String> = pc.constraints.iter().map(|a| atom(p, a)).collect();
        out.push_str(&atoms.join(", "));
        out.push(' ');
    }
    out.push_str(&prop_with_range(p, &pc.prop, pc.range_type.as_ref()));
    out.push_str(" ;");
    out
}
