//! JSON forms of reports and compiled constraint sets.
//!
//! The report layout is described by `schema/report.schema.json`.

use serde::Serialize;
use serde_json::{json, Map, Value};

use rdd_core::compile::Provenance;
use rdd_core::sparql::constraint_id;
use rdd_core::syntax::RangeType;
use rdd_core::{Constraint, ConstraintKind, ConstraintSet, Iri, Report, Violation};

/// The published report schema.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Debug, Serialize)]
pub struct JsonReport {
    pub consistent: bool,
    pub violations: Vec<JsonViolation>,
    pub stats: JsonStats,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<JsonQueryError>,
}

#[derive(Debug, Serialize)]
pub struct JsonViolation {
    pub kind: &'static str,
    pub qualifier: Option<String>,
    pub fol: String,
    pub provenance: JsonProvenance,
    /// Every derivation when rules produced the same constraint more than
    /// once; `provenance` is the first of them.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub merged: Vec<JsonProvenance>,
    pub witness: Map<String, Value>,
    pub message: String,
}

#[derive(Debug, Serialize)]
pub struct JsonProvenance {
    pub file: String,
    pub line: u32,
    pub col: u32,
    pub derivation: String,
}

#[derive(Debug, Serialize)]
pub struct JsonStats {
    pub constraints: usize,
    pub triples: usize,
    pub millis: u64,
}

#[derive(Debug, Serialize)]
pub struct JsonQueryError {
    pub query: String,
    pub message: String,
}

fn provenance(file: &str, p: &Provenance) -> JsonProvenance {
    JsonProvenance { file: file.to_owned(), line: p.loc.line, col: p.loc.column, derivation: p.derivation.clone() }
}

fn violation(file: &str, v: &Violation) -> JsonViolation {
    let c = &v.constraint;
    let first = c
        .provenance
        .first()
        .map(|p| provenance(file, p))
        .unwrap_or(JsonProvenance { file: file.to_owned(), line: 0, col: 0, derivation: String::new() });
    let merged = if c.provenance.len() > 1 { c.provenance.iter().map(|p| provenance(file, p)).collect() } else { Vec::new() };
    let witness = v.witness.iter().map(|(var, term)| (var.to_string(), Value::String(term.to_ntriples()))).collect();
    JsonViolation {
        kind: c.kind.name(),
        qualifier: c.qualifier.as_ref().map(|q| q.as_str().to_owned()),
        fol: c.fol_text.clone(),
        provenance: first,
        merged,
        witness,
        message: v.message.clone(),
    }
}

pub fn report(report: &Report, rdd_file: &str, errors: Vec<JsonQueryError>) -> JsonReport {
    JsonReport {
        consistent: report.consistent,
        violations: report.violations.iter().map(|v| violation(rdd_file, v)).collect(),
        stats: JsonStats {
            constraints: report.stats.constraints,
            triples: report.stats.triples,
            millis: report.stats.millis,
        },
        errors,
    }
}

fn iris(list: &[Iri]) -> Value {
    Value::Array(list.iter().map(|i| Value::String(i.as_str().to_owned())).collect())
}

fn range_type(rt: &RangeType) -> Value {
    json!({ "kind": rt.kind.keyword(), "datatype": rt.datatype.as_ref().map(|d| d.as_str()) })
}

/// Kind-specific parameters, keyed by name.
pub fn params(kind: &ConstraintKind) -> Value {
    match kind {
        ConstraintKind::RangeTypeC { prop, range } => json!({ "prop": prop.as_str(), "range": range_type(range) }),
        ConstraintKind::MinC { prop, n } | ConstraintKind::MaxC { prop, n } => json!({ "prop": prop.as_str(), "n": n }),
        ConstraintKind::DomainC { prop, class } | ConstraintKind::RangeC { prop, class } => {
            json!({ "prop": prop.as_str(), "class": class.as_str() })
        }
        ConstraintKind::PathC { prop, path } => json!({ "prop": prop.as_str(), "path": iris(path) }),
        ConstraintKind::SubPropC { super_prop, sub_prop } => {
            json!({ "super": super_prop.as_str(), "sub": sub_prop.as_str() })
        }
        ConstraintKind::PropClosure { props } => json!({ "props": iris(props) }),
        ConstraintKind::ClassClosure { classes } => json!({ "classes": iris(classes) }),
        ConstraintKind::SingletonExists { class } | ConstraintKind::SingletonUnique { class } => {
            json!({ "class": class.as_str() })
        }
        ConstraintKind::KeyC { class, props } => json!({ "class": class.as_str(), "props": iris(props) }),
    }
}

fn constraint(index: usize, c: &Constraint, file: &str) -> Value {
    json!({
        "id": constraint_id(index),
        "kind": c.kind.name(),
        "qualifier": c.qualifier.as_ref().map(|q| q.as_str()),
        "params": params(&c.kind),
        "fol": c.fol_text,
        "provenance": c.provenance.iter().map(|p| provenance(file, p)).collect::<Vec<_>>(),
    })
}

/// The compiled set as a JSON array, one object per constraint.
pub fn constraints(set: &ConstraintSet, file: &str) -> Value {
    Value::Array(set.iter().enumerate().map(|(i, c)| constraint(i, c, file)).collect())
}
