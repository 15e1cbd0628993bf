//! Writing the ASK queries of a constraint set to a directory.

use std::fs;
use std::io;
use std::path::Path;

use rdd_core::sparql::{bundle, AskQuery};
use rdd_core::ConstraintSet;
use serde_json::json;

pub const MANIFEST: &str = "manifest.json";

/// Writes `<id>.rq` per constraint and a `manifest.json` mapping each file
/// to its constraint. Returns the queries written.
pub fn write_bundle(set: &ConstraintSet, dir: &Path) -> io::Result<Vec<AskQuery>> {
    fs::create_dir_all(dir)?;
    let queries = bundle(set);
    let mut entries = Vec::with_capacity(queries.len());
    for (q, c) in queries.iter().zip(set.iter()) {
        let file = format!("{}.rq", q.id);
        fs::write(dir.join(&file), format!("{}\n", q.text))?;
        entries.push(json!({
            "file": file,
            "id": q.id,
            "kind": c.kind.name(),
            "qualifier": c.qualifier.as_ref().map(|i| i.as_str()),
            "fol": c.fol_text,
            "violated_when": q.violated_when,
        }));
    }
    let manifest = serde_json::to_string_pretty(&json!({ "queries": entries }))?;
    fs::write(dir.join(MANIFEST), manifest + "\n")?;
    Ok(queries)
}
