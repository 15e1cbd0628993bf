//! Loading RDD documents and N-Triples files from disk or stdin.

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};

use rdd_core::env::CycleError;
use rdd_core::store::{parse_triples, DatasetBuilder, NTriplesError};
use rdd_core::syntax::{parse_rdd_with_prefixes, ParseError};
use rdd_core::{build_environment, compile, ConstraintSet, Dataset, Environment, Prefixes, RddDocument};

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}:{source}", path.display())]
    Rdd { path: PathBuf, source: ParseError },
    #[error("{}: {source}", path.display())]
    Cycle { path: PathBuf, source: CycleError },
    #[error("{}: {source}", path.display())]
    NTriples { path: PathBuf, source: NTriplesError },
}

/// A parsed and compiled document.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub path: PathBuf,
    pub doc: RddDocument,
    pub env: Environment,
    pub constraints: ConstraintSet,
}

fn read(path: &Path) -> Result<String, InputError> {
    let io = |source| InputError::Io { path: path.to_owned(), source };
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(io)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(io)
    }
}

pub fn parse_rdd_file(path: &Path, well_known_prefixes: bool) -> Result<RddDocument, InputError> {
    let text = read(path)?;
    let prelude = if well_known_prefixes { Prefixes::well_known() } else { Prefixes::new() };
    parse_rdd_with_prefixes(&text, prelude).map_err(|source| InputError::Rdd { path: path.to_owned(), source })
}

pub fn load_rdd(path: &Path, well_known_prefixes: bool) -> Result<Loaded, InputError> {
    let doc = parse_rdd_file(path, well_known_prefixes)?;
    let env = build_environment(&doc).map_err(|source| InputError::Cycle { path: path.to_owned(), source })?;
    let constraints = compile(&doc, &env);
    Ok(Loaded { path: path.to_owned(), doc, env, constraints })
}

/// Merges the files into one dataset; blank nodes from different files
/// never collide. `-` reads stdin.
pub fn load_data(paths: &[PathBuf]) -> Result<Dataset, InputError> {
    let mut builder = DatasetBuilder::new();
    for path in paths {
        let text = read(path)?;
        let triples = parse_triples(&text).map_err(|source| InputError::NTriples { path: path.clone(), source })?;
        builder.add_document(triples);
    }
    Ok(builder.build())
}
