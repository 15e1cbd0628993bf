//! RDF terms, triples and the indexed dataset constraints are evaluated on.

mod dataset;
mod ntriples;
mod term;

pub use dataset::{Dataset, DatasetBuilder, IdTriple, TermId, UnaryRelation};
pub use ntriples::{parse_ntriples, parse_triples, NTriplesError, NTriplesErrorKind};
pub use term::{Literal, Term, Triple};
