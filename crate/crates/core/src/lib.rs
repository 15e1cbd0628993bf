//! RDF Data Descriptions: a constraint language for RDF instance data.
//!
//! The crate is `no_std` (it needs `alloc`) and contains the whole pipeline:
//!
//! - [`store`]: terms, triples and an indexed, immutable [`Dataset`] loaded
//!   from N-Triples;
//! - [`syntax`]: the RDD document grammar, its AST and a canonical printer;
//! - [`env`]: the subclass / subproperty / class-property environment;
//! - [`compile`]: translation of a document into first-order constraints;
//! - [`check`]: a naive reference evaluator and an index-backed evaluator
//!   producing witness-level violation reports;
//! - [`sparql`]: violation-positive SPARQL `ASK` queries, one per constraint.
//!
//! IO, the command line, JSON reports and the SPARQL protocol client live in
//! the companion `rdd` crate.

#![no_std]

extern crate alloc;

pub mod check;
pub mod compile;
pub mod env;
mod iri;
pub mod sparql;
pub mod store;
pub mod syntax;

pub use check::{check, evaluate_constraint, CheckOptions, Mode, Report, Stats, Violation};
pub use compile::{compile, Constraint, ConstraintKind, ConstraintSet};
pub use env::{build_environment, Environment};
pub use iri::{vocab, Iri, Prefixes};
pub use store::{parse_ntriples, Dataset, Term, Triple, UnaryRelation};
pub use syntax::{parse_rdd, pretty_print, RddDocument};
