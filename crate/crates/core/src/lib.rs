//! A unified terminology data model built on a small entity-relationship
//! engine.
//!
//! - [`er`]: schemas, instances, cardinality validation
//! - [`termmodel`]: the fixed terminology schema, builders, approach views
//! - [`store`]: the canonical JSON store file
//! - [`tbx`], [`rdf`], [`ddl`]: exporters to TBX, N-Triples and SQL DDL

pub mod ddl;
pub mod er;
pub mod rdf;
pub mod store;
pub mod tbx;
pub mod termmodel;
pub mod text;

pub use er::{ErInstance, ErSchema, ViolationReport};
