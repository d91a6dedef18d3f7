//! Generic entity-relationship meta-model: schemas with binary
//! associations and `(min, max)` role cardinalities, extensional
//! instances, and participation validation.

mod error;
mod instance;
mod schema;
mod validate;

pub use error::ErError;
pub use instance::{EntityInstance, EntityRef, ErInstance, Link};
pub use schema::{
    validate_schema, AssociationDef, AttributeDef, AttributeKind, Cardinality, EntityTypeDef,
    ErSchema, MaxCardinality, RoleDef, Side, ValueDomain,
};
pub use validate::{check_cardinalities, Violation, ViolationKind, ViolationReport};
