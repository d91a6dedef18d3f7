use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, LazyLock};

use crate::er::{
    AssociationDef, AttributeKind, Cardinality, EntityTypeDef, ErSchema, RoleDef, ValueDomain,
};

pub const SCHEMA_NAME: &str = "unified-terminology";
pub const SCHEMA_VERSION: &str = "1";

/// Entity type names.
pub mod ty {
    pub const CONCEPT: &str = "Concept";
    pub const TERM: &str = "Term";
    pub const CHARACTERISTIC: &str = "Characteristic";
    pub const TEXT_SOURCE: &str = "TextSource";
    pub const COLLECTION: &str = "Collection";
    pub const FRAME: &str = "Frame";
    pub const FRAME_ELEMENT: &str = "FrameElement";
}

/// Association names.
pub mod assoc {
    pub const DENOTED: &str = "Denoted";
    pub const HIERARCHICAL: &str = "Hierarchical";
    pub const GENERIC: &str = "Generic";
    pub const DELINEATED: &str = "Delineated";
    pub const GROUP: &str = "Group";
    pub const OCCURS_IN: &str = "OccursIn";
    pub const PART_OF_COLLECTION: &str = "PartOfCollection";
    pub const CONNECTED_TO: &str = "ConnectedTo";
    pub const CONSISTS_OF: &str = "ConsistsOf";
    pub const IS_A: &str = "IsA";
    pub const EVOKES: &str = "Evokes";
    pub const HAS_ELEMENT: &str = "HasElement";
    pub const FILLED_BY: &str = "FilledBy";
}

/// Role names referenced by validation and queries.
pub mod role {
    pub const DENOTING_CONCEPT: &str = "denoting-concept";
    pub const DENOTED_TERM: &str = "denoted-term";
    pub const SUPERORDINATE: &str = "superordinate";
    pub const SUBORDINATE: &str = "subordinate";
    pub const GROUPING_TYPE: &str = "grouping-type";
    pub const GROUPED_MEMBER: &str = "grouped-member";
    pub const MEMBER_TEXT: &str = "member-text";
}

/// Characteristic varieties. Only `Type` characteristics group others.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variety {
    Type,
    Essential,
    NonEssential,
    Delimiting,
}

impl Variety {
    pub const ALL: [Variety; 4] = [
        Variety::Type,
        Variety::Essential,
        Variety::NonEssential,
        Variety::Delimiting,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Variety::Type => "type",
            Variety::Essential => "essential",
            Variety::NonEssential => "non-essential",
            Variety::Delimiting => "delimiting",
        }
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variety {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variety::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| format!("unknown characteristic variety '{s}'"))
    }
}

/// The three concept-map relation kinds of term-first work.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConceptRelation {
    ConnectedTo,
    ConsistsOf,
    IsA,
}

impl ConceptRelation {
    pub fn association(&self) -> &'static str {
        match self {
            ConceptRelation::ConnectedTo => assoc::CONNECTED_TO,
            ConceptRelation::ConsistsOf => assoc::CONSISTS_OF,
            ConceptRelation::IsA => assoc::IS_A,
        }
    }
}

static SCHEMA: LazyLock<Arc<ErSchema>> = LazyLock::new(|| Arc::new(build()));

/// The unified terminology schema. Always well-formed.
pub fn terminology_schema() -> Arc<ErSchema> {
    Arc::clone(&SCHEMA)
}

pub fn is_terminology_schema(schema: &ErSchema) -> bool {
    std::ptr::eq(schema, &**SCHEMA) || *schema == **SCHEMA
}

fn build() -> ErSchema {
    use assoc::*;
    use ty::*;

    let any = Cardinality::any;
    let relation = |name: &str| {
        AssociationDef::new(
            name,
            RoleDef::new("relation-source", CONCEPT, any()),
            RoleDef::new("relation-target", CONCEPT, any()),
        )
    };
    let varieties = Variety::ALL.iter().map(|v| v.as_str().to_owned()).collect();

    ErSchema::new(SCHEMA_NAME, SCHEMA_VERSION)
        .with_entity(EntityTypeDef::new(CONCEPT).identifier("id"))
        .with_entity(
            EntityTypeDef::new(TERM)
                .identifier("id")
                .required("designation")
                .required("language")
                .optional("definition"),
        )
        .with_entity(EntityTypeDef::new(CHARACTERISTIC).identifier("name").attribute(
            "variety",
            AttributeKind::Required,
            ValueDomain::Enumeration(varieties),
        ))
        .with_entity(EntityTypeDef::new(TEXT_SOURCE).identifier("id").optional("title"))
        .with_entity(EntityTypeDef::new(COLLECTION).identifier("id").optional("name"))
        .with_entity(EntityTypeDef::new(FRAME).identifier("id").required("name"))
        .with_entity(EntityTypeDef::new(FRAME_ELEMENT).identifier("id").required("name"))
        .with_association(AssociationDef::new(
            DENOTED,
            RoleDef::new(role::DENOTING_CONCEPT, CONCEPT, Cardinality::at_least(1)),
            RoleDef::new(role::DENOTED_TERM, TERM, Cardinality::new(1, 1)),
        ))
        .with_association(AssociationDef::new(
            HIERARCHICAL,
            RoleDef::new(role::SUPERORDINATE, CONCEPT, any()),
            RoleDef::new(role::SUBORDINATE, CONCEPT, Cardinality::new(0, 1)),
        ))
        .with_association(AssociationDef::new(
            GENERIC,
            RoleDef::new("generic-source", CONCEPT, any()),
            RoleDef::new("generic-target", CONCEPT, any()),
        ))
        .with_association(AssociationDef::new(
            DELINEATED,
            RoleDef::new("delineated-concept", CONCEPT, any()),
            RoleDef::new("delineating-characteristic", CHARACTERISTIC, any()),
        ))
        .with_association(AssociationDef::new(
            GROUP,
            RoleDef::new(role::GROUPING_TYPE, CHARACTERISTIC, any()),
            RoleDef::new(role::GROUPED_MEMBER, CHARACTERISTIC, any()),
        ))
        .with_association(AssociationDef::new(
            OCCURS_IN,
            RoleDef::new("occurring-term", TERM, any()),
            RoleDef::new("source-text", TEXT_SOURCE, any()),
        ))
        .with_association(AssociationDef::new(
            PART_OF_COLLECTION,
            RoleDef::new(role::MEMBER_TEXT, TEXT_SOURCE, Cardinality::new(1, 1)),
            RoleDef::new("holding-collection", COLLECTION, any()),
        ))
        .with_association(relation(CONNECTED_TO))
        .with_association(relation(CONSISTS_OF))
        .with_association(relation(IS_A))
        .with_association(AssociationDef::new(
            EVOKES,
            RoleDef::new("evoking-term", TERM, any()),
            RoleDef::new("evoked-frame", FRAME, any()),
        ))
        .with_association(AssociationDef::new(
            HAS_ELEMENT,
            RoleDef::new("owning-frame", FRAME, any()),
            RoleDef::new("element", FRAME_ELEMENT, Cardinality::new(1, 1)),
        ))
        .with_association(AssociationDef::new(
            FILLED_BY,
            RoleDef::new("slot", FRAME_ELEMENT, any()),
            RoleDef::new("filler-term", TERM, any()),
        ))
}
