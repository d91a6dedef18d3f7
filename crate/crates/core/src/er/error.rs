use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ErError {
    #[error("schema is ill-formed: {}", .0.join("; "))]
    InvalidSchema(Vec<String>),
    #[error("unknown entity type '{0}'")]
    UnknownType(String),
    #[error("unknown association '{0}'")]
    UnknownAssociation(String),
    #[error("association '{association}' has no role '{role}'")]
    UnknownRole { association: String, role: String },
    #[error("invalid identifier {id:?}: {reason}")]
    InvalidId { id: String, reason: String },
    #[error("duplicate identifier: {type_name} '{id}' already exists")]
    DuplicateId { type_name: String, id: String },
    #[error("{type_name} '{id}' is missing required attribute '{attribute}'")]
    MissingAttribute {
        type_name: String,
        id: String,
        attribute: String,
    },
    #[error("entity type '{type_name}' has no attribute '{attribute}'")]
    UnknownAttribute { type_name: String, attribute: String },
    #[error("{type_name} '{id}': the identifier '{attribute}' is carried by the id, not the attribute map")]
    IdentifierInAttributes {
        type_name: String,
        id: String,
        attribute: String,
    },
    #[error("value {value:?} of {type_name}.{attribute} is outside its enumeration {allowed:?}")]
    ValueOutsideDomain {
        type_name: String,
        attribute: String,
        value: String,
        allowed: Vec<String>,
    },
    #[error("{association}: endpoint {type_name} '{id}' does not exist")]
    DanglingEndpoint {
        association: String,
        type_name: String,
        id: String,
    },
    #[error("duplicate link {association}({from}, {to})")]
    DuplicateLink {
        association: String,
        from: String,
        to: String,
    },
    #[error("{type_name} '{id}' not found")]
    EntityNotFound { type_name: String, id: String },
    #[error("link {association}({from}, {to}) not found")]
    LinkNotFound {
        association: String,
        from: String,
        to: String,
    },
    #[error("{type_name} '{id}' is still referenced by {links} link(s)")]
    EntityStillLinked {
        type_name: String,
        id: String,
        links: usize,
    },
}
