use std::collections::BTreeSet;
use std::fmt;

/// Upper bound of a participation constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MaxCardinality {
    Bounded(u32),
    /// The `n` of `(1, n)`.
    Unbounded,
}

/// `(min, max)` bounds on how many links of an association an entity
/// instance may take part in through one role.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cardinality {
    pub min: u32,
    pub max: MaxCardinality,
}

impl Cardinality {
    pub const fn new(min: u32, max: u32) -> Self {
        Cardinality {
            min,
            max: MaxCardinality::Bounded(max),
        }
    }

    pub const fn at_least(min: u32) -> Self {
        Cardinality {
            min,
            max: MaxCardinality::Unbounded,
        }
    }

    /// `(0, n)`
    pub const fn any() -> Self {
        Self::at_least(0)
    }

    pub fn bounded_max(&self) -> Option<u32> {
        match self.max {
            MaxCardinality::Bounded(m) => Some(m),
            MaxCardinality::Unbounded => None,
        }
    }

    pub fn is_single(&self) -> bool {
        self.max == MaxCardinality::Bounded(1)
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.max {
            MaxCardinality::Bounded(m) => write!(f, "({}, {})", self.min, m),
            MaxCardinality::Unbounded => write!(f, "({}, n)", self.min),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AttributeKind {
    Identifier,
    Required,
    Optional,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ValueDomain {
    FreeText,
    Enumeration(Vec<String>),
}

impl ValueDomain {
    pub fn admits(&self, value: &str) -> bool {
        match self {
            ValueDomain::FreeText => true,
            ValueDomain::Enumeration(values) => values.iter().any(|v| v == value),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AttributeDef {
    pub name: String,
    pub kind: AttributeKind,
    pub domain: ValueDomain,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EntityTypeDef {
    pub name: String,
    pub attributes: Vec<AttributeDef>,
}

impl EntityTypeDef {
    pub fn new(name: impl Into<String>) -> Self {
        EntityTypeDef {
            name: name.into(),
            attributes: Vec::new(),
        }
    }

    pub fn attribute(
        mut self,
        name: impl Into<String>,
        kind: AttributeKind,
        domain: ValueDomain,
    ) -> Self {
        self.attributes.push(AttributeDef {
            name: name.into(),
            kind,
            domain,
        });
        self
    }

    pub fn identifier(self, name: impl Into<String>) -> Self {
        self.attribute(name, AttributeKind::Identifier, ValueDomain::FreeText)
    }

    pub fn required(self, name: impl Into<String>) -> Self {
        self.attribute(name, AttributeKind::Required, ValueDomain::FreeText)
    }

    pub fn optional(self, name: impl Into<String>) -> Self {
        self.attribute(name, AttributeKind::Optional, ValueDomain::FreeText)
    }

    /// The identifier attribute, if the type declares exactly one.
    pub fn identifier_attr(&self) -> Option<&AttributeDef> {
        let mut ids = self
            .attributes
            .iter()
            .filter(|a| a.kind == AttributeKind::Identifier);
        match (ids.next(), ids.next()) {
            (Some(id), None) => Some(id),
            _ => None,
        }
    }

    pub fn attr(&self, name: &str) -> Option<&AttributeDef> {
        self.attributes.iter().find(|a| a.name == name)
    }

    /// Non-identifier attributes in declaration order.
    pub fn value_attrs(&self) -> impl Iterator<Item = &AttributeDef> {
        self.attributes
            .iter()
            .filter(|a| a.kind != AttributeKind::Identifier)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RoleDef {
    pub name: String,
    pub entity_type: String,
    pub cardinality: Cardinality,
}

impl RoleDef {
    pub fn new(
        name: impl Into<String>,
        entity_type: impl Into<String>,
        cardinality: Cardinality,
    ) -> Self {
        RoleDef {
            name: name.into(),
            entity_type: entity_type.into(),
            cardinality,
        }
    }
}

/// Which end of a binary association a role sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    First,
    Second,
}

/// A binary association. Links bind their first endpoint to `role1` and
/// their second to `role2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AssociationDef {
    pub name: String,
    pub role1: RoleDef,
    pub role2: RoleDef,
}

impl AssociationDef {
    pub fn new(name: impl Into<String>, role1: RoleDef, role2: RoleDef) -> Self {
        AssociationDef {
            name: name.into(),
            role1,
            role2,
        }
    }

    pub fn role(&self, side: Side) -> &RoleDef {
        match side {
            Side::First => &self.role1,
            Side::Second => &self.role2,
        }
    }

    pub fn role_named(&self, name: &str) -> Option<(Side, &RoleDef)> {
        self.roles().find(|(_, r)| r.name == name)
    }

    pub fn roles(&self) -> impl Iterator<Item = (Side, &RoleDef)> {
        [(Side::First, &self.role1), (Side::Second, &self.role2)].into_iter()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ErSchema {
    pub name: String,
    pub version: String,
    pub entity_types: Vec<EntityTypeDef>,
    pub associations: Vec<AssociationDef>,
}

impl ErSchema {
    pub fn new(name: impl Into<String>, version: impl Into<String>) -> Self {
        ErSchema {
            name: name.into(),
            version: version.into(),
            entity_types: Vec::new(),
            associations: Vec::new(),
        }
    }

    pub fn with_entity(mut self, def: EntityTypeDef) -> Self {
        self.entity_types.push(def);
        self
    }

    pub fn with_association(mut self, def: AssociationDef) -> Self {
        self.associations.push(def);
        self
    }

    pub fn entity_type(&self, name: &str) -> Option<&EntityTypeDef> {
        self.entity_types.iter().find(|e| e.name == name)
    }

    pub fn association(&self, name: &str) -> Option<&AssociationDef> {
        self.associations.iter().find(|a| a.name == name)
    }

    /// Well-formedness check; empty means the schema can host instances.
    pub fn validate(&self) -> Vec<String> {
        validate_schema(self)
    }
}

/// Lists every broken schema invariant, one stable message each.
pub fn validate_schema(schema: &ErSchema) -> Vec<String> {
    let mut errors = Vec::new();
    let mut type_names = BTreeSet::new();

    for et in &schema.entity_types {
        if et.name.is_empty() {
            errors.push("entity type with empty name".to_owned());
        } else if !type_names.insert(et.name.as_str()) {
            errors.push(format!("duplicate entity type name '{}'", et.name));
        }

        let mut attr_names = BTreeSet::new();
        for attr in &et.attributes {
            if attr.name.is_empty() {
                errors.push(format!("entity type '{}': attribute with empty name", et.name));
            } else if !attr_names.insert(attr.name.as_str()) {
                errors.push(format!(
                    "entity type '{}': duplicate attribute '{}'",
                    et.name, attr.name
                ));
            }
            if let ValueDomain::Enumeration(values) = &attr.domain {
                if values.is_empty() {
                    errors.push(format!(
                        "entity type '{}': attribute '{}' has an empty enumeration",
                        et.name, attr.name
                    ));
                }
                let distinct: BTreeSet<_> = values.iter().collect();
                if distinct.len() != values.len() {
                    errors.push(format!(
                        "entity type '{}': attribute '{}' enumeration has duplicate values",
                        et.name, attr.name
                    ));
                }
            }
        }

        let ids = et
            .attributes
            .iter()
            .filter(|a| a.kind == AttributeKind::Identifier)
            .count();
        if ids != 1 {
            errors.push(format!(
                "entity type '{}': expected exactly one identifier attribute, found {ids}",
                et.name
            ));
        }
    }

    let mut assoc_names = BTreeSet::new();
    for assoc in &schema.associations {
        if assoc.name.is_empty() {
            errors.push("association with empty name".to_owned());
        } else if !assoc_names.insert(assoc.name.as_str()) {
            errors.push(format!("duplicate association name '{}'", assoc.name));
        }
        if type_names.contains(assoc.name.as_str()) {
            errors.push(format!(
                "association '{}' collides with an entity type name",
                assoc.name
            ));
        }
        if assoc.role1.name == assoc.role2.name {
            errors.push(format!(
                "association '{}': both roles are named '{}'",
                assoc.name, assoc.role1.name
            ));
        }
        for (_, role) in assoc.roles() {
            if role.name.is_empty() {
                errors.push(format!("association '{}': role with empty name", assoc.name));
            }
            if schema.entity_type(&role.entity_type).is_none() {
                errors.push(format!(
                    "association '{}': role '{}' targets unknown entity type '{}'",
                    assoc.name, role.name, role.entity_type
                ));
            }
            let card = role.cardinality;
            match card.max {
                MaxCardinality::Bounded(0) => errors.push(format!(
                    "association '{}': role '{}' has maximum cardinality 0",
                    assoc.name, role.name
                )),
                MaxCardinality::Bounded(max) if card.min > max => errors.push(format!(
                    "association '{}': role '{}' has min {} greater than max {}",
                    assoc.name, role.name, card.min, max
                )),
                _ => {}
            }
        }
    }

    errors
}
