use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use super::error::ErError;
use super::schema::{AttributeKind, EntityTypeDef, ErSchema, Side, ValueDomain};
use crate::text::{check_id, nfc};

/// `(type name, id)`; orders by type first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EntityRef {
    pub type_name: String,
    pub id: String,
}

impl EntityRef {
    pub fn new(type_name: impl Into<String>, id: impl Into<String>) -> Self {
        EntityRef {
            type_name: type_name.into(),
            id: id.into(),
        }
    }
}

impl fmt::Display for EntityRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.type_name, self.id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntityInstance {
    pub type_name: String,
    pub id: String,
    /// Non-identifier attribute values, NFC-normalized.
    pub attrs: BTreeMap<String, String>,
}

impl EntityInstance {
    pub fn key(&self) -> EntityRef {
        EntityRef::new(&self.type_name, &self.id)
    }

    pub fn attr(&self, name: &str) -> Option<&str> {
        self.attrs.get(name).map(String::as_str)
    }
}

/// One pair of an association. `from` plays the association's first role,
/// `to` the second. Field order gives the canonical `(assoc, from, to)` sort.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Link {
    pub association: String,
    pub from: String,
    pub to: String,
}

impl Link {
    pub fn new(association: impl Into<String>, from: impl Into<String>, to: impl Into<String>) -> Self {
        Link {
            association: association.into(),
            from: from.into(),
            to: to.into(),
        }
    }

    pub fn endpoint(&self, side: Side) -> &str {
        match side {
            Side::First => &self.from,
            Side::Second => &self.to,
        }
    }
}

impl fmt::Display for Link {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, {})", self.association, self.from, self.to)
    }
}

/// An extensional population of an [`ErSchema`].
///
/// Mutations either succeed completely or leave the instance untouched.
/// Cardinalities are not enforced on mutation; run
/// [`check_cardinalities`](super::check_cardinalities) on a complete state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErInstance {
    schema: Arc<ErSchema>,
    entities: BTreeMap<EntityRef, EntityInstance>,
    links: BTreeSet<Link>,
}

impl ErInstance {
    /// An empty population of a well-formed schema.
    pub fn new(schema: Arc<ErSchema>) -> Result<Self, ErError> {
        let errors = schema.validate();
        if !errors.is_empty() {
            return Err(ErError::InvalidSchema(errors));
        }
        Ok(Self::empty(schema))
    }

    pub(crate) fn empty(schema: Arc<ErSchema>) -> Self {
        ErInstance {
            schema,
            entities: BTreeMap::new(),
            links: BTreeSet::new(),
        }
    }

    pub fn schema(&self) -> &ErSchema {
        &self.schema
    }

    pub fn schema_arc(&self) -> &Arc<ErSchema> {
        &self.schema
    }

    /// All entities in `(type, id)` order.
    pub fn entities(&self) -> impl Iterator<Item = &EntityInstance> {
        self.entities.values()
    }

    pub fn entities_of<'a>(&'a self, type_name: &'a str) -> impl Iterator<Item = &'a EntityInstance> + 'a {
        self.entities
            .range(EntityRef::new(type_name, "")..)
            .take_while(move |(k, _)| k.type_name == type_name)
            .map(|(_, e)| e)
    }

    pub fn entity(&self, type_name: &str, id: &str) -> Option<&EntityInstance> {
        self.entities.get(&EntityRef::new(type_name, id))
    }

    pub fn contains(&self, type_name: &str, id: &str) -> bool {
        self.entity(type_name, id).is_some()
    }

    /// All links in `(assoc, from, to)` order.
    pub fn links(&self) -> impl Iterator<Item = &Link> {
        self.links.iter()
    }

    pub fn links_of<'a>(&'a self, association: &'a str) -> impl Iterator<Item = &'a Link> + 'a {
        self.links
            .range(Link::new(association, "", "")..)
            .take_while(move |l| l.association == association)
    }

    pub fn has_link(&self, association: &str, from: &str, to: &str) -> bool {
        self.links.contains(&Link::new(association, from, to))
    }

    pub fn entity_count(&self) -> usize {
        self.entities.len()
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entities.is_empty() && self.links.is_empty()
    }

    pub fn add_entity<I, K, V>(&mut self, type_name: &str, id: &str, attrs: I) -> Result<(), ErError>
    where
        I: IntoIterator<Item = (K, V)>,
        K: Into<String>,
        V: AsRef<str>,
    {
        let def = self
            .schema
            .entity_type(type_name)
            .ok_or_else(|| ErError::UnknownType(type_name.to_owned()))?;
        let id = nfc(id);
        check_id(&id).map_err(|reason| ErError::InvalidId {
            id: id.clone(),
            reason,
        })?;
        let attrs: BTreeMap<String, String> = attrs
            .into_iter()
            .map(|(k, v)| (k.into(), nfc(v.as_ref())))
            .collect();
        if let Some(err) = attribute_problems(def, &id, &attrs).into_iter().next() {
            return Err(err);
        }
        let key = EntityRef::new(type_name, &id);
        if self.entities.contains_key(&key) {
            return Err(ErError::DuplicateId {
                type_name: type_name.to_owned(),
                id,
            });
        }
        self.entities.insert(
            key,
            EntityInstance {
                type_name: type_name.to_owned(),
                id,
                attrs,
            },
        );
        Ok(())
    }

    /// Adds `association(id1, id2)`, `id1` under the first role's entity
    /// type and `id2` under the second's.
    pub fn add_link(&mut self, association: &str, id1: &str, id2: &str) -> Result<(), ErError> {
        let assoc = self
            .schema
            .association(association)
            .ok_or_else(|| ErError::UnknownAssociation(association.to_owned()))?;
        let (id1, id2) = (nfc(id1), nfc(id2));
        for (side, id) in [(Side::First, &id1), (Side::Second, &id2)] {
            let ty = &assoc.role(side).entity_type;
            if !self.contains(ty, id) {
                return Err(ErError::DanglingEndpoint {
                    association: association.to_owned(),
                    type_name: ty.clone(),
                    id: id.clone(),
                });
            }
        }
        let link = Link::new(association, id1, id2);
        if self.links.contains(&link) {
            return Err(ErError::DuplicateLink {
                association: link.association,
                from: link.from,
                to: link.to,
            });
        }
        self.links.insert(link);
        Ok(())
    }

    /// Rejected while any link references the entity; there is no cascade.
    pub fn remove_entity(&mut self, type_name: &str, id: &str) -> Result<EntityInstance, ErError> {
        let key = EntityRef::new(type_name, nfc(id));
        if !self.entities.contains_key(&key) {
            return Err(ErError::EntityNotFound {
                type_name: key.type_name,
                id: key.id,
            });
        }
        let referencing = self
            .links
            .iter()
            .filter(|l| self.link_touches(l, &key))
            .count();
        if referencing > 0 {
            return Err(ErError::EntityStillLinked {
                type_name: key.type_name,
                id: key.id,
                links: referencing,
            });
        }
        Ok(self.entities.remove(&key).expect("presence checked above"))
    }

    pub fn remove_link(&mut self, association: &str, id1: &str, id2: &str) -> Result<(), ErError> {
        let link = Link::new(association, nfc(id1), nfc(id2));
        if self.links.remove(&link) {
            Ok(())
        } else {
            Err(ErError::LinkNotFound {
                association: link.association,
                from: link.from,
                to: link.to,
            })
        }
    }

    /// Number of links of `association` in which the entity occupies `role`.
    pub fn participation_count(
        &self,
        type_name: &str,
        id: &str,
        association: &str,
        role: &str,
    ) -> Result<usize, ErError> {
        let assoc = self
            .schema
            .association(association)
            .ok_or_else(|| ErError::UnknownAssociation(association.to_owned()))?;
        let (side, role_def) = assoc.role_named(role).ok_or_else(|| ErError::UnknownRole {
            association: association.to_owned(),
            role: role.to_owned(),
        })?;
        if self.schema.entity_type(type_name).is_none() {
            return Err(ErError::UnknownType(type_name.to_owned()));
        }
        if role_def.entity_type != type_name {
            return Err(ErError::UnknownRole {
                association: association.to_owned(),
                role: format!("{role} for entity type {type_name}"),
            });
        }
        let id = nfc(id);
        if !self.contains(type_name, &id) {
            return Err(ErError::EntityNotFound {
                type_name: type_name.to_owned(),
                id,
            });
        }
        Ok(self
            .links_of(association)
            .filter(|l| l.endpoint(side) == id)
            .count())
    }

    /// Copy holding only entities of `types` and links of `associations`
    /// whose endpoint types are both in `types`.
    pub fn restrict(&self, types: &BTreeSet<String>, associations: &BTreeSet<String>) -> ErInstance {
        let entities = self
            .entities
            .iter()
            .filter(|(k, _)| types.contains(&k.type_name))
            .map(|(k, e)| (k.clone(), e.clone()))
            .collect();
        let links = self
            .links
            .iter()
            .filter(|l| {
                associations.contains(&l.association)
                    && self.schema.association(&l.association).is_some_and(|a| {
                        types.contains(&a.role1.entity_type) && types.contains(&a.role2.entity_type)
                    })
            })
            .cloned()
            .collect();
        ErInstance {
            schema: Arc::clone(&self.schema),
            entities,
            links,
        }
    }

    /// Copy without the links matching `drop`.
    pub fn without_links(&self, mut drop: impl FnMut(&Link) -> bool) -> ErInstance {
        ErInstance {
            schema: Arc::clone(&self.schema),
            entities: self.entities.clone(),
            links: self.links.iter().filter(|l| !drop(l)).cloned().collect(),
        }
    }

    /// Copy without the entities matching `drop`. Links are kept as-is, so
    /// callers must drop referencing links themselves.
    pub fn without_entities(&self, mut drop: impl FnMut(&EntityInstance) -> bool) -> ErInstance {
        ErInstance {
            schema: Arc::clone(&self.schema),
            entities: self
                .entities
                .iter()
                .filter(|(_, e)| !drop(e))
                .map(|(k, e)| (k.clone(), e.clone()))
                .collect(),
            links: self.links.clone(),
        }
    }

    fn link_touches(&self, link: &Link, key: &EntityRef) -> bool {
        self.schema.association(&link.association).is_some_and(|a| {
            a.roles()
                .any(|(side, r)| r.entity_type == key.type_name && link.endpoint(side) == key.id)
        })
    }

    /// Inserts without any checks. Used by file ingestion, which reports
    /// problems through validation instead of rejecting them.
    pub(crate) fn insert_unchecked(&mut self, entity: EntityInstance) -> Option<EntityInstance> {
        self.entities.insert(entity.key(), entity)
    }

    pub(crate) fn insert_link_unchecked(&mut self, link: Link) -> bool {
        self.links.insert(link)
    }
}

/// Every way `attrs` breaks the attribute invariants of `def`.
pub(crate) fn attribute_problems(
    def: &EntityTypeDef,
    id: &str,
    attrs: &BTreeMap<String, String>,
) -> Vec<ErError> {
    let mut problems = Vec::new();
    for (name, value) in attrs {
        match def.attr(name) {
            None => problems.push(ErError::UnknownAttribute {
                type_name: def.name.clone(),
                attribute: name.clone(),
            }),
            Some(a) if a.kind == AttributeKind::Identifier => {
                problems.push(ErError::IdentifierInAttributes {
                    type_name: def.name.clone(),
                    id: id.to_owned(),
                    attribute: name.clone(),
                })
            }
            Some(a) => {
                if let ValueDomain::Enumeration(allowed) = &a.domain {
                    if !a.domain.admits(value) {
                        problems.push(ErError::ValueOutsideDomain {
                            type_name: def.name.clone(),
                            attribute: name.clone(),
                            value: value.clone(),
                            allowed: allowed.clone(),
                        });
                    }
                }
            }
        }
    }
    for a in def.attributes.iter().filter(|a| a.kind == AttributeKind::Required) {
        if !attrs.contains_key(&a.name) {
            problems.push(ErError::MissingAttribute {
                type_name: def.name.clone(),
                id: id.to_owned(),
                attribute: a.name.clone(),
            });
        }
    }
    problems
}
