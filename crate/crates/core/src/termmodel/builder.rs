use std::collections::{BTreeSet, VecDeque};
use std::ops::Deref;

use thiserror::Error;

use super::schema::{assoc, is_terminology_schema, terminology_schema, ty, ConceptRelation, Variety};
use crate::er::{ErError, ErInstance};
use crate::text::nfc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error(transparent)]
    Er(#[from] ErError),
    #[error("instance does not use the unified terminology schema (found {0})")]
    WrongSchema(String),
    #[error("term '{term}' already denotes concept '{concept}'")]
    TermAlreadyAssigned { term: String, concept: String },
    #[error("concept '{child}' already has superordinate '{parent}'")]
    AlreadyHasSuperordinate { child: String, parent: String },
    #[error("making '{parent}' the superordinate of '{child}' would create a cycle")]
    CycleDetected { child: String, parent: String },
    #[error("concept '{0}' cannot be its own superordinate")]
    SelfLink(String),
    #[error("characteristic '{name}' has variety {variety}; only type characteristics group others")]
    NotATypeCharacteristic { name: String, variety: String },
    #[error("characteristic '{0}' cannot group itself")]
    SelfGroup(String),
    #[error("invalid language tag {0:?}: expected ASCII letters, digits and hyphens")]
    InvalidLanguage(String),
    #[error("characteristic name {0:?} must not contain ':'")]
    InvalidCharacteristicName(String),
    #[error("{type_name} '{id}' not found")]
    NotFound { type_name: String, id: String },
}

pub(crate) fn check_language(tag: &str) -> Result<(), TermError> {
    let ok = !tag.is_empty() && tag.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'-');
    if ok {
        Ok(())
    } else {
        Err(TermError::InvalidLanguage(tag.to_owned()))
    }
}

pub(crate) fn check_characteristic_name(name: &str) -> Result<(), TermError> {
    if name.contains(':') {
        Err(TermError::InvalidCharacteristicName(name.to_owned()))
    } else {
        Ok(())
    }
}

pub(crate) fn ensure_schema(instance: &ErInstance) -> Result<(), TermError> {
    if is_terminology_schema(instance.schema()) {
        Ok(())
    } else {
        let s = instance.schema();
        Err(TermError::WrongSchema(format!("{} v{}", s.name, s.version)))
    }
}

/// An [`ErInstance`] of the terminology schema, mutated only through
/// builders that apply the termbase rules eagerly: one concept per term,
/// at most one superordinate, no hierarchy cycles, grouping only under
/// type characteristics.
///
/// Reads go through `Deref` to the underlying instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Termbase {
    inner: ErInstance,
}

impl Default for Termbase {
    fn default() -> Self {
        Self::new()
    }
}

impl Deref for Termbase {
    type Target = ErInstance;

    fn deref(&self) -> &ErInstance {
        &self.inner
    }
}

impl TryFrom<ErInstance> for Termbase {
    type Error = TermError;

    fn try_from(inner: ErInstance) -> Result<Self, TermError> {
        ensure_schema(&inner)?;
        Ok(Termbase { inner })
    }
}

impl From<Termbase> for ErInstance {
    fn from(tb: Termbase) -> ErInstance {
        tb.inner
    }
}

impl Termbase {
    pub fn new() -> Self {
        Termbase {
            inner: ErInstance::new(terminology_schema()).expect("terminology schema is well-formed"),
        }
    }

    pub fn instance(&self) -> &ErInstance {
        &self.inner
    }

    pub fn into_instance(self) -> ErInstance {
        self.inner
    }

    pub fn add_concept(&mut self, id: &str) -> Result<(), TermError> {
        self.inner.add_entity(ty::CONCEPT, id, NO_ATTRS)?;
        Ok(())
    }

    pub fn add_term(
        &mut self,
        id: &str,
        designation: &str,
        language: &str,
        definition: Option<&str>,
    ) -> Result<(), TermError> {
        check_language(language)?;
        let mut attrs = vec![("designation", designation), ("language", language)];
        if let Some(def) = definition {
            attrs.push(("definition", def));
        }
        self.inner.add_entity(ty::TERM, id, attrs)?;
        Ok(())
    }

    pub fn add_characteristic(&mut self, name: &str, variety: Variety) -> Result<(), TermError> {
        check_characteristic_name(name)?;
        self.inner
            .add_entity(ty::CHARACTERISTIC, name, [("variety", variety.as_str())])?;
        Ok(())
    }

    pub fn add_text_source(&mut self, id: &str, title: Option<&str>) -> Result<(), TermError> {
        self.inner
            .add_entity(ty::TEXT_SOURCE, id, title.map(|t| ("title", t)))?;
        Ok(())
    }

    pub fn add_collection(&mut self, id: &str, name: Option<&str>) -> Result<(), TermError> {
        self.inner
            .add_entity(ty::COLLECTION, id, name.map(|n| ("name", n)))?;
        Ok(())
    }

    pub fn add_frame(&mut self, id: &str, name: &str) -> Result<(), TermError> {
        self.inner.add_entity(ty::FRAME, id, [("name", name)])?;
        Ok(())
    }

    pub fn add_frame_element(&mut self, id: &str, name: &str) -> Result<(), TermError> {
        self.inner.add_entity(ty::FRAME_ELEMENT, id, [("name", name)])?;
        Ok(())
    }

    /// Links `term` to `concept`. A term already denoting any concept is
    /// rejected here rather than at validation time.
    pub fn denote(&mut self, concept: &str, term: &str) -> Result<(), TermError> {
        let term_n = nfc(term);
        if let Some(existing) = self
            .inner
            .links_of(assoc::DENOTED)
            .find(|l| l.to == term_n)
        {
            // a dangling concept id is still reported as dangling first
            if self.inner.contains(ty::CONCEPT, &nfc(concept)) {
                return Err(TermError::TermAlreadyAssigned {
                    term: term_n,
                    concept: existing.from.clone(),
                });
            }
        }
        self.inner.add_link(assoc::DENOTED, concept, term)?;
        Ok(())
    }

    /// Makes `parent` the superordinate of `child`.
    pub fn set_superordinate(&mut self, child: &str, parent: &str) -> Result<(), TermError> {
        let (child, parent) = (nfc(child), nfc(parent));
        for id in [&child, &parent] {
            self.require(ty::CONCEPT, id)?;
        }
        if child == parent {
            return Err(TermError::SelfLink(child));
        }
        if let Some(existing) = self.superordinates(&child).into_iter().next() {
            return Err(TermError::AlreadyHasSuperordinate {
                child,
                parent: existing,
            });
        }
        if self.ancestors(&parent).contains(&child) {
            return Err(TermError::CycleDetected { child, parent });
        }
        self.inner.add_link(assoc::HIERARCHICAL, &parent, &child)?;
        Ok(())
    }

    pub fn add_generic(&mut self, source: &str, target: &str) -> Result<(), TermError> {
        self.inner.add_link(assoc::GENERIC, source, target)?;
        Ok(())
    }

    pub fn add_characteristic_to_concept(
        &mut self,
        concept: &str,
        characteristic: &str,
    ) -> Result<(), TermError> {
        self.inner.add_link(assoc::DELINEATED, concept, characteristic)?;
        Ok(())
    }

    /// Puts `member` into the group of the type characteristic `group`.
    /// A member may belong to several groups.
    pub fn group_characteristic(&mut self, group: &str, member: &str) -> Result<(), TermError> {
        let (group, member) = (nfc(group), nfc(member));
        for id in [&group, &member] {
            self.require(ty::CHARACTERISTIC, id)?;
        }
        let variety = self
            .inner
            .entity(ty::CHARACTERISTIC, &group)
            .and_then(|e| e.attr("variety"))
            .unwrap_or_default();
        if variety != Variety::Type.as_str() {
            return Err(TermError::NotATypeCharacteristic {
                name: group,
                variety: variety.to_owned(),
            });
        }
        if group == member {
            return Err(TermError::SelfGroup(group));
        }
        self.inner.add_link(assoc::GROUP, &group, &member)?;
        Ok(())
    }

    pub fn occurs_in(&mut self, term: &str, text: &str) -> Result<(), TermError> {
        self.inner.add_link(assoc::OCCURS_IN, term, text)?;
        Ok(())
    }

    pub fn part_of_collection(&mut self, text: &str, collection: &str) -> Result<(), TermError> {
        self.inner.add_link(assoc::PART_OF_COLLECTION, text, collection)?;
        Ok(())
    }

    pub fn relate(
        &mut self,
        relation: ConceptRelation,
        source: &str,
        target: &str,
    ) -> Result<(), TermError> {
        self.inner.add_link(relation.association(), source, target)?;
        Ok(())
    }

    pub fn evokes(&mut self, term: &str, frame: &str) -> Result<(), TermError> {
        self.inner.add_link(assoc::EVOKES, term, frame)?;
        Ok(())
    }

    pub fn has_element(&mut self, frame: &str, element: &str) -> Result<(), TermError> {
        self.inner.add_link(assoc::HAS_ELEMENT, frame, element)?;
        Ok(())
    }

    pub fn filled_by(&mut self, element: &str, term: &str) -> Result<(), TermError> {
        self.inner.add_link(assoc::FILLED_BY, element, term)?;
        Ok(())
    }

    pub fn remove_link(&mut self, association: &str, id1: &str, id2: &str) -> Result<(), TermError> {
        self.inner.remove_link(association, id1, id2)?;
        Ok(())
    }

    pub fn remove_entity(&mut self, type_name: &str, id: &str) -> Result<(), TermError> {
        self.inner.remove_entity(type_name, id)?;
        Ok(())
    }

    /// Superordinates of `concept`, sorted. At most one after builder-only
    /// construction.
    pub fn superordinates(&self, concept: &str) -> Vec<String> {
        superordinates(&self.inner, concept)
    }

    /// All transitive superordinates of `concept`.
    pub fn ancestors(&self, concept: &str) -> BTreeSet<String> {
        let mut seen = BTreeSet::new();
        let mut queue: VecDeque<String> = self.superordinates(concept).into();
        while let Some(c) = queue.pop_front() {
            if seen.insert(c.clone()) {
                queue.extend(self.superordinates(&c));
            }
        }
        seen
    }

    fn require(&self, type_name: &str, id: &str) -> Result<(), TermError> {
        if self.inner.contains(type_name, id) {
            Ok(())
        } else {
            Err(TermError::NotFound {
                type_name: type_name.to_owned(),
                id: id.to_owned(),
            })
        }
    }
}

const NO_ATTRS: [(&str, &str); 0] = [];

pub(crate) fn superordinates(instance: &ErInstance, concept: &str) -> Vec<String> {
    instance
        .links_of(assoc::HIERARCHICAL)
        .filter(|l| l.to == concept)
        .map(|l| l.from.clone())
        .collect()
}
