use std::collections::{BTreeMap, BTreeSet};

use super::TbxError;
use crate::er::ErInstance;
use crate::termmodel::{assoc, ty, TermError, Termbase, Variety};

/// In-memory form of a dialect document. Every list is kept sorted so
/// equal termbases give equal documents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TbxDocument {
    pub title: String,
    pub entries: Vec<ConceptEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptEntry {
    pub concept_id: String,
    pub superordinate: Option<String>,
    pub generic_targets: Vec<String>,
    /// `(variety, name)`, sorted by variety text then name.
    pub characteristics: Vec<(Variety, String)>,
    pub lang_sections: Vec<LangSection>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LangSection {
    pub language: String,
    pub terms: Vec<TermSection>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermSection {
    pub term_id: String,
    pub designation: String,
    pub definition: Option<String>,
}

impl TbxDocument {
    /// Collects the dialect-representable part of `instance`.
    pub fn from_instance(instance: &ErInstance, title: &str) -> TbxDocument {
        let mut entries = Vec::new();
        for concept in instance.entities_of(ty::CONCEPT) {
            let id = &concept.id;
            let superordinate = instance
                .links_of(assoc::HIERARCHICAL)
                .find(|l| &l.to == id)
                .map(|l| l.from.clone());
            let generic_targets = instance
                .links_of(assoc::GENERIC)
                .filter(|l| &l.from == id)
                .map(|l| l.to.clone())
                .collect();
            let mut characteristics: Vec<(Variety, String)> = instance
                .links_of(assoc::DELINEATED)
                .filter(|l| &l.from == id)
                .filter_map(|l| {
                    let variety = instance
                        .entity(ty::CHARACTERISTIC, &l.to)?
                        .attr("variety")?
                        .parse()
                        .ok()?;
                    Some((variety, l.to.clone()))
                })
                .collect();
            characteristics.sort_by(|a, b| (a.0.as_str(), &a.1).cmp(&(b.0.as_str(), &b.1)));

            let mut by_lang: BTreeMap<String, Vec<TermSection>> = BTreeMap::new();
            for link in instance.links_of(assoc::DENOTED).filter(|l| &l.from == id) {
                let Some(term) = instance.entity(ty::TERM, &link.to) else {
                    continue;
                };
                by_lang
                    .entry(term.attr("language").unwrap_or_default().to_owned())
                    .or_default()
                    .push(TermSection {
                        term_id: term.id.clone(),
                        designation: term.attr("designation").unwrap_or_default().to_owned(),
                        definition: term.attr("definition").map(str::to_owned),
                    });
            }
            // links_of yields terms in id order already
            let lang_sections = by_lang
                .into_iter()
                .map(|(language, terms)| LangSection { language, terms })
                .collect();

            entries.push(ConceptEntry {
                concept_id: id.clone(),
                superordinate,
                generic_targets,
                characteristics,
                lang_sections,
            });
        }
        TbxDocument {
            title: title.to_owned(),
            entries,
        }
    }

    /// Rebuilds a termbase through the eager builders.
    pub fn to_termbase(&self) -> Result<Termbase, TbxError> {
        let mut tb = Termbase::new();

        let mut concepts = BTreeSet::new();
        for e in &self.entries {
            if !concepts.insert(e.concept_id.as_str()) {
                return Err(TbxError::DuplicateConcept(e.concept_id.clone()));
            }
            tb.add_concept(&e.concept_id).map_err(|err| entry_error(&e.concept_id, err))?;
        }

        // name -> (variety, first declaring concept)
        let mut characteristics: BTreeMap<&str, (Variety, &str)> = BTreeMap::new();
        for e in &self.entries {
            for (variety, name) in &e.characteristics {
                match characteristics.get(name.as_str()) {
                    Some((v, first)) if v != variety => {
                        return Err(TbxError::VarietyConflict {
                            name: name.clone(),
                            first_entry: first.to_string(),
                            first_variety: *v,
                            second_entry: e.concept_id.clone(),
                            second_variety: *variety,
                        })
                    }
                    Some(_) => {}
                    None => {
                        characteristics.insert(name, (*variety, &e.concept_id));
                        tb.add_characteristic(name, *variety)
                            .map_err(|err| entry_error(&e.concept_id, err))?;
                    }
                }
            }
        }

        let mut terms = BTreeSet::new();
        for e in &self.entries {
            for section in &e.lang_sections {
                for t in &section.terms {
                    if !terms.insert(t.term_id.as_str()) {
                        return Err(TbxError::DuplicateTerm(t.term_id.clone()));
                    }
                    tb.add_term(&t.term_id, &t.designation, &section.language, t.definition.as_deref())
                        .map_err(|err| entry_error(&e.concept_id, err))?;
                    tb.denote(&e.concept_id, &t.term_id)
                        .map_err(|err| entry_error(&e.concept_id, err))?;
                }
            }
            for (_, name) in &e.characteristics {
                tb.add_characteristic_to_concept(&e.concept_id, name)
                    .map_err(|err| entry_error(&e.concept_id, err))?;
            }
        }

        for e in &self.entries {
            if let Some(parent) = &e.superordinate {
                if !concepts.contains(parent.as_str()) {
                    return Err(TbxError::MissingTarget {
                        relation: "superordinateConcept",
                        concept: e.concept_id.clone(),
                        target: parent.clone(),
                    });
                }
                tb.set_superordinate(&e.concept_id, parent)
                    .map_err(|err| entry_error(&e.concept_id, err))?;
            }
            for target in &e.generic_targets {
                if !concepts.contains(target.as_str()) {
                    return Err(TbxError::MissingTarget {
                        relation: "genericRelation",
                        concept: e.concept_id.clone(),
                        target: target.clone(),
                    });
                }
                tb.add_generic(&e.concept_id, target)
                    .map_err(|err| entry_error(&e.concept_id, err))?;
            }
        }

        Ok(tb)
    }
}

fn entry_error(concept: &str, source: TermError) -> TbxError {
    TbxError::Entry {
        concept: concept.to_owned(),
        source,
    }
}
