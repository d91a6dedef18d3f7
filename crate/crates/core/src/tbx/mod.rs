//! TBX export and import for a fixed TBX-Basic subset.
//!
//! Concepts, terms (grouped by language), term definitions, the
//! superordinate and generic relations and delineating characteristics
//! travel; everything else is counted in a [`LossReport`]. Relations carry
//! concept ids rather than designations so homographs survive. The three
//! `descrip` types `superordinateConcept`, `genericRelation` and
//! `characteristic` (value `VARIETY:NAME`) are local extensions.

mod loss;
mod model;
mod read;
mod write;

use thiserror::Error;

pub use loss::{tbx_loss, undelineating_characteristics, LossEntry, LossReport, DROPPED_ASSOCIATIONS, DROPPED_ENTITY_TYPES};
pub use model::{ConceptEntry, LangSection, TbxDocument, TermSection};
pub use read::read_document;
pub use write::write_document;

use crate::er::{ErInstance, ViolationKind, ViolationReport};
use crate::termmodel::{validate_termbase, TermError, Variety};

pub const TBX_NAMESPACE: &str = "urn:iso:std:iso:30042:ed-2";

#[derive(Debug, Error)]
pub enum TbxError {
    #[error("instance is not exportable:\n{0}")]
    Invalid(ViolationReport),
    #[error("instance has conditional violations (use force to export anyway):\n{0}")]
    ConditionalViolations(ViolationReport),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("malformed XML: {0}")]
    Xml(#[from] roxmltree::Error),
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("unknown element <{0}>")]
    UnknownElement(String),
    #[error("unknown descrip type '{0}'")]
    UnknownDescrip(String),
    #[error("duplicate concept id '{0}'")]
    DuplicateConcept(String),
    #[error("duplicate term id '{0}'")]
    DuplicateTerm(String),
    #[error(
        "characteristic '{name}' is {first_variety} in concept '{first_entry}' but {second_variety} in concept '{second_entry}'"
    )]
    VarietyConflict {
        name: String,
        first_entry: String,
        first_variety: Variety,
        second_entry: String,
        second_variety: Variety,
    },
    #[error("{relation} of concept '{concept}' targets '{target}', which is not in the document")]
    MissingTarget {
        relation: &'static str,
        concept: String,
        target: String,
    },
    #[error("concept entry '{concept}': {source}")]
    Entry { concept: String, source: TermError },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TbxOptions {
    pub title: String,
    /// Export despite conditional violations.
    pub force: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TbxExport {
    pub xml: String,
    pub loss: LossReport,
    /// Conditional violations were present and overridden by `force`.
    pub forced: bool,
}

/// Exports a valid termbase. Any violation blocks export.
pub fn export_tbx(instance: &ErInstance, title: &str) -> Result<(String, LossReport), TbxError> {
    let out = export_tbx_with(
        instance,
        &TbxOptions {
            title: title.to_owned(),
            force: false,
        },
    )?;
    Ok((out.xml, out.loss))
}

/// Exports with options. Cardinality, reference and attribute violations
/// always block; conditional ones block unless `force` is set.
pub fn export_tbx_with(instance: &ErInstance, opts: &TbxOptions) -> Result<TbxExport, TbxError> {
    let report = validate_termbase(instance)?;
    let blocking = ViolationReport::new(
        report
            .iter()
            .filter(|v| v.kind != ViolationKind::Conditional)
            .cloned()
            .collect(),
    );
    if !blocking.is_empty() {
        return Err(TbxError::Invalid(blocking));
    }
    let forced = report.has(ViolationKind::Conditional);
    if forced && !opts.force {
        return Err(TbxError::ConditionalViolations(report));
    }
    let doc = TbxDocument::from_instance(instance, &opts.title);
    Ok(TbxExport {
        xml: write_document(&doc),
        loss: tbx_loss(instance),
        forced,
    })
}

/// Parses a dialect document back into a terminology instance.
pub fn import_tbx(xml: &str) -> Result<ErInstance, TbxError> {
    Ok(read_document(xml)?.to_termbase()?.into_instance())
}
