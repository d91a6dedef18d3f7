use std::fmt;

use crate::er::ErInstance;
use crate::termmodel::{assoc, ty};

/// Entity types the dialect has no element for.
pub const DROPPED_ENTITY_TYPES: [&str; 4] = [ty::COLLECTION, ty::FRAME, ty::FRAME_ELEMENT, ty::TEXT_SOURCE];

/// Associations the dialect has no element for.
pub const DROPPED_ASSOCIATIONS: [&str; 9] = [
    assoc::CONNECTED_TO,
    assoc::CONSISTS_OF,
    assoc::EVOKES,
    assoc::FILLED_BY,
    assoc::GROUP,
    assoc::HAS_ELEMENT,
    assoc::IS_A,
    assoc::OCCURS_IN,
    assoc::PART_OF_COLLECTION,
];

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LossEntry {
    /// Entity type or association name.
    pub kind: String,
    pub count: usize,
    pub reason: String,
}

/// What an export could not carry, one entry per kind with a non-zero
/// count, sorted by kind.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LossReport {
    entries: Vec<LossEntry>,
}

impl LossReport {
    pub fn new(entries: impl IntoIterator<Item = LossEntry>) -> Self {
        let mut entries: Vec<_> = entries.into_iter().filter(|e| e.count > 0).collect();
        entries.sort();
        LossReport { entries }
    }

    pub fn entries(&self) -> &[LossEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn count(&self, kind: &str) -> usize {
        self.entries
            .iter()
            .find(|e| e.kind == kind)
            .map_or(0, |e| e.count)
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.count).sum()
    }
}

impl fmt::Display for LossReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{}\t{}\t{}", e.kind, e.count, e.reason)?;
        }
        Ok(())
    }
}

/// Census of everything in `instance` that a TBX export drops.
pub fn tbx_loss(instance: &ErInstance) -> LossReport {
    let mut entries = Vec::new();
    for t in DROPPED_ENTITY_TYPES {
        entries.push(LossEntry {
            kind: t.to_owned(),
            count: instance.entities_of(t).count(),
            reason: "entity type has no TBX element".to_owned(),
        });
    }
    for a in DROPPED_ASSOCIATIONS {
        entries.push(LossEntry {
            kind: a.to_owned(),
            count: instance.links_of(a).count(),
            reason: "association has no TBX element".to_owned(),
        });
    }
    entries.push(LossEntry {
        kind: ty::CHARACTERISTIC.to_owned(),
        count: undelineating_characteristics(instance).count(),
        reason: "characteristic delineates no concept".to_owned(),
    });
    LossReport::new(entries)
}

/// Characteristics with no `Delineated` link; TBX carries characteristics
/// only inside concept entries.
pub fn undelineating_characteristics(instance: &ErInstance) -> impl Iterator<Item = &str> + '_ {
    instance
        .entities_of(ty::CHARACTERISTIC)
        .filter(move |c| instance.links_of(assoc::DELINEATED).all(|l| l.to != c.id))
        .map(|c| c.id.as_str())
}
