use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::builder::{ensure_schema, TermError};
use super::schema::{assoc, ty};
use crate::er::ErInstance;

/// The four ways into the same termbase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Approach {
    Onomasiological,
    Semasiological,
    Ontoterminological,
    FrameBased,
}

impl Approach {
    pub const ALL: [Approach; 4] = [
        Approach::Onomasiological,
        Approach::Semasiological,
        Approach::Ontoterminological,
        Approach::FrameBased,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Approach::Onomasiological => "onomasiological",
            Approach::Semasiological => "semasiological",
            Approach::Ontoterminological => "ontoterminological",
            Approach::FrameBased => "frame-based",
        }
    }

    pub fn entity_types(&self) -> &'static [&'static str] {
        use ty::*;
        match self {
            Approach::Onomasiological | Approach::Ontoterminological => {
                &[CONCEPT, TERM, CHARACTERISTIC]
            }
            Approach::Semasiological => {
                &[CONCEPT, TERM, CHARACTERISTIC, TEXT_SOURCE, COLLECTION]
            }
            Approach::FrameBased => &[CONCEPT, TERM, FRAME, FRAME_ELEMENT],
        }
    }

    pub fn associations(&self) -> &'static [&'static str] {
        use assoc::*;
        match self {
            Approach::Onomasiological | Approach::Ontoterminological => {
                &[DENOTED, HIERARCHICAL, GENERIC, DELINEATED, GROUP]
            }
            Approach::Semasiological => &[
                DENOTED,
                HIERARCHICAL,
                GENERIC,
                DELINEATED,
                GROUP,
                OCCURS_IN,
                PART_OF_COLLECTION,
                CONNECTED_TO,
                CONSISTS_OF,
                IS_A,
            ],
            Approach::FrameBased => &[DENOTED, EVOKES, HAS_ELEMENT, FILLED_BY],
        }
    }
}

impl fmt::Display for Approach {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Approach {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Approach::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Approach::ALL.iter().map(Approach::as_str).collect();
                format!("unknown approach '{s}' (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    pub approach: Approach,
    pub entity_types: BTreeSet<String>,
    pub associations: BTreeSet<String>,
    /// Same schema as the source, restricted content.
    pub instance: ErInstance,
}

/// Restricts `instance` to the entity types and associations of
/// `approach`. Nothing is synthesized; out-of-view links are dropped.
pub fn view(instance: &ErInstance, approach: Approach) -> Result<Projection, TermError> {
    ensure_schema(instance)?;
    let entity_types: BTreeSet<String> = approach.entity_types().iter().map(|s| s.to_string()).collect();
    let associations: BTreeSet<String> = approach.associations().iter().map(|s| s.to_string()).collect();
    let restricted = instance.restrict(&entity_types, &associations);
    Ok(Projection {
        approach,
        entity_types,
        associations,
        instance: restricted,
    })
}
