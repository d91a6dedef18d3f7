use std::collections::HashMap;
use std::fmt;

use super::instance::{attribute_problems, EntityRef, ErInstance};
use super::schema::Side;
use crate::text::check_id;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    BelowMin,
    AboveMax,
    DanglingRef,
    DuplicateId,
    BadAttribute,
    Conditional,
}

impl ViolationKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ViolationKind::BelowMin => "below-min",
            ViolationKind::AboveMax => "above-max",
            ViolationKind::DanglingRef => "dangling-ref",
            ViolationKind::DuplicateId => "duplicate-id",
            ViolationKind::BadAttribute => "bad-attribute",
            ViolationKind::Conditional => "conditional",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Field order is the report sort order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub entity: EntityRef,
    pub association: Option<String>,
    pub role: Option<String>,
    pub kind: ViolationKind,
    pub observed: Option<usize>,
    pub bound: Option<u32>,
    pub message: String,
}

impl Violation {
    pub fn new(kind: ViolationKind, entity: EntityRef, message: impl Into<String>) -> Self {
        Violation {
            entity,
            association: None,
            role: None,
            kind,
            observed: None,
            bound: None,
            message: message.into(),
        }
    }

    pub fn at_role(mut self, association: impl Into<String>, role: impl Into<String>) -> Self {
        self.association = Some(association.into());
        self.role = Some(role.into());
        self
    }

    pub fn counts(mut self, observed: usize, bound: u32) -> Self {
        self.observed = Some(observed);
        self.bound = Some(bound);
        self
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind, self.entity)?;
        match (&self.association, &self.role) {
            (Some(a), Some(r)) => write!(f, " {a}.{r}")?,
            (Some(a), None) => write!(f, " {a}")?,
            _ => {}
        }
        if let (Some(o), Some(b)) = (self.observed, self.bound) {
            write!(f, " observed={o} bound={b}")?;
        }
        write!(f, ": {}", self.message)
    }
}

/// Violations in deterministic order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ViolationReport {
    violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn new(mut violations: Vec<Violation>) -> Self {
        violations.sort();
        violations.dedup();
        ViolationReport { violations }
    }

    pub fn merge(mut self, other: ViolationReport) -> Self {
        self.violations.extend(other.violations);
        Self::new(self.violations)
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Violation> {
        self.violations.iter()
    }

    pub fn count(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.count(kind) > 0
    }
}

impl<'a> IntoIterator for &'a ViolationReport {
    type Item = &'a Violation;
    type IntoIter = std::slice::Iter<'a, Violation>;

    fn into_iter(self) -> Self::IntoIter {
        self.violations.iter()
    }
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks every participation constraint of every entity, plus referential
/// integrity and attribute invariants (hand-edited store files can break
/// both).
pub fn check_cardinalities(instance: &ErInstance) -> ViolationReport {
    let schema = instance.schema();
    let mut out = Vec::new();

    // (type, id, assoc, side) -> count
    let mut counts: HashMap<(&str, &str, &str, Side), usize> = HashMap::new();
    for link in instance.links() {
        let Some(assoc) = schema.association(&link.association) else {
            continue;
        };
        for (side, role) in assoc.roles() {
            let id = link.endpoint(side);
            *counts
                .entry((&role.entity_type, id, &assoc.name, side))
                .or_default() += 1;
            if !instance.contains(&role.entity_type, id) {
                out.push(
                    Violation::new(
                        ViolationKind::DanglingRef,
                        EntityRef::new(&role.entity_type, id),
                        format!("link {link} references a missing {}", role.entity_type),
                    )
                    .at_role(&assoc.name, &role.name),
                );
            }
        }
    }

    for entity in instance.entities() {
        let key = entity.key();
        if let Some(def) = schema.entity_type(&entity.type_name) {
            if let Err(reason) = check_id(&entity.id) {
                out.push(Violation::new(ViolationKind::BadAttribute, key.clone(), reason));
            }
            for problem in attribute_problems(def, &entity.id, &entity.attrs) {
                out.push(Violation::new(
                    ViolationKind::BadAttribute,
                    key.clone(),
                    problem.to_string(),
                ));
            }
        }

        for assoc in &schema.associations {
            for (side, role) in assoc.roles() {
                if role.entity_type != entity.type_name {
                    continue;
                }
                let n = counts
                    .get(&(entity.type_name.as_str(), entity.id.as_str(), assoc.name.as_str(), side))
                    .copied()
                    .unwrap_or(0);
                let card = role.cardinality;
                if n < card.min as usize {
                    out.push(
                        Violation::new(
                            ViolationKind::BelowMin,
                            key.clone(),
                            format!(
                                "takes part in {n} {} link(s) as {}, at least {} required",
                                assoc.name, role.name, card.min
                            ),
                        )
                        .at_role(&assoc.name, &role.name)
                        .counts(n, card.min),
                    );
                }
                if let Some(max) = card.bounded_max() {
                    if n > max as usize {
                        out.push(
                            Violation::new(
                                ViolationKind::AboveMax,
                                key.clone(),
                                format!(
                                    "takes part in {n} {} link(s) as {}, at most {max} allowed",
                                    assoc.name, role.name
                                ),
                            )
                            .at_role(&assoc.name, &role.name)
                            .counts(n, max),
                        );
                    }
                }
            }
        }
    }

    ViolationReport::new(out)
}
