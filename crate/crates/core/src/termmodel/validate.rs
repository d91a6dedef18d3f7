use petgraph::algo::tarjan_scc;
use petgraph::graphmap::DiGraphMap;

use super::builder::{check_characteristic_name, check_language, ensure_schema, TermError};
use super::schema::{assoc, role, ty, Variety};
use crate::er::{check_cardinalities, EntityRef, ErInstance, Violation, ViolationKind, ViolationReport};

/// Cardinality validation plus the termbase rules no ER participation
/// constraint can express:
///
/// - only type characteristics occupy the grouping role of `Group`
/// - every type characteristic groups at least one member
/// - `Hierarchical` is a forest (no concept is its own ancestor)
/// - no characteristic groups itself
///
/// Those four are reported as `conditional`. Term language tags and
/// characteristic names are re-checked as `bad-attribute`.
pub fn validate_termbase(instance: &ErInstance) -> Result<ViolationReport, TermError> {
    ensure_schema(instance)?;
    let mut out = Vec::new();

    let variety_of = |name: &str| {
        instance
            .entity(ty::CHARACTERISTIC, name)
            .and_then(|e| e.attr("variety"))
    };
    let type_variety = Variety::Type.as_str();

    for link in instance.links_of(assoc::GROUP) {
        let at = |id: &str| EntityRef::new(ty::CHARACTERISTIC, id);
        if let Some(v) = variety_of(&link.from) {
            if v != type_variety {
                out.push(
                    Violation::new(
                        ViolationKind::Conditional,
                        at(&link.from),
                        format!(
                            "variety {v} characteristic groups '{}'; only type characteristics may group",
                            link.to
                        ),
                    )
                    .at_role(assoc::GROUP, role::GROUPING_TYPE),
                );
            }
        }
        if link.from == link.to {
            out.push(
                Violation::new(ViolationKind::Conditional, at(&link.from), "characteristic groups itself")
                    .at_role(assoc::GROUP, role::GROUPING_TYPE),
            );
        }
    }

    for c in instance.entities_of(ty::CHARACTERISTIC) {
        if c.attr("variety") == Some(type_variety) && instance.links_of(assoc::GROUP).all(|l| l.from != c.id) {
            out.push(
                Violation::new(
                    ViolationKind::Conditional,
                    c.key(),
                    "type characteristic groups no characteristics; at least one required",
                )
                .at_role(assoc::GROUP, role::GROUPING_TYPE)
                .counts(0, 1),
            );
        }
        if let Err(e) = check_characteristic_name(&c.id) {
            out.push(Violation::new(ViolationKind::BadAttribute, c.key(), e.to_string()));
        }
    }

    for t in instance.entities_of(ty::TERM) {
        if let Some(lang) = t.attr("language") {
            if let Err(e) = check_language(lang) {
                out.push(Violation::new(ViolationKind::BadAttribute, t.key(), e.to_string()));
            }
        }
    }

    out.extend(hierarchy_cycles(instance));

    Ok(check_cardinalities(instance).merge(ViolationReport::new(out)))
}

/// One violation per strongly connected component of the superordinate
/// graph that contains a cycle, attached to its smallest concept id.
fn hierarchy_cycles(instance: &ErInstance) -> Vec<Violation> {
    let mut graph: DiGraphMap<&str, ()> = DiGraphMap::new();
    for link in instance.links_of(assoc::HIERARCHICAL) {
        graph.add_edge(link.from.as_str(), link.to.as_str(), ());
    }
    tarjan_scc(&graph)
        .into_iter()
        .filter(|scc| scc.len() > 1 || graph.contains_edge(scc[0], scc[0]))
        .map(|mut scc| {
            scc.sort_unstable();
            Violation::new(
                ViolationKind::Conditional,
                EntityRef::new(ty::CONCEPT, scc[0]),
                format!("hierarchy cycle through {}", scc.join(", ")),
            )
            .at_role(assoc::HIERARCHICAL, role::SUBORDINATE)
        })
        .collect()
}
