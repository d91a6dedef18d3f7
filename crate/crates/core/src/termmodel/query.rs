use std::collections::BTreeSet;

use super::builder::TermError;
use super::schema::{assoc, ty, Variety};
use crate::er::ErInstance;
use crate::text::nfc;

/// Ids of terms spelled exactly `designation` (after NFC), optionally in
/// one language only. Sorted by id.
pub fn homographs(instance: &ErInstance, designation: &str, language: Option<&str>) -> Vec<String> {
    let designation = nfc(designation);
    let language = language.map(nfc);
    instance
        .entities_of(ty::TERM)
        .filter(|t| t.attr("designation") == Some(designation.as_str()))
        .filter(|t| match &language {
            Some(lang) => t.attr("language") == Some(lang.as_str()),
            None => true,
        })
        .map(|t| t.id.clone())
        .collect()
}

/// Renders the characteristic-based definition of a concept:
///
/// ```text
/// Concept c1 := delimiting{has_wheels} essential{is_vehicle} non-essential{}
/// ```
///
/// Names are sorted and joined with `", "`. Type characteristics are left
/// out since they classify characteristics, not concepts.
pub fn formal_definition(instance: &ErInstance, concept: &str) -> Result<String, TermError> {
    let concept = nfc(concept);
    if !instance.contains(ty::CONCEPT, &concept) {
        return Err(TermError::NotFound {
            type_name: ty::CONCEPT.to_owned(),
            id: concept,
        });
    }
    let mut groups: [(Variety, BTreeSet<&str>); 3] = [
        (Variety::Delimiting, BTreeSet::new()),
        (Variety::Essential, BTreeSet::new()),
        (Variety::NonEssential, BTreeSet::new()),
    ];
    for link in instance.links_of(assoc::DELINEATED).filter(|l| l.from == concept) {
        let variety = instance
            .entity(ty::CHARACTERISTIC, &link.to)
            .and_then(|c| c.attr("variety"))
            .and_then(|v| v.parse::<Variety>().ok());
        if let Some((_, names)) = groups.iter_mut().find(|(v, _)| Some(*v) == variety) {
            names.insert(&link.to);
        }
    }
    let mut out = format!("Concept {concept} :=");
    for (variety, names) in &groups {
        let names: Vec<&str> = names.iter().copied().collect();
        out.push_str(&format!(" {variety}{{{}}}", names.join(", ")));
    }
    Ok(out)
}
