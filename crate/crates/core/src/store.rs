//! Canonical TermStore file: a JSON document holding one [`ErInstance`].
//!
//! ```text
//! {
//!   "entities": { "<Type>": [ { "attrs": {..}, "id": ".." }, .. ], .. },
//!   "links": [ { "assoc": "..", "from": "..", "to": ".." }, .. ],
//!   "schemaName": "..",
//!   "schemaVersion": ".."
//! }
//! ```
//!
//! Keys are written in lexicographic order with two-space indentation and a
//! trailing newline; entity lists are sorted by id and links by
//! `(assoc, from, to)`. Equal instances serialize to identical bytes.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::er::{
    EntityInstance, EntityRef, ErInstance, ErSchema, Link, Violation, ViolationKind,
    ViolationReport,
};
use crate::text::nfc;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("store is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed store: {0}")]
    Malformed(String),
    #[error("store targets schema {found}, expected {expected}")]
    SchemaMismatch { expected: String, found: String },
    #[error("store names unknown entity type '{0}'")]
    UnknownType(String),
    #[error("store names unknown association '{0}'")]
    UnknownAssociation(String),
    #[error("store repeats identifiers:\n{0}")]
    DuplicateIds(ViolationReport),
    #[error("store repeats link {0}")]
    DuplicateLink(Link),
}

fn malformed(msg: impl Into<String>) -> StoreError {
    StoreError::Malformed(msg.into())
}

/// Serializes `instance` to canonical TermStore bytes.
pub fn to_store_string(instance: &ErInstance) -> String {
    let mut entities = Map::new();
    for entity in instance.entities() {
        let list = entities
            .entry(entity.type_name.clone())
            .or_insert_with(|| Value::Array(Vec::new()));
        let attrs: Map<String, Value> = entity
            .attrs
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        list.as_array_mut()
            .expect("entity lists are arrays")
            .push(json!({ "id": entity.id, "attrs": attrs }));
    }
    let links: Vec<Value> = instance
        .links()
        .map(|l| json!({ "assoc": l.association, "from": l.from, "to": l.to }))
        .collect();
    let doc = json!({
        "schemaName": instance.schema().name,
        "schemaVersion": instance.schema().version,
        "entities": entities,
        "links": links,
    });
    let mut out = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
    out.push('\n');
    out
}

/// Reads a TermStore against `schema`.
///
/// Structural problems (bad JSON, unknown types or associations, repeated
/// ids or links, wrong schema) are errors. Dangling links and bad attribute
/// values are loaded as-is so that validation can report them.
pub fn from_store_str(text: &str, schema: Arc<ErSchema>) -> Result<ErInstance, StoreError> {
    let doc: Value = serde_json::from_str(text)?;
    let obj = doc
        .as_object()
        .ok_or_else(|| malformed("top level is not an object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "schemaName" | "schemaVersion" | "entities" | "links") {
            return Err(malformed(format!("unexpected top-level field '{key}'")));
        }
    }
    let name = str_field(obj, "schemaName")?;
    let version = str_field(obj, "schemaVersion")?;
    if name != schema.name || version != schema.version {
        return Err(StoreError::SchemaMismatch {
            expected: format!("{} v{}", schema.name, schema.version),
            found: format!("{name} v{version}"),
        });
    }

    let mut instance = ErInstance::empty(schema.clone());
    let mut duplicates = Vec::new();

    let entities = obj
        .get("entities")
        .and_then(Value::as_object)
        .ok_or_else(|| malformed("'entities' must be an object"))?;
    for (type_name, list) in entities {
        if schema.entity_type(type_name).is_none() {
            return Err(StoreError::UnknownType(type_name.clone()));
        }
        let list = list
            .as_array()
            .ok_or_else(|| malformed(format!("entities of '{type_name}' must be a list")))?;
        for item in list {
            let item = item
                .as_object()
                .ok_or_else(|| malformed(format!("entity of '{type_name}' is not an object")))?;
            if let Some(extra) = item.keys().find(|k| !matches!(k.as_str(), "id" | "attrs")) {
                return Err(malformed(format!("unexpected entity field '{extra}'")));
            }
            let id = nfc(str_field(item, "id")?);
            let mut attrs = BTreeMap::new();
            if let Some(raw) = item.get("attrs") {
                let raw = raw
                    .as_object()
                    .ok_or_else(|| malformed(format!("attrs of {type_name} '{id}' must be an object")))?;
                for (k, v) in raw {
                    let v = v.as_str().ok_or_else(|| {
                        malformed(format!("attribute '{k}' of {type_name} '{id}' is not a string"))
                    })?;
                    attrs.insert(k.clone(), nfc(v));
                }
            }
            let entity = EntityInstance {
                type_name: type_name.clone(),
                id: id.clone(),
                attrs,
            };
            if instance.insert_unchecked(entity).is_some() {
                duplicates.push(Violation::new(
                    ViolationKind::DuplicateId,
                    EntityRef::new(type_name, &id),
                    format!("{type_name} '{id}' appears more than once"),
                ));
            }
        }
    }
    if !duplicates.is_empty() {
        return Err(StoreError::DuplicateIds(ViolationReport::new(duplicates)));
    }

    let links = obj
        .get("links")
        .and_then(Value::as_array)
        .ok_or_else(|| malformed("'links' must be a list"))?;
    let mut seen = BTreeSet::new();
    for item in links {
        let item = item
            .as_object()
            .ok_or_else(|| malformed("link is not an object"))?;
        if let Some(extra) = item
            .keys()
            .find(|k| !matches!(k.as_str(), "assoc" | "from" | "to"))
        {
            return Err(malformed(format!("unexpected link field '{extra}'")));
        }
        let assoc = str_field(item, "assoc")?;
        if schema.association(assoc).is_none() {
            return Err(StoreError::UnknownAssociation(assoc.to_owned()));
        }
        let link = Link::new(assoc, nfc(str_field(item, "from")?), nfc(str_field(item, "to")?));
        if !seen.insert(link.clone()) {
            return Err(StoreError::DuplicateLink(link));
        }
        instance.insert_link_unchecked(link);
    }

    Ok(instance)
}

fn str_field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a str, StoreError> {
    obj.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| malformed(format!("missing or non-string field '{key}'")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::er::{check_cardinalities, AssociationDef, Cardinality, EntityTypeDef, RoleDef};

    fn schema() -> Arc<ErSchema> {
        Arc::new(
            ErSchema::new("demo", "1")
                .with_entity(EntityTypeDef::new("Concept").identifier("id"))
                .with_entity(EntityTypeDef::new("Term").identifier("id").required("designation"))
                .with_association(AssociationDef::new(
                    "Denoted",
                    RoleDef::new("denoting-concept", "Concept", Cardinality::at_least(1)),
                    RoleDef::new("denoted-term", "Term", Cardinality::new(1, 1)),
                )),
        )
    }

    const NONE: [(&str, &str); 0] = [];

    #[test]
    fn exact_bytes() {
        let mut i = ErInstance::new(schema()).unwrap();
        i.add_entity("Term", "t1", [("designation", "say \"hi\"")]).unwrap();
        i.add_entity("Concept", "c1", NONE).unwrap();
        i.add_link("Denoted", "c1", "t1").unwrap();
        let expected = r#"{
  "entities": {
    "Concept": [
      {
        "attrs": {},
        "id": "c1"
      }
    ],
    "Term": [
      {
        "attrs": {
          "designation": "say \"hi\""
        },
        "id": "t1"
      }
    ]
  },
  "links": [
    {
      "assoc": "Denoted",
      "from": "c1",
      "to": "t1"
    }
  ],
  "schemaName": "demo",
  "schemaVersion": "1"
}
"#;
        assert_eq!(to_store_string(&i), expected);
        assert_eq!(from_store_str(expected, schema()).unwrap(), i);
    }

    #[test]
    fn empty_instance() {
        let i = ErInstance::new(schema()).unwrap();
        let s = to_store_string(&i);
        assert_eq!(
            s,
            "{\n  \"entities\": {},\n  \"links\": [],\n  \"schemaName\": \"demo\",\n  \"schemaVersion\": \"1\"\n}\n"
        );
        assert_eq!(from_store_str(&s, schema()).unwrap(), i);
    }

    #[test]
    fn lenient_on_dangling_and_attrs() {
        let text = r#"{"schemaName":"demo","schemaVersion":"1",
            "entities":{"Concept":[{"id":"c1","attrs":{"x":"y"}}]},
            "links":[{"assoc":"Denoted","from":"c1","to":"t9"}]}"#;
        let i = from_store_str(text, schema()).unwrap();
        let r = check_cardinalities(&i);
        assert!(r.has(ViolationKind::DanglingRef));
        assert!(r.has(ViolationKind::BadAttribute));
    }

    #[test]
    fn structural_errors() {
        let cases = [
            ("not json", "Json"),
            (r#"{"schemaName":"other","schemaVersion":"1","entities":{},"links":[]}"#, "SchemaMismatch"),
            (r#"{"schemaName":"demo","schemaVersion":"1","entities":{"Nope":[]},"links":[]}"#, "UnknownType"),
            (r#"{"schemaName":"demo","schemaVersion":"1","entities":{},"links":[{"assoc":"X","from":"a","to":"b"}]}"#, "UnknownAssociation"),
            (r#"{"schemaName":"demo","schemaVersion":"1","entities":{"Concept":[{"id":"c1"},{"id":"c1"}]},"links":[]}"#, "DuplicateIds"),
            (r#"{"schemaName":"demo","schemaVersion":"1","entities":{},"links":[{"assoc":"Denoted","from":"a","to":"b"},{"assoc":"Denoted","from":"a","to":"b"}]}"#, "DuplicateLink"),
            (r#"{"schemaName":"demo","schemaVersion":"1","entities":{},"links":[],"extra":1}"#, "Malformed"),
            (r#"{"schemaName":"demo","schemaVersion":"1","links":[]}"#, "Malformed"),
        ];
        for (text, want) in cases {
            let err = from_store_str(text, schema()).unwrap_err();
            assert!(format!("{err:?}").starts_with(want), "{text}: {err:?}");
        }
    }

    #[test]
    fn duplicate_ids_reported_as_violations() {
        let text = r#"{"schemaName":"demo","schemaVersion":"1","entities":{"Concept":[{"id":"c1"},{"id":"c1"}]},"links":[]}"#;
        match from_store_str(text, schema()) {
            Err(StoreError::DuplicateIds(r)) => {
                assert_eq!(r.count(ViolationKind::DuplicateId), 1)
            }
            other => panic!("{other:?}"),
        }
    }
}
