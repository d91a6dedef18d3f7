//! ER instance to RDF graph, serialized as sorted N-Triples.
//!
//! Every entity becomes an `rdf:type` triple, every set attribute a plain
//! literal triple, every link one triple from its first-role endpoint to
//! its second-role endpoint. The vocabulary is minted under
//! `BASE/schema#`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::er::{ErInstance, EntityRef};

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RdfError {
    #[error("invalid base IRI {0:?}: {1}")]
    InvalidBase(String, &'static str),
    #[error("empty IRI name component")]
    EmptyName,
    #[error("link {0} references missing entity {1}")]
    DanglingLink(String, EntityRef),
}

/// Base IRI all minted IRIs hang off.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IriScheme {
    base: String,
}

impl IriScheme {
    /// Accepts `scheme://authority[/path]` with no fragment, no trailing
    /// slash and no characters forbidden in an N-Triples IRI.
    pub fn new(base: &str) -> Result<Self, RdfError> {
        let err = |why| Err(RdfError::InvalidBase(base.to_owned(), why));
        let Some((scheme, rest)) = base.split_once("://") else {
            return err("expected scheme://authority");
        };
        let mut chars = scheme.chars();
        if !chars.next().is_some_and(|c| c.is_ascii_alphabetic())
            || !chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
        {
            return err("invalid scheme");
        }
        let authority = rest.split(['/', '?']).next().unwrap_or_default();
        if authority.is_empty() {
            return err("missing authority");
        }
        if base.contains('#') {
            return err("fragment not allowed");
        }
        if base.ends_with('/') {
            return err("trailing slash not allowed");
        }
        if base
            .chars()
            .any(|c| c <= ' ' || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\'))
        {
            return err("character not allowed in an IRI");
        }
        Ok(IriScheme {
            base: base.to_owned(),
        })
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    /// `BASE/TYPE/ID`
    pub fn instance_iri(&self, type_name: &str, id: &str) -> Result<String, RdfError> {
        Ok(format!("{}/{}/{}", self.base, encode(type_name)?, encode(id)?))
    }

    /// `BASE/schema#NAME`
    pub fn schema_iri(&self, name: &str) -> Result<String, RdfError> {
        Ok(format!("{}/schema#{}", self.base, encode(name)?))
    }

    /// `BASE/schema#TYPE.ATTR`
    pub fn attribute_iri(&self, type_name: &str, attr: &str) -> Result<String, RdfError> {
        Ok(format!(
            "{}/schema#{}.{}",
            self.base,
            encode(type_name)?,
            encode(attr)?
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IriKind {
    Instance,
    SchemaTerm,
}

/// `iri_for(scheme, Instance, ["Concept", "c1"])` or
/// `iri_for(scheme, SchemaTerm, ["Denoted"])`.
pub fn iri_for(scheme: &IriScheme, kind: IriKind, names: &[&str]) -> Result<String, RdfError> {
    match (kind, names) {
        (IriKind::Instance, [ty, id]) => scheme.instance_iri(ty, id),
        (IriKind::SchemaTerm, [name]) => scheme.schema_iri(name),
        (IriKind::SchemaTerm, [ty, attr]) => scheme.attribute_iri(ty, attr),
        _ => Err(RdfError::EmptyName),
    }
}

/// Percent-encodes everything but RFC 3986 unreserved characters.
fn encode(component: &str) -> Result<String, RdfError> {
    if component.is_empty() {
        return Err(RdfError::EmptyName);
    }
    let mut out = String::with_capacity(component.len());
    for b in component.bytes() {
        if b.is_ascii_alphanumeric() || matches!(b, b'-' | b'.' | b'_' | b'~') {
            out.push(b as char);
        } else {
            let _ = write!(out, "%{b:02X}");
        }
    }
    Ok(out)
}

/// Canonical N-Triples string literal body.
pub fn escape_literal(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 || c == '\u{7f}' => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            c => out.push(c),
        }
    }
    out
}

/// Serializes `instance` as N-Triples, lines sorted, LF-terminated.
/// An empty instance gives an empty string.
pub fn to_ntriples(instance: &ErInstance, scheme: &IriScheme) -> Result<String, RdfError> {
    let schema = instance.schema();
    let mut lines = Vec::new();

    for e in instance.entities() {
        let subject = scheme.instance_iri(&e.type_name, &e.id)?;
        lines.push(format!(
            "<{subject}> <{RDF_TYPE}> <{}> .",
            scheme.schema_iri(&e.type_name)?
        ));
        for (attr, value) in &e.attrs {
            lines.push(format!(
                "<{subject}> <{}> \"{}\" .",
                scheme.attribute_iri(&e.type_name, attr)?,
                escape_literal(value)
            ));
        }
    }

    for link in instance.links() {
        let Some(assoc) = schema.association(&link.association) else {
            continue;
        };
        let from = EntityRef::new(&assoc.role1.entity_type, &link.from);
        let to = EntityRef::new(&assoc.role2.entity_type, &link.to);
        for end in [&from, &to] {
            if !instance.contains(&end.type_name, &end.id) {
                return Err(RdfError::DanglingLink(link.to_string(), end.clone()));
            }
        }
        lines.push(format!(
            "<{}> <{}> <{}> .",
            scheme.instance_iri(&from.type_name, &from.id)?,
            scheme.schema_iri(&assoc.name)?,
            scheme.instance_iri(&to.type_name, &to.id)?
        ));
    }

    lines.sort_unstable();
    let mut out = String::new();
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}
