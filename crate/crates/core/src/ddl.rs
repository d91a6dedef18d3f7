//! ER schema to relational tables, emitted as portable `CREATE TABLE` DDL.
//!
//! Mapping rules:
//!
//! 1. Each entity type becomes a table named `snake_case(type)`. The
//!    identifier is a `TEXT PRIMARY KEY`, required attributes are
//!    `TEXT NOT NULL`, optional ones nullable `TEXT`; enumerations get a
//!    `CHECK (col IN (...))` over their sorted domain.
//! 2. An association with exactly one single-valued role (max 1) adds a
//!    foreign key column `snake_case(opposite role)` to that role's table,
//!    `NOT NULL` when the role's minimum is 1. When both roles are
//!    single-valued the first role's table hosts it. Any other association
//!    becomes a junction table with one column per role and a composite
//!    primary key.
//! 3. Entity tables come first, then junction tables, each alphabetical.
//!    Columns: primary key, attributes alphabetical, foreign keys
//!    alphabetical.
//!
//! Identifiers that collide with [`RESERVED_WORDS`] get a trailing `_`.
//! Minimums above zero on many-valued roles (a concept needs at least one
//! term) are not expressible here and stay with the validator.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::er::{AttributeKind, ErSchema, ValueDomain};

/// Words that get a trailing underscore when used as a table or column
/// name.
pub const RESERVED_WORDS: &[&str] = &[
    "add", "all", "alter", "and", "as", "asc", "between", "by", "case", "check", "column",
    "constraint", "create", "cross", "default", "delete", "desc", "distinct", "drop", "else",
    "end", "exists", "foreign", "from", "full", "group", "having", "in", "index", "inner",
    "insert", "into", "is", "join", "key", "left", "like", "limit", "not", "null", "on", "or",
    "order", "outer", "primary", "references", "right", "select", "set", "table", "then", "to",
    "union", "unique", "update", "user", "using", "values", "when", "where", "with",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DdlError {
    #[error("schema is ill-formed: {}", .0.join("; "))]
    InvalidSchema(Vec<String>),
    #[error("name {0:?} does not map to an ASCII SQL identifier")]
    BadName(String),
    #[error("table name '{0}' is produced twice")]
    DuplicateTable(String),
    #[error("table '{table}' gets column '{column}' twice")]
    DuplicateColumn { table: String, column: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqlType {
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnDef {
    pub name: String,
    pub sql_type: SqlType,
    pub nullable: bool,
    pub check_enum: Option<Vec<String>>,
    /// `(table, column)` of the referenced primary key.
    pub references: Option<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableDef {
    pub name: String,
    pub columns: Vec<ColumnDef>,
    pub primary_key: Vec<String>,
}

impl TableDef {
    pub fn column(&self, name: &str) -> Option<&ColumnDef> {
        self.columns.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelationalMapping {
    pub tables: Vec<TableDef>,
}

impl RelationalMapping {
    pub fn table(&self, name: &str) -> Option<&TableDef> {
        self.tables.iter().find(|t| t.name == name)
    }
}

/// `TextSource` -> `text_source`, `denoting-concept` -> `denoting_concept`.
pub fn snake_case(name: &str) -> Result<String, DdlError> {
    let chars: Vec<char> = name.chars().collect();
    let mut out = String::new();
    for (i, &c) in chars.iter().enumerate() {
        if matches!(c, '-' | ' ' | '_') {
            if !out.ends_with('_') {
                out.push('_');
            }
        } else if c.is_ascii_uppercase() {
            let prev = i.checked_sub(1).map(|j| chars[j]);
            let next = chars.get(i + 1);
            let boundary = prev.is_some_and(|p| p.is_ascii_lowercase() || p.is_ascii_digit())
                || (prev.is_some_and(|p| p.is_ascii_uppercase())
                    && next.is_some_and(|n| n.is_ascii_lowercase()));
            if boundary && !out.ends_with('_') {
                out.push('_');
            }
            out.push(c.to_ascii_lowercase());
        } else if c.is_ascii_alphanumeric() {
            out.push(c);
        } else {
            return Err(DdlError::BadName(name.to_owned()));
        }
    }
    let out = out.trim_matches('_').to_owned();
    if out.is_empty() || out.starts_with(|c: char| c.is_ascii_digit()) {
        return Err(DdlError::BadName(name.to_owned()));
    }
    Ok(out)
}

/// [`snake_case`] plus the reserved-word suffix.
pub fn sql_identifier(name: &str) -> Result<String, DdlError> {
    let mut id = snake_case(name)?;
    if RESERVED_WORDS.contains(&id.as_str()) {
        id.push('_');
    }
    Ok(id)
}

fn text_column(name: String, nullable: bool) -> ColumnDef {
    ColumnDef {
        name,
        sql_type: SqlType::Text,
        nullable,
        check_enum: None,
        references: None,
    }
}

pub fn map_schema(schema: &ErSchema) -> Result<RelationalMapping, DdlError> {
    let errors = schema.validate();
    if !errors.is_empty() {
        return Err(DdlError::InvalidSchema(errors));
    }

    struct Draft {
        table: TableDef,
        attrs: Vec<ColumnDef>,
        fks: Vec<ColumnDef>,
    }

    let pk_of = |type_name: &str| -> Result<(String, String), DdlError> {
        let def = schema.entity_type(type_name).expect("validated schema");
        let id = def.identifier_attr().expect("validated schema");
        Ok((sql_identifier(type_name)?, sql_identifier(&id.name)?))
    };

    let mut entity_tables = Vec::new();
    for et in &schema.entity_types {
        let mut attrs = Vec::new();
        let mut pk = None;
        for attr in &et.attributes {
            let name = sql_identifier(&attr.name)?;
            let mut col = text_column(name.clone(), attr.kind == AttributeKind::Optional);
            if let ValueDomain::Enumeration(values) = &attr.domain {
                let mut values = values.clone();
                values.sort();
                col.check_enum = Some(values);
            }
            if attr.kind == AttributeKind::Identifier {
                col.nullable = false;
                pk = Some(col);
            } else {
                attrs.push(col);
            }
        }
        let pk = pk.expect("validated schema");
        attrs.sort_by(|a, b| a.name.cmp(&b.name));
        entity_tables.push(Draft {
            table: TableDef {
                name: sql_identifier(&et.name)?,
                primary_key: vec![pk.name.clone()],
                columns: vec![pk],
            },
            attrs,
            fks: Vec::new(),
        });
    }

    let mut junctions = Vec::new();
    for assoc in &schema.associations {
        let (r1, r2) = (&assoc.role1, &assoc.role2);
        let host = match (r1.cardinality.is_single(), r2.cardinality.is_single()) {
            (true, _) => Some((r1, r2)),
            (false, true) => Some((r2, r1)),
            (false, false) => None,
        };
        match host {
            Some((hosting, opposite)) => {
                let table = sql_identifier(&hosting.entity_type)?;
                let mut col = text_column(
                    sql_identifier(&opposite.name)?,
                    hosting.cardinality.min == 0,
                );
                col.references = Some(pk_of(&opposite.entity_type)?);
                let draft = entity_tables
                    .iter_mut()
                    .find(|d| d.table.name == table)
                    .expect("role targets an entity table");
                draft.fks.push(col);
            }
            None => {
                let mut c1 = text_column(sql_identifier(&r1.name)?, false);
                c1.references = Some(pk_of(&r1.entity_type)?);
                let mut c2 = text_column(sql_identifier(&r2.name)?, false);
                c2.references = Some(pk_of(&r2.entity_type)?);
                junctions.push(TableDef {
                    name: sql_identifier(&assoc.name)?,
                    primary_key: vec![c1.name.clone(), c2.name.clone()],
                    columns: vec![c1, c2],
                });
            }
        }
    }

    let mut tables: Vec<TableDef> = entity_tables
        .into_iter()
        .map(|mut d| {
            d.fks.sort_by(|a, b| a.name.cmp(&b.name));
            d.table.columns.extend(d.attrs);
            d.table.columns.extend(d.fks);
            d.table
        })
        .collect();
    tables.sort_by(|a, b| a.name.cmp(&b.name));
    junctions.sort_by(|a, b| a.name.cmp(&b.name));
    tables.extend(junctions);

    let mut names = BTreeSet::new();
    for t in &tables {
        if !names.insert(t.name.as_str()) {
            return Err(DdlError::DuplicateTable(t.name.clone()));
        }
        let mut cols = BTreeSet::new();
        for c in &t.columns {
            if !cols.insert(c.name.as_str()) {
                return Err(DdlError::DuplicateColumn {
                    table: t.name.clone(),
                    column: c.name.clone(),
                });
            }
        }
    }

    Ok(RelationalMapping { tables })
}

fn quote(value: &str) -> String {
    format!("'{}'", value.replace('\'', "''"))
}

pub fn emit_ddl(mapping: &RelationalMapping) -> String {
    let mut out = String::new();
    for table in &mapping.tables {
        let single_pk = match table.primary_key.as_slice() {
            [pk] => Some(pk.as_str()),
            _ => None,
        };
        let mut lines = Vec::new();
        for col in &table.columns {
            let mut line = format!("  {} TEXT", col.name);
            if single_pk == Some(col.name.as_str()) {
                line.push_str(" PRIMARY KEY");
            } else if !col.nullable {
                line.push_str(" NOT NULL");
            }
            if let Some(values) = &col.check_enum {
                let list: Vec<String> = values.iter().map(|v| quote(v)).collect();
                let _ = write!(line, " CHECK ({} IN ({}))", col.name, list.join(", "));
            }
            if let Some((t, c)) = &col.references {
                let _ = write!(line, " REFERENCES {t}({c})");
            }
            lines.push(line);
        }
        if single_pk.is_none() && !table.primary_key.is_empty() {
            lines.push(format!("  PRIMARY KEY ({})", table.primary_key.join(", ")));
        }
        let _ = write!(out, "CREATE TABLE {} (\n{}\n);\n", table.name, lines.join(",\n"));
    }
    out
}
