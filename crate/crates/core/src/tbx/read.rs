use roxmltree::{Document, Node};

use super::model::{ConceptEntry, LangSection, TbxDocument, TermSection};
use super::{TbxError, TBX_NAMESPACE};
use crate::termmodel::Variety;

const XML_NS: &str = "http://www.w3.org/XML/1998/namespace";

fn malformed(msg: impl Into<String>) -> TbxError {
    TbxError::Malformed(msg.into())
}

/// Parses a dialect document. Element nesting and order are checked;
/// whitespace between elements and comments are ignored.
pub fn read_document(xml: &str) -> Result<TbxDocument, TbxError> {
    let doc = Document::parse(xml)?;
    let root = doc.root_element();
    expect_name(root, "tbx")?;
    if root.tag_name().namespace() != Some(TBX_NAMESPACE) {
        return Err(malformed(format!(
            "root element must be in namespace {TBX_NAMESPACE}"
        )));
    }

    let [header, text] = exact_children::<2>(root)?;
    expect_name(header, "tbxHeader")?;
    let [file_desc] = exact_children::<1>(header)?;
    expect_name(file_desc, "fileDesc")?;
    let [title_stmt] = exact_children::<1>(file_desc)?;
    expect_name(title_stmt, "titleStmt")?;
    let [title] = exact_children::<1>(title_stmt)?;
    expect_name(title, "title")?;
    let title = text_content(title)?;

    expect_name(text, "text")?;
    let [body] = exact_children::<1>(text)?;
    expect_name(body, "body")?;

    let entries = elements(body)?
        .into_iter()
        .map(|e| {
            expect_name(e, "conceptEntry")?;
            read_entry(e)
        })
        .collect::<Result<_, _>>()?;

    Ok(TbxDocument { title, entries })
}

#[derive(PartialEq, PartialOrd)]
enum Stage {
    Superordinate,
    Generic,
    Characteristic,
    Languages,
}

fn read_entry(node: Node) -> Result<ConceptEntry, TbxError> {
    let concept_id = required_attr(node, "id")?;
    let mut entry = ConceptEntry {
        concept_id: concept_id.clone(),
        superordinate: None,
        generic_targets: Vec::new(),
        characteristics: Vec::new(),
        lang_sections: Vec::new(),
    };
    let mut stage = Stage::Superordinate;
    let mut advance = |next: Stage, what: &str| {
        if next < stage {
            return Err(malformed(format!(
                "conceptEntry '{concept_id}': {what} is out of order"
            )));
        }
        stage = next;
        Ok(())
    };

    for child in elements(node)? {
        match child.tag_name().name() {
            "descrip" => {
                let kind = required_attr(child, "type")?;
                let value = text_content(child)?;
                match kind.as_str() {
                    "superordinateConcept" => {
                        advance(Stage::Superordinate, "superordinateConcept")?;
                        if entry.superordinate.replace(value).is_some() {
                            return Err(malformed(format!(
                                "conceptEntry '{concept_id}' has more than one superordinateConcept"
                            )));
                        }
                    }
                    "genericRelation" => {
                        advance(Stage::Generic, "genericRelation")?;
                        entry.generic_targets.push(value);
                    }
                    "characteristic" => {
                        advance(Stage::Characteristic, "characteristic")?;
                        entry.characteristics.push(parse_characteristic(&concept_id, &value)?);
                    }
                    other => return Err(TbxError::UnknownDescrip(other.to_owned())),
                }
            }
            "langSec" => {
                advance(Stage::Languages, "langSec")?;
                entry.lang_sections.push(read_lang_section(child)?);
            }
            other => return Err(TbxError::UnknownElement(other.to_owned())),
        }
    }
    if entry.lang_sections.is_empty() {
        return Err(malformed(format!(
            "conceptEntry '{concept_id}' has no langSec"
        )));
    }
    Ok(entry)
}

fn parse_characteristic(concept: &str, value: &str) -> Result<(Variety, String), TbxError> {
    let (variety, name) = value.split_once(':').ok_or_else(|| {
        malformed(format!(
            "conceptEntry '{concept}': characteristic {value:?} is not VARIETY:NAME"
        ))
    })?;
    let variety = variety
        .parse::<Variety>()
        .map_err(|e| malformed(format!("conceptEntry '{concept}': {e}")))?;
    if name.is_empty() || name.contains(':') {
        return Err(malformed(format!(
            "conceptEntry '{concept}': invalid characteristic name {name:?}"
        )));
    }
    Ok((variety, name.to_owned()))
}

fn read_lang_section(node: Node) -> Result<LangSection, TbxError> {
    let language = node
        .attribute((XML_NS, "lang"))
        .ok_or_else(|| malformed("langSec without xml:lang"))?
        .to_owned();
    let mut terms = Vec::new();
    for child in elements(node)? {
        expect_name(child, "termSec")?;
        terms.push(read_term_section(child)?);
    }
    if terms.is_empty() {
        return Err(malformed(format!("langSec '{language}' has no termSec")));
    }
    Ok(LangSection { language, terms })
}

fn read_term_section(node: Node) -> Result<TermSection, TbxError> {
    let term_id = required_attr(node, "id")?;
    let children = elements(node)?;
    let (term, rest) = children
        .split_first()
        .ok_or_else(|| malformed(format!("termSec '{term_id}' lacks a term element")))?;
    if term.tag_name().name() != "term" {
        return Err(malformed(format!(
            "termSec '{term_id}' must start with a term element"
        )));
    }
    let designation = text_content(*term)?;
    let definition = match rest {
        [] => None,
        [d] if d.tag_name().name() == "descrip" => {
            let kind = required_attr(*d, "type")?;
            if kind != "definition" {
                return Err(TbxError::UnknownDescrip(kind));
            }
            Some(text_content(*d)?)
        }
        [other] => return Err(TbxError::UnknownElement(other.tag_name().name().to_owned())),
        _ => {
            return Err(malformed(format!(
                "termSec '{term_id}' has unexpected extra elements"
            )))
        }
    };
    Ok(TermSection {
        term_id,
        designation,
        definition,
    })
}

fn expect_name(node: Node, name: &str) -> Result<(), TbxError> {
    let found = node.tag_name().name();
    if found == name {
        Ok(())
    } else if KNOWN.contains(&found) {
        Err(malformed(format!("expected <{name}>, found <{found}>")))
    } else {
        Err(TbxError::UnknownElement(found.to_owned()))
    }
}

const KNOWN: [&str; 12] = [
    "tbx",
    "tbxHeader",
    "fileDesc",
    "titleStmt",
    "title",
    "text",
    "body",
    "conceptEntry",
    "descrip",
    "langSec",
    "termSec",
    "term",
];

fn required_attr(node: Node, name: &str) -> Result<String, TbxError> {
    node.attribute(name).map(str::to_owned).ok_or_else(|| {
        malformed(format!(
            "<{}> is missing attribute '{name}'",
            node.tag_name().name()
        ))
    })
}

/// Element children; any non-whitespace text among them is an error.
fn elements<'a, 'i>(node: Node<'a, 'i>) -> Result<Vec<Node<'a, 'i>>, TbxError> {
    let mut out = Vec::new();
    for child in node.children() {
        if child.is_element() {
            out.push(child);
        } else if child.is_text() && !child.text().unwrap_or_default().trim().is_empty() {
            return Err(malformed(format!(
                "unexpected text inside <{}>",
                node.tag_name().name()
            )));
        }
    }
    Ok(out)
}

fn exact_children<'a, 'i, const N: usize>(node: Node<'a, 'i>) -> Result<[Node<'a, 'i>; N], TbxError> {
    let children = elements(node)?;
    let n = children.len();
    children.try_into().map_err(|_| {
        malformed(format!(
            "<{}> must have {N} child element(s), found {n}",
            node.tag_name().name()
        ))
    })
}

/// Concatenated text of a leaf element.
fn text_content(node: Node) -> Result<String, TbxError> {
    let mut out = String::new();
    for child in node.children() {
        if child.is_element() {
            return Err(malformed(format!(
                "<{}> must contain text only",
                node.tag_name().name()
            )));
        }
        if child.is_text() {
            out.push_str(child.text().unwrap_or_default());
        }
    }
    Ok(out)
}
