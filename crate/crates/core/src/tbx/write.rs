use std::fmt::Write as _;

use super::model::TbxDocument;
use super::TBX_NAMESPACE;

/// Escapes `& < > "`, and carriage returns so they survive XML
/// end-of-line normalization on the way back in.
pub(crate) fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\r' => out.push_str("&#13;"),
            c => out.push(c),
        }
    }
    out
}

/// Serializes `doc` in the fixed dialect layout.
pub fn write_document(doc: &TbxDocument) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<tbx style=\"dca\" type=\"TBX-Basic\" xml:lang=\"en\" xmlns=\"{TBX_NAMESPACE}\">"
    );
    let _ = writeln!(
        out,
        "  <tbxHeader><fileDesc><titleStmt><title>{}</title></titleStmt></fileDesc></tbxHeader>",
        escape(&doc.title)
    );
    out.push_str("  <text><body>\n");
    for entry in &doc.entries {
        let _ = writeln!(out, "    <conceptEntry id=\"{}\">", escape(&entry.concept_id));
        if let Some(parent) = &entry.superordinate {
            let _ = writeln!(
                out,
                "      <descrip type=\"superordinateConcept\">{}</descrip>",
                escape(parent)
            );
        }
        for target in &entry.generic_targets {
            let _ = writeln!(
                out,
                "      <descrip type=\"genericRelation\">{}</descrip>",
                escape(target)
            );
        }
        for (variety, name) in &entry.characteristics {
            let _ = writeln!(
                out,
                "      <descrip type=\"characteristic\">{}:{}</descrip>",
                variety,
                escape(name)
            );
        }
        for section in &entry.lang_sections {
            let _ = writeln!(out, "      <langSec xml:lang=\"{}\">", escape(&section.language));
            for term in &section.terms {
                let _ = writeln!(out, "        <termSec id=\"{}\">", escape(&term.term_id));
                let _ = writeln!(out, "          <term>{}</term>", escape(&term.designation));
                if let Some(def) = &term.definition {
                    let _ = writeln!(
                        out,
                        "          <descrip type=\"definition\">{}</descrip>",
                        escape(def)
                    );
                }
                out.push_str("        </termSec>\n");
            }
            out.push_str("      </langSec>\n");
        }
        out.push_str("    </conceptEntry>\n");
    }
    out.push_str("  </body></text>\n");
    out.push_str("</tbx>\n");
    out
}
