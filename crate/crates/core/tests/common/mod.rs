//! Seeded termbase generators and brute-force oracles shared by the
//! integration suites. Nothing here calls the validation or export code it
//! is used to check.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use termbase_core::er::{ErInstance, Side};
use termbase_core::termmodel::{assoc, ConceptRelation, Termbase, Variety};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone)]
pub enum Ent {
    Concept(String),
    Term {
        id: String,
        designation: String,
        language: String,
        definition: Option<String>,
    },
    Characteristic(String, Variety),
    TextSource(String, Option<String>),
    Collection(String, Option<String>),
    Frame(String, String),
    FrameElement(String, String),
}

/// A construction recipe that can be replayed in any order.
#[derive(Debug, Clone, Default)]
pub struct Plan {
    pub entities: Vec<Ent>,
    /// `(association, first-role id, second-role id)`
    pub links: Vec<(&'static str, String, String)>,
}

#[derive(Debug, Clone, Copy)]
pub struct GenConfig {
    pub max_concepts: usize,
    pub max_languages: usize,
    /// Only Concept/Term/Characteristic with Denoted/Hierarchical/Generic/
    /// Delineated; every characteristic delineates some concept.
    pub tbx_exact: bool,
}

impl GenConfig {
    pub const TBX_EXACT: GenConfig = GenConfig {
        max_concepts: 30,
        max_languages: 3,
        tbx_exact: true,
    };
    pub const FULL: GenConfig = GenConfig {
        max_concepts: 30,
        max_languages: 3,
        tbx_exact: false,
    };
}

const LANGUAGES: [&str; 3] = ["en", "fr", "de-AT"];
const WORDS: [&str; 10] = [
    "bank", "car", "wheel", "vehicle", "Bank", "caf\u{e9}", "say \"hi\"", "a & b <c>", "x\\y", "line\nbreak",
];

fn concept_id(rng: &mut impl Rng, i: usize) -> String {
    // mostly plain, sometimes ids that need percent-encoding in IRIs
    match rng.gen_range(0..10) {
        0 => format!("k.\u{e9}-{i}"),
        1 => format!("C_{i}"),
        _ => format!("c{i}"),
    }
}

fn pick<'a, T>(rng: &mut impl Rng, xs: &'a [T]) -> &'a T {
    &xs[rng.gen_range(0..xs.len())]
}

/// A plan whose built termbase passes `validate_termbase` with no
/// violations.
pub fn gen_plan(rng: &mut impl Rng, cfg: GenConfig) -> Plan {
    let mut plan = Plan::default();
    let n = rng.gen_range(0..=cfg.max_concepts);
    let langs = &LANGUAGES[..rng.gen_range(1..=cfg.max_languages)];

    let concepts: Vec<String> = (0..n).map(|i| concept_id(rng, i)).collect();
    for c in &concepts {
        plan.entities.push(Ent::Concept(c.clone()));
    }

    let mut terms = Vec::new();
    for c in &concepts {
        for _ in 0..rng.gen_range(1..=3) {
            let id = format!("t{}", terms.len());
            let definition = rng
                .gen_bool(0.3)
                .then(|| format!("definition of {}", pick(rng, &WORDS)));
            plan.entities.push(Ent::Term {
                id: id.clone(),
                designation: pick(rng, &WORDS).to_string(),
                language: pick(rng, langs).to_string(),
                definition,
            });
            plan.links.push((assoc::DENOTED, c.clone(), id.clone()));
            terms.push(id);
        }
    }

    // forest: parents always have a smaller index
    for i in 1..n {
        if rng.gen_bool(0.4) {
            let j = rng.gen_range(0..i);
            plan.links.push((assoc::HIERARCHICAL, concepts[j].clone(), concepts[i].clone()));
        }
    }

    let mut generic = BTreeSet::new();
    if n > 0 {
        for _ in 0..rng.gen_range(0..=n / 2 + 1) {
            generic.insert((rng.gen_range(0..n), rng.gen_range(0..n)));
        }
    }
    for (a, b) in generic {
        plan.links.push((assoc::GENERIC, concepts[a].clone(), concepts[b].clone()));
    }

    let plain = [Variety::Essential, Variety::NonEssential, Variety::Delimiting];
    let n_chars = if n == 0 { 0 } else { rng.gen_range(0..=6) };
    let mut chars = Vec::new();
    for i in 0..n_chars {
        let name = format!("ch{i}");
        let variety = if !cfg.tbx_exact && rng.gen_bool(0.25) {
            Variety::Type
        } else {
            *pick(rng, &plain)
        };
        plan.entities.push(Ent::Characteristic(name.clone(), variety));
        chars.push((name, variety));
    }
    for (name, _) in &chars {
        let mut targets = BTreeSet::new();
        let k = if cfg.tbx_exact { rng.gen_range(1..=3) } else { rng.gen_range(0..=3) };
        for _ in 0..k {
            targets.insert(rng.gen_range(0..n));
        }
        for t in targets {
            plan.links.push((assoc::DELINEATED, concepts[t].clone(), name.clone()));
        }
    }

    if cfg.tbx_exact {
        return plan;
    }

    // type characteristics group at least one other characteristic
    let mut groups = BTreeSet::new();
    for (name, variety) in &chars {
        if *variety != Variety::Type {
            continue;
        }
        let others: Vec<&String> = chars.iter().map(|(c, _)| c).filter(|c| *c != name).collect();
        if others.is_empty() {
            let extra = format!("{name}-member");
            plan.entities.push(Ent::Characteristic(extra.clone(), Variety::Essential));
            groups.insert((name.clone(), extra));
            continue;
        }
        for _ in 0..rng.gen_range(1..=3) {
            groups.insert((name.clone(), pick(rng, &others).to_string()));
        }
    }
    for (g, m) in groups {
        plan.links.push((assoc::GROUP, g, m));
    }

    let n_coll = rng.gen_range(0..=2);
    let n_text = if n_coll == 0 { 0 } else { rng.gen_range(0..=4) };
    for i in 0..n_coll {
        plan.entities.push(Ent::Collection(format!("coll{i}"), rng.gen_bool(0.5).then(|| format!("Collection {i}"))));
    }
    let mut occurs = BTreeSet::new();
    for i in 0..n_text {
        let id = format!("text{i}");
        plan.entities.push(Ent::TextSource(id.clone(), rng.gen_bool(0.5).then(|| format!("Text \"{i}\""))));
        plan.links.push((assoc::PART_OF_COLLECTION, id.clone(), format!("coll{}", rng.gen_range(0..n_coll))));
        if !terms.is_empty() {
            for _ in 0..rng.gen_range(0..=3) {
                occurs.insert((pick(rng, &terms).clone(), id.clone()));
            }
        }
    }
    for (t, x) in occurs {
        plan.links.push((assoc::OCCURS_IN, t, x));
    }

    if n > 0 {
        for rel in [assoc::CONNECTED_TO, assoc::CONSISTS_OF, assoc::IS_A] {
            let mut pairs = BTreeSet::new();
            for _ in 0..rng.gen_range(0..=2) {
                pairs.insert((rng.gen_range(0..n), rng.gen_range(0..n)));
            }
            for (a, b) in pairs {
                plan.links.push((rel, concepts[a].clone(), concepts[b].clone()));
            }
        }
    }

    let n_frames = rng.gen_range(0..=2);
    let mut elements = Vec::new();
    for f in 0..n_frames {
        let fid = format!("f{f}");
        plan.entities.push(Ent::Frame(fid.clone(), format!("Frame {f}")));
        for e in 0..rng.gen_range(0..=2) {
            let eid = format!("fe{f}-{e}");
            plan.entities.push(Ent::FrameElement(eid.clone(), "Agent".into()));
            plan.links.push((assoc::HAS_ELEMENT, fid.clone(), eid.clone()));
            elements.push(eid);
        }
    }
    if !terms.is_empty() {
        let mut evokes = BTreeSet::new();
        for f in 0..n_frames {
            if rng.gen_bool(0.7) {
                evokes.insert((pick(rng, &terms).clone(), format!("f{f}")));
            }
        }
        for (t, f) in evokes {
            plan.links.push((assoc::EVOKES, t, f));
        }
        let mut filled = BTreeSet::new();
        for e in &elements {
            if rng.gen_bool(0.5) {
                filled.insert((e.clone(), pick(rng, &terms).clone()));
            }
        }
        for (e, t) in filled {
            plan.links.push((assoc::FILLED_BY, e, t));
        }
    }

    plan
}

pub fn add_entity(tb: &mut Termbase, e: &Ent) {
    let r = match e {
        Ent::Concept(id) => tb.add_concept(id),
        Ent::Term {
            id,
            designation,
            language,
            definition,
        } => tb.add_term(id, designation, language, definition.as_deref()),
        Ent::Characteristic(name, v) => tb.add_characteristic(name, *v),
        Ent::TextSource(id, title) => tb.add_text_source(id, title.as_deref()),
        Ent::Collection(id, name) => tb.add_collection(id, name.as_deref()),
        Ent::Frame(id, name) => tb.add_frame(id, name),
        Ent::FrameElement(id, name) => tb.add_frame_element(id, name),
    };
    r.unwrap_or_else(|err| panic!("{e:?}: {err}"));
}

/// Applies one link through the matching builder.
pub fn add_link(tb: &mut Termbase, association: &str, a: &str, b: &str) -> Result<(), termbase_core::termmodel::TermError> {
    match association {
        assoc::DENOTED => tb.denote(a, b),
        assoc::HIERARCHICAL => tb.set_superordinate(b, a),
        assoc::GENERIC => tb.add_generic(a, b),
        assoc::DELINEATED => tb.add_characteristic_to_concept(a, b),
        assoc::GROUP => tb.group_characteristic(a, b),
        assoc::OCCURS_IN => tb.occurs_in(a, b),
        assoc::PART_OF_COLLECTION => tb.part_of_collection(a, b),
        assoc::CONNECTED_TO => tb.relate(ConceptRelation::ConnectedTo, a, b),
        assoc::CONSISTS_OF => tb.relate(ConceptRelation::ConsistsOf, a, b),
        assoc::IS_A => tb.relate(ConceptRelation::IsA, a, b),
        assoc::EVOKES => tb.evokes(a, b),
        assoc::HAS_ELEMENT => tb.has_element(a, b),
        assoc::FILLED_BY => tb.filled_by(a, b),
        other => panic!("unknown association {other}"),
    }
}

impl Plan {
    pub fn build(&self) -> Termbase {
        self.build_in_order(None::<&mut ChaCha8Rng>)
    }

    /// Builds with entities and links each shuffled by `shuffle`.
    pub fn build_in_order(&self, shuffle: Option<&mut impl Rng>) -> Termbase {
        let mut entities: Vec<&Ent> = self.entities.iter().collect();
        let mut links: Vec<&(&'static str, String, String)> = self.links.iter().collect();
        if let Some(rng) = shuffle {
            entities.shuffle(rng);
            links.shuffle(rng);
        }
        let mut tb = Termbase::new();
        for e in entities {
            add_entity(&mut tb, e);
        }
        for (a, x, y) in links {
            add_link(&mut tb, a, x, y).unwrap_or_else(|err| panic!("{a}({x}, {y}): {err}"));
        }
        tb
    }
}

/// Participation of `(type, id)` in `association` on `side`, by a full scan.
pub fn recount(inst: &ErInstance, type_name: &str, id: &str, association: &str, side: Side) -> usize {
    let def = inst.schema().association(association).unwrap();
    if def.role(side).entity_type != type_name {
        return 0;
    }
    inst.links()
        .filter(|l| l.association == association)
        .filter(|l| match side {
            Side::First => l.from == id,
            Side::Second => l.to == id,
        })
        .count()
}

/// Expected below-min / above-max findings as
/// `(kind, type, id, association, role)`.
pub fn expected_cardinality_findings(inst: &ErInstance) -> BTreeSet<(String, String, String, String, String)> {
    let mut out = BTreeSet::new();
    for e in inst.entities() {
        for a in &inst.schema().associations {
            for side in [Side::First, Side::Second] {
                let role = a.role(side);
                if role.entity_type != e.type_name {
                    continue;
                }
                let n = recount(inst, &e.type_name, &e.id, &a.name, side);
                let key = |k: &str| (k.to_owned(), e.type_name.clone(), e.id.clone(), a.name.clone(), role.name.clone());
                if n < role.cardinality.min as usize {
                    out.insert(key("below-min"));
                }
                if role.cardinality.bounded_max().is_some_and(|m| n > m as usize) {
                    out.insert(key("above-max"));
                }
            }
        }
    }
    out
}

/// Out-of-dialect content of a termbase, counted from scratch:
/// kind -> count, zero counts omitted.
pub fn tbx_loss_census(inst: &ErInstance) -> BTreeMap<String, usize> {
    let dropped_types = ["Frame", "FrameElement", "TextSource", "Collection"];
    let dropped_links = [
        "Evokes",
        "HasElement",
        "FilledBy",
        "OccursIn",
        "PartOfCollection",
        "ConnectedTo",
        "ConsistsOf",
        "IsA",
        "Group",
    ];
    let mut out = BTreeMap::new();
    for e in inst.entities() {
        if dropped_types.contains(&e.type_name.as_str()) {
            *out.entry(e.type_name.clone()).or_default() += 1;
        }
        if e.type_name == "Characteristic"
            && !inst.links().any(|l| l.association == "Delineated" && l.to == e.id)
        {
            *out.entry("Characteristic".to_owned()).or_default() += 1;
        }
    }
    for l in inst.links() {
        if dropped_links.contains(&l.association.as_str()) {
            *out.entry(l.association.clone()).or_default() += 1;
        }
    }
    out
}

/// Model of the superordinate relation used to decide, independently of
/// the builder, whether `set_superordinate(child, parent)` must succeed.
#[derive(Debug, Default, Clone)]
pub struct HierarchyOracle {
    parent: HashMap<String, String>,
}

impl HierarchyOracle {
    pub fn accepts(&self, child: &str, parent: &str) -> bool {
        if child == parent || self.parent.contains_key(child) {
            return false;
        }
        // walk up from parent; reaching child would close a cycle
        let mut cur = parent;
        let mut steps = 0;
        while let Some(p) = self.parent.get(cur) {
            if p == child {
                return false;
            }
            cur = p;
            steps += 1;
            assert!(steps <= self.parent.len(), "oracle state has a cycle");
        }
        true
    }

    pub fn record(&mut self, child: &str, parent: &str) {
        self.parent.insert(child.to_owned(), parent.to_owned());
    }
}

/// True when no concept has two superordinates and no ancestor walk
/// revisits a concept.
pub fn is_forest(inst: &ErInstance) -> bool {
    let mut parents: HashMap<&str, Vec<&str>> = HashMap::new();
    for l in inst.links().filter(|l| l.association == "Hierarchical") {
        parents.entry(l.to.as_str()).or_default().push(l.from.as_str());
    }
    if parents.values().any(|p| p.len() > 1) {
        return false;
    }
    for start in parents.keys() {
        let mut seen = BTreeSet::new();
        let mut cur = *start;
        while let Some(p) = parents.get(cur) {
            if !seen.insert(cur) {
                return false;
            }
            cur = p[0];
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum NtObject {
    Iri(String),
    Literal(String),
}

/// Minimal N-Triples line parser: `<s> <p> <o> .` or `<s> <p> "lit" .`
/// with the canonical string escapes.
pub fn parse_ntriples_line(line: &str) -> Result<(String, String, NtObject), String> {
    fn iri(s: &str) -> Result<(String, &str), String> {
        let s = s.strip_prefix('<').ok_or("expected <")?;
        let end = s.find('>').ok_or("unterminated IRI")?;
        let body = &s[..end];
        if body.is_empty()
            || body.chars().any(|c| c <= ' ' || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`' | '\\'))
            || !body.contains(':')
        {
            return Err(format!("bad IRI {body:?}"));
        }
        Ok((body.to_owned(), &s[end + 1..]))
    }
    fn space(s: &str) -> Result<&str, String> {
        s.strip_prefix(' ').ok_or_else(|| "expected single space".to_owned())
    }
    let (subject, rest) = iri(line)?;
    let (predicate, rest) = iri(space(rest)?)?;
    let rest = space(rest)?;
    let (object, rest) = if rest.starts_with('<') {
        let (o, r) = iri(rest)?;
        (NtObject::Iri(o), r)
    } else {
        let mut chars = rest.strip_prefix('"').ok_or("expected object")?.char_indices();
        let mut lit = String::new();
        let tail;
        loop {
            let (i, c) = chars.next().ok_or("unterminated literal")?;
            match c {
                '"' => {
                    tail = &rest[1 + i + 1..];
                    break;
                }
                '\\' => {
                    let (_, e) = chars.next().ok_or("dangling escape")?;
                    match e {
                        '"' => lit.push('"'),
                        '\\' => lit.push('\\'),
                        'n' => lit.push('\n'),
                        'r' => lit.push('\r'),
                        't' => lit.push('\t'),
                        'u' => {
                            let hex: String = (0..4).map(|_| chars.next().map(|(_, h)| h).unwrap_or('?')).collect();
                            let v = u32::from_str_radix(&hex, 16).map_err(|_| "bad \\u escape")?;
                            lit.push(char::from_u32(v).ok_or("bad code point")?);
                        }
                        other => return Err(format!("unknown escape \\{other}")),
                    }
                }
                '\n' | '\r' => return Err("raw line break in literal".into()),
                c => lit.push(c),
            }
        }
        (NtObject::Literal(lit), tail)
    };
    if rest != " ." {
        return Err(format!("expected ' .' terminator, found {rest:?}"));
    }
    Ok((subject, predicate, object))
}

/// Inserts every entity and link of a termbase into the tables of the
/// emitted DDL. Column layout is written out by hand rather than taken from
/// the mapping code.
pub fn sql_load(conn: &rusqlite::Connection, inst: &ErInstance) -> rusqlite::Result<()> {
    use rusqlite::params;

    let single = |assoc: &str, to: &str| -> Option<String> {
        inst.links().find(|l| l.association == assoc && l.to == to).map(|l| l.from.clone())
    };
    let owner_of = |assoc: &str, from: &str| -> Option<String> {
        inst.links().find(|l| l.association == assoc && l.from == from).map(|l| l.to.clone())
    };
    for e in inst.entities() {
        let a = |k: &str| e.attrs.get(k).cloned();
        match e.type_name.as_str() {
            "Concept" => conn.execute(
                "INSERT INTO concept (id, superordinate) VALUES (?1, ?2)",
                params![e.id, single("Hierarchical", &e.id)],
            )?,
            "Term" => conn.execute(
                "INSERT INTO term (id, definition, designation, language, denoting_concept) VALUES (?1, ?2, ?3, ?4, ?5)",
                params![e.id, a("definition"), a("designation"), a("language"), single("Denoted", &e.id)],
            )?,
            "Characteristic" => conn.execute(
                "INSERT INTO characteristic (name, variety) VALUES (?1, ?2)",
                params![e.id, a("variety")],
            )?,
            "Collection" => conn.execute(
                "INSERT INTO collection (id, name) VALUES (?1, ?2)",
                params![e.id, a("name")],
            )?,
            "TextSource" => conn.execute(
                "INSERT INTO text_source (id, title, holding_collection) VALUES (?1, ?2, ?3)",
                params![e.id, a("title"), owner_of("PartOfCollection", &e.id)],
            )?,
            "Frame" => conn.execute("INSERT INTO frame (id, name) VALUES (?1, ?2)", params![e.id, a("name")])?,
            "FrameElement" => conn.execute(
                "INSERT INTO frame_element (id, name, owning_frame) VALUES (?1, ?2, ?3)",
                params![e.id, a("name"), single("HasElement", &e.id)],
            )?,
            other => panic!("unexpected entity type {other}"),
        };
    }
    for l in inst.links() {
        let table = match l.association.as_str() {
            "Denoted" | "Hierarchical" | "HasElement" | "PartOfCollection" => continue,
            "ConnectedTo" => "connected_to",
            "ConsistsOf" => "consists_of",
            "Delineated" => "delineated",
            "Evokes" => "evokes",
            "FilledBy" => "filled_by",
            "Generic" => "generic",
            "Group" => "group_",
            "IsA" => "is_a",
            "OccursIn" => "occurs_in",
            other => panic!("unexpected association {other}"),
        };
        conn.execute(&format!("INSERT INTO {table} VALUES (?1, ?2)"), params![l.from, l.to])?;
    }
    Ok(())
}

/// Expected N-Triples line count from the plan: one type triple per
/// entity, one per set non-identifier attribute, one per link.
pub fn expected_triples(plan: &Plan) -> usize {
    let attrs: usize = plan
        .entities
        .iter()
        .map(|e| match e {
            Ent::Concept(_) => 0,
            Ent::Term { definition, .. } => 2 + definition.is_some() as usize,
            Ent::Characteristic(..) | Ent::Frame(..) | Ent::FrameElement(..) => 1,
            Ent::TextSource(_, o) | Ent::Collection(_, o) => o.is_some() as usize,
        })
        .sum();
    plan.entities.len() + attrs + plan.links.len()
}
