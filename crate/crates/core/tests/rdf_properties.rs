mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::{expected_triples, gen_plan, parse_ntriples_line, rng, GenConfig, NtObject};
use termbase_core::rdf::{to_ntriples, IriScheme, RDF_TYPE};
use termbase_core::termmodel::denotation_example;

fn scheme() -> IriScheme {
    IriScheme::new("https://example.org/terms").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn line_count_follows_formula(seed in any::<u64>()) {
        let plan = gen_plan(&mut rng(seed), GenConfig::FULL);
        let out = to_ntriples(&plan.build(), &scheme()).unwrap();
        prop_assert_eq!(out.lines().count(), expected_triples(&plan));
    }

    #[test]
    fn permuted_construction_is_byte_identical(seed in any::<u64>()) {
        let plan = gen_plan(&mut rng(seed), GenConfig::FULL);
        let a = to_ntriples(&plan.build_in_order(Some(&mut rng(seed ^ 7))), &scheme()).unwrap();
        let b = to_ntriples(&plan.build_in_order(Some(&mut rng(seed ^ 9))), &scheme()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn every_line_parses_and_lines_are_sorted(seed in any::<u64>()) {
        let inst = gen_plan(&mut rng(seed), GenConfig::FULL).build();
        let out = to_ntriples(&inst, &scheme()).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        let mut sorted = lines.clone();
        sorted.sort();
        prop_assert_eq!(&lines, &sorted);
        let mut subjects = BTreeSet::new();
        for l in &lines {
            let (s, p, o) = parse_ntriples_line(l).map_err(|e| TestCaseError::fail(format!("{e}: {l}")))?;
            if p == RDF_TYPE {
                prop_assert!(subjects.insert(s), "two type triples for one subject");
                prop_assert!(matches!(o, NtObject::Iri(_)));
            }
        }
        // entity IRIs are injective
        prop_assert_eq!(subjects.len(), inst.entity_count());
    }

    #[test]
    fn literals_survive_escaping(seed in any::<u64>()) {
        let inst = gen_plan(&mut rng(seed), GenConfig::FULL).build();
        let out = to_ntriples(&inst, &scheme()).unwrap();
        let literals: BTreeSet<String> = out
            .lines()
            .filter_map(|l| match parse_ntriples_line(l).unwrap().2 {
                NtObject::Literal(s) => Some(s),
                NtObject::Iri(_) => None,
            })
            .collect();
        for e in inst.entities() {
            for v in e.attrs.values() {
                prop_assert!(literals.contains(v), "missing literal {:?}", v);
            }
        }
    }
}

#[test]
fn denotation_example_has_fourteen_triples() {
    let out = to_ntriples(&denotation_example(), &scheme()).unwrap();
    assert_eq!(out.lines().count(), 14);
    assert!(out.contains(
        "<https://example.org/terms/Concept/c1> <https://example.org/terms/schema#Denoted> <https://example.org/terms/Term/t1> .\n"
    ));
}

#[test]
fn bad_bases_are_refused() {
    for base in ["", "example.org", "http://", "http://x/", "http://x#f", "http://x/a b"] {
        assert!(IriScheme::new(base).is_err(), "{base:?} accepted");
    }
}
