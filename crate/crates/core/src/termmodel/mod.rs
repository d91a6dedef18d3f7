//! The unified terminology schema and everything built on it: typed
//! builders, termbase validation, approach views and queries.

mod builder;
mod query;
mod schema;
mod validate;
mod view;

pub use builder::{TermError, Termbase};
pub use query::{formal_definition, homographs};
pub use schema::{
    assoc, is_terminology_schema, role, terminology_schema, ty, ConceptRelation, Variety,
    SCHEMA_NAME, SCHEMA_VERSION,
};
pub use validate::validate_termbase;
pub use view::{view, Approach, Projection};

/// The two-concept, three-term denotation example: `c1` denoted by `t1`
/// and `t2`, `c2` denoted by `t3`.
pub fn denotation_example() -> Termbase {
    let mut tb = Termbase::new();
    for c in ["c1", "c2"] {
        tb.add_concept(c).expect("fresh id");
    }
    for (t, d) in [("t1", "automobile"), ("t2", "car"), ("t3", "bicycle")] {
        tb.add_term(t, d, "en", None).expect("fresh id");
    }
    for (c, t) in [("c1", "t1"), ("c1", "t2"), ("c2", "t3")] {
        tb.denote(c, t).expect("unassigned term");
    }
    tb
}
