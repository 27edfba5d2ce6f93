//! Statement catalog, instance corpus, per-statement checks and
//! counterexample search.

mod catalog;
mod checks;
mod corpus;
mod search;

pub use catalog::{StatementId, Variant};
pub use checks::{
    armendariz_json, check_statement, decomposition, e_ring_instance, field_decomposition,
    ideal_json, idealization_instance, lits, poly_json, principal, witness_json, Decomposition,
    FieldDecomposition, HypothesisCheck, StatementReport, Verdict, DEGENERATE_NOTE, PAIR_SCOPE,
    S_ARTINIAN_NOTE,
};
pub use corpus::{
    curated_instances, generate_corpus, random_instance, ArmendarizPolicy, CorpusConfig,
    CorpusFilter, Instance,
};
pub use search::{counterexample_search, shrink_candidates, verify_catalog, SearchOutcome};
