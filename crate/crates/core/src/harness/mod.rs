//! Corpus handling, verification suites and counterexample search.

mod corpus;
mod query;
mod search;
mod suites;

pub use corpus::{Corpus, CorpusEntry, CorpusError, Expectation, Instance};
pub use query::{parse_query, Query};
pub use search::{family_specs, search_instances, search_strictness, SearchHit, SearchReport};
pub use suites::{
    verify, verify_axioms, verify_base_change, verify_chain, verify_content, verify_dichotomy, verify_direct_sum,
    verify_hom_factorization, verify_lemma38, verify_localization, verify_oracle_equivalence, verify_split_identity,
    verify_structure, verify_trivext, verify_trivext_with, verify_wdim, verify_zanardo, CapHit, Failure,
    VerificationReport, SUITES,
};
