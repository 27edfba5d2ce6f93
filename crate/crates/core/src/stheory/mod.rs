//! S-theoretic predicates with explicit witnesses.
//!
//! Witnesses are always the least qualifying index. When `0 ∈ S` the least
//! witness is 0 itself, so each predicate collapses to its trivial verdict and
//! reports the set as degenerate.

mod armendariz;
mod hopfian;
mod localize;
mod pure;
mod reduced;

pub use armendariz::{
    chunk_seed, exhaustive_cost, is_u_s_armendariz_up_to, random_solution, zero_product_poly_pairs,
    ArmendarizVerdict, ArmendarizViolation, PairStream, SearchMode, SAMPLE_CHUNKS,
};
pub use hopfian::{annihilator_chain, hopfian_entry, s_strongly_hopfian_profile, HopfianEntry};
pub use localize::{localize, s_torsion, LocalizationResult};
pub use pure::{is_s_pf, is_s_pure, SPfVerdict, SPureVerdict};
pub use reduced::{
    is_s_integral_domain, is_s_reduced, is_s_zero_element, is_s_zero_ideal, is_u_s_reduced,
    SReducedCertificate, SZeroIdealVerdict,
};
