//! Finite commutative rings: construction, element arithmetic, classification
//! and bounded-degree polynomials.

mod classify;
mod expr;
mod finite;
mod poly;

pub use classify::{
    annihilator, is_field, nilpotent_profile, unit_set, zero_divisor_set, NilpotentProfile,
};
pub use expr::{ModuleSpec, RingExpression};
pub(crate) use finite::generated_members;
pub use finite::{
    build_ring, self_idealization, FiniteRing, AXIOM_SAMPLES, DEFAULT_SIZE_CAP, TABLE_LIMIT,
};
pub use poly::{poly_multiply, Polynomial};
