//! Exact computation over finite commutative rings equipped with a
//! multiplicative set `S`.
//!
//! Rings are built from [`RingExpression`] trees (`Z_n`, products, quotients,
//! idealizations and the triangular ring `E(R)`), elements are plain indices,
//! and every S-theoretic predicate returns an explicit, re-checkable witness.
//! The [`harness`] module compiles a catalog of structural statements into
//! checks that run over a deterministic corpus of instances.

pub mod bitset;
pub mod error;
pub mod harness;
pub mod lattice;
pub mod ring;
pub mod stheory;

/// Canonical index of a ring element, `0..ring.size()`. Index 0 is zero.
pub type Elem = usize;

pub use bitset::ElemSet;
pub use error::{Error, Result};
pub use lattice::{Ideal, MultiplicativeSet, SPrimeWitness};
pub use ring::{build_ring, FiniteRing, Polynomial, RingExpression};
