//! Fixed instances shared by the benchmarks.

use sring_core::harness::Instance;
use sring_core::{build_ring, RingExpression};

/// `Z_n` with `S` generated by `gens`.
pub fn zmod(n: u64, gens: &[usize]) -> Instance {
    let ring = build_ring(&RingExpression::zmod(n), 4096).expect("Z_n");
    Instance::from_elems(0, ring, gens).expect("multiplicative set")
}

/// `Z_n x Z_m`, `S` generated by `[1,0]`.
pub fn split_product(n: u64, m: u64) -> Instance {
    let expr = RingExpression::Product {
        factors: vec![RingExpression::zmod(n), RingExpression::zmod(m)],
    };
    let ring = build_ring(&expr, 4096).expect("product");
    let e = ring.join_product(&[1, 0]).unwrap();
    Instance::from_elems(0, ring, &[e]).expect("multiplicative set")
}
