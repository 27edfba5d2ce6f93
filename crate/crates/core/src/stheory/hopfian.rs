use serde::Serialize;

use crate::bitset::ElemSet;
use crate::lattice::MultiplicativeSet;
use crate::ring::{annihilator, FiniteRing};
use crate::Elem;

/// Stationarity data for the chain `ann(a) ⊆ ann(a²) ⊆ …`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HopfianEntry {
    pub element: Elem,
    /// Least `k` for which some `s` has `s·ann(aⁿ) ⊆ ann(aᵏ)` for all `n ≥ k`.
    pub k: u32,
    /// Least such `s` for that `k`.
    pub s: Elem,
    /// First `m` with `ann(aᵐ) = ann(aᵐ⁺¹)`.
    pub stable_index: u32,
    /// Least `s` with `s·ann(aⁿ⁺¹) ⊆ ann(aⁿ)` for every `n ≥ 1`.
    pub shift_s: Option<Elem>,
}

/// `ann(a¹), …, ann(aᵐ⁺¹)` where `m` is the stabilization point.
pub fn annihilator_chain(ring: &FiniteRing, a: Elem) -> Vec<ElemSet> {
    let mut chain = vec![annihilator(ring, a)];
    let mut p = a;
    loop {
        p = ring.mul(p, a);
        let next = annihilator(ring, p);
        let done = &next == chain.last().unwrap();
        chain.push(next);
        if done {
            return chain;
        }
    }
}

fn scaled_within(ring: &FiniteRing, s: Elem, from: &ElemSet, into: &ElemSet) -> bool {
    from.iter().all(|x| into.contains(ring.mul(s, x)))
}

pub fn hopfian_entry(ring: &FiniteRing, s: &MultiplicativeSet, a: Elem) -> HopfianEntry {
    let chain = annihilator_chain(ring, a);
    let stable_index = (chain.len() - 1) as u32;
    // chain[n-1] = ann(aⁿ); beyond the end the chain is constant.
    let (k, witness) = (1..=chain.len())
        .find_map(|k| {
            s.elems()
                .iter()
                .copied()
                .find(|&t| {
                    chain[k - 1..]
                        .iter()
                        .all(|big| scaled_within(ring, t, big, &chain[k - 1]))
                })
                .map(|t| (k as u32, t))
        })
        .expect("s = 1 certifies at the stabilization point");
    let shift_s = s.elems().iter().copied().find(|&t| {
        chain
            .windows(2)
            .all(|w| scaled_within(ring, t, &w[1], &w[0]))
    });
    HopfianEntry {
        element: a,
        k,
        s: witness,
        stable_index,
        shift_s,
    }
}

/// One entry per ring element, in index order.
pub fn s_strongly_hopfian_profile(ring: &FiniteRing, s: &MultiplicativeSet) -> Vec<HopfianEntry> {
    ring.elements().map(|a| hopfian_entry(ring, s, a)).collect()
}
