//! Element classification: nilpotents, zero divisors, units.

use crate::bitset::ElemSet;
use crate::ring::FiniteRing;
use crate::Elem;

/// For each element, the least `n ≥ 1` with `aⁿ = 0`, or `None` when `a` is not nilpotent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotentProfile {
    index: Vec<Option<u32>>,
}

impl NilpotentProfile {
    pub fn index_of(&self, a: Elem) -> Option<u32> {
        self.index[a]
    }

    pub fn is_nilpotent(&self, a: Elem) -> bool {
        self.index[a].is_some()
    }

    /// Nilpotent elements in increasing index order.
    pub fn nilpotents(&self) -> impl Iterator<Item = Elem> + '_ {
        self.index
            .iter()
            .enumerate()
            .filter_map(|(a, n)| n.map(|_| a))
    }

    pub fn as_set(&self) -> ElemSet {
        ElemSet::from_elems(self.index.len(), self.nilpotents())
    }

    /// True when 0 is the only nilpotent.
    pub fn is_reduced(&self) -> bool {
        self.nilpotents().all(|a| a == 0)
    }

    /// Largest nilpotency index, i.e. the least `n` with `aⁿ = 0` for every nilpotent `a`.
    pub fn max_index(&self) -> u32 {
        self.index.iter().flatten().copied().max().unwrap_or(1)
    }
}

/// Scans powers of every element; the search is bounded by `|R|` since powers cycle.
pub fn nilpotent_profile(ring: &FiniteRing) -> NilpotentProfile {
    let index = ring
        .elements()
        .map(|a| {
            if ring.pow(a, ring.size() as u64) != 0 {
                return None;
            }
            let mut p = a;
            for n in 1..=ring.size() as u32 {
                if p == 0 {
                    return Some(n);
                }
                p = ring.mul(p, a);
            }
            None
        })
        .collect();
    NilpotentProfile { index }
}

/// Nonzero `a` with `ab = 0` for some nonzero `b`. Zero itself is excluded.
/// Units are skipped without a scan.
pub fn zero_divisor_set(ring: &FiniteRing) -> ElemSet {
    ElemSet::from_elems(
        ring.size(),
        ring.elements()
            .skip(1)
            .filter(|&a| !ring.is_unit(a) && (1..ring.size()).any(|b| ring.mul(a, b) == 0)),
    )
}

pub fn unit_set(ring: &FiniteRing) -> ElemSet {
    ElemSet::from_elems(ring.size(), ring.elements().filter(|&a| ring.is_unit(a)))
}

/// `(0 : a)`, the annihilator of one element.
pub fn annihilator(ring: &FiniteRing, a: Elem) -> ElemSet {
    ElemSet::from_elems(
        ring.size(),
        ring.elements().filter(|&r| ring.mul(r, a) == 0),
    )
}

/// Every nonzero element is invertible.
pub fn is_field(ring: &FiniteRing) -> bool {
    ring.elements().skip(1).all(|a| ring.is_unit(a))
}
