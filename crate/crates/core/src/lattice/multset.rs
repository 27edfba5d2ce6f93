use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::ring::FiniteRing;
use crate::Elem;

/// A multiplicatively closed subset containing 1.
///
/// Zero is rejected unless the set was built with `allow_zero`; such a set is
/// *degenerate* and every S-predicate collapses to its trivial verdict on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicativeSet {
    members: ElemSet,
    elems: Vec<Elem>,
    generators: Vec<Elem>,
    ring_id: u64,
}

impl MultiplicativeSet {
    /// `{1}`.
    pub fn trivial(ring: &FiniteRing) -> Self {
        Self::from_closed(
            ring,
            ElemSet::from_elems(ring.size(), [ring.one()]),
            Vec::new(),
        )
    }

    fn from_closed(ring: &FiniteRing, members: ElemSet, generators: Vec<Elem>) -> Self {
        Self {
            elems: members.to_vec(),
            members,
            generators,
            ring_id: ring.id(),
        }
    }

    /// Wraps an already closed set containing 1 (e.g. the image of a
    /// multiplicative set under a ring homomorphism).
    pub fn from_members(
        ring: &FiniteRing,
        members: ElemSet,
        generators: Vec<Elem>,
        allow_zero: bool,
    ) -> Result<Self> {
        debug_assert!(members.contains(ring.one()));
        debug_assert!(members
            .iter()
            .all(|a| members.iter().all(|b| members.contains(ring.mul(a, b)))));
        if members.contains(0) && !allow_zero {
            return Err(Error::ZeroInClosure);
        }
        Ok(Self::from_closed(ring, members, generators))
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    /// Members in increasing index order.
    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn ring_id(&self) -> u64 {
        self.ring_id
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// `0 ∈ S`.
    pub fn is_degenerate(&self) -> bool {
        self.members.contains(0)
    }

    /// Product of every member. In a finite ring this single element kills
    /// anything some member of `S` kills.
    pub fn absorbing_element(&self, ring: &FiniteRing) -> Elem {
        self.elems
            .iter()
            .fold(ring.one(), |acc, &s| ring.mul(acc, s))
    }
}

/// Smallest multiplicatively closed set containing `gens ∪ {1}`.
pub fn mult_closure(
    ring: &FiniteRing,
    gens: &[Elem],
    allow_zero: bool,
) -> Result<MultiplicativeSet> {
    for &g in gens {
        if g >= ring.size() {
            return Err(Error::ElementOutOfRange {
                elem: g,
                size: ring.size(),
            });
        }
    }
    let mut members = ElemSet::from_elems(ring.size(), [ring.one()]);
    let mut frontier = vec![ring.one()];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = ring.mul(x, g);
            if members.insert(y) {
                frontier.push(y);
            }
        }
    }
    if members.contains(0) && !allow_zero {
        return Err(Error::ZeroInClosure);
    }
    Ok(MultiplicativeSet::from_closed(ring, members, gens.to_vec()))
}
