use std::cmp::Ordering;
use std::collections::HashMap;

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::ring::{generated_members, FiniteRing};
use crate::Elem;

/// Default bound on the number of ideals `enumerate_ideals` will produce.
pub const DEFAULT_IDEAL_CAP: usize = 4096;

/// An ideal of a finite ring: a member bitset plus a generating list.
///
/// Equality and ordering look only at the members.
#[derive(Clone, Debug)]
pub struct Ideal {
    members: ElemSet,
    generators: Vec<Elem>,
    ring_id: u64,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Ideal {}

impl Ord for Ideal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members.cmp(&other.members)
    }
}

impl PartialOrd for Ideal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ideal {
    /// Wraps a member set already known to be an ideal, choosing generators
    /// greedily in increasing index order.
    pub fn from_members(ring: &FiniteRing, members: ElemSet) -> Self {
        debug_assert!(is_ideal_set(ring, &members));
        let mut generators = Vec::new();
        let mut span = ElemSet::from_elems(ring.size(), [0]);
        for x in members.iter() {
            if !span.contains(x) {
                generators.push(x);
                span = ring.sum_members(&span, &ring.principal_members(x));
                if span == members {
                    break;
                }
            }
        }
        Self {
            members,
            generators,
            ring_id: ring.id(),
        }
    }

    pub fn zero(ring: &FiniteRing) -> Self {
        Self {
            members: ElemSet::from_elems(ring.size(), [0]),
            generators: Vec::new(),
            ring_id: ring.id(),
        }
    }

    pub fn unit(ring: &FiniteRing) -> Self {
        Self {
            members: ElemSet::full(ring.size()),
            generators: vec![ring.one()],
            ring_id: ring.id(),
        }
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
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
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_unit(&self) -> bool {
        self.members.is_full()
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit()
    }

    pub fn elements(&self) -> Vec<Elem> {
        self.members.to_vec()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, ring: &FiniteRing, other: &Ideal) -> Ideal {
        Ideal::from_members(ring, self.members.intersection(&other.members))
    }

    pub fn sum(&self, ring: &FiniteRing, other: &Ideal) -> Ideal {
        let mut generators = self.generators.clone();
        generators.extend(
            other
                .generators
                .iter()
                .filter(|g| !self.generators.contains(g)),
        );
        Ideal {
            members: ring.sum_members(&self.members, &other.members),
            generators,
            ring_id: ring.id(),
        }
    }

    /// `IJ`, generated by all products `ij`.
    pub fn product(&self, ring: &FiniteRing, other: &Ideal) -> Ideal {
        let mut gens = Vec::new();
        for &a in &self.generators {
            for &b in &other.generators {
                gens.push(ring.mul(a, b));
            }
        }
        ideal_generated(ring, &gens)
    }

    /// `sI = {s·i | i ∈ I}`, as a member set.
    pub fn scaled(&self, ring: &FiniteRing, s: Elem) -> ElemSet {
        ElemSet::from_elems(ring.size(), self.members.iter().map(|i| ring.mul(s, i)))
    }
}

/// Closure test: contains 0, closed under addition and negation, absorbs products.
pub fn is_ideal_set(ring: &FiniteRing, set: &ElemSet) -> bool {
    if !set.contains(0) {
        return false;
    }
    let elems = set.to_vec();
    elems.iter().all(|&a| {
        set.contains(ring.neg(a))
            && elems.iter().all(|&b| set.contains(ring.add(a, b)))
            && ring.elements().all(|r| set.contains(ring.mul(r, a)))
    })
}

/// Smallest ideal containing `gens`.
pub fn ideal_generated(ring: &FiniteRing, gens: &[Elem]) -> Ideal {
    let mut generators: Vec<Elem> = gens.iter().copied().filter(|&g| g != 0).collect();
    generators.dedup();
    Ideal {
        members: generated_members(ring, &generators),
        generators,
        ring_id: ring.id(),
    }
}

/// `(I : J) = {r | rJ ⊆ I}`. Checking the generators of `J` suffices.
pub fn colon(ring: &FiniteRing, i: &Ideal, j: &Ideal) -> Ideal {
    let members = ElemSet::from_elems(
        ring.size(),
        ring.elements()
            .filter(|&r| j.generators.iter().all(|&g| i.contains(ring.mul(r, g)))),
    );
    Ideal::from_members(ring, members)
}

/// `(I : x) = {r | rx ∈ I}`.
pub fn colon_elem(ring: &FiniteRing, i: &Ideal, x: Elem) -> Ideal {
    Ideal::from_members(ring, colon_members(ring, i.members(), x))
}

pub(crate) fn colon_members(ring: &FiniteRing, i: &ElemSet, x: Elem) -> ElemSet {
    ElemSet::from_elems(
        ring.size(),
        ring.elements().filter(|&r| i.contains(ring.mul(r, x))),
    )
}

/// Proper, and `ab ∈ I` forces `a ∈ I` or `b ∈ I`.
pub fn is_prime_ideal(ring: &FiniteRing, i: &Ideal) -> bool {
    is_prime_members(ring, i.members())
}

pub(crate) fn is_prime_members(ring: &FiniteRing, members: &ElemSet) -> bool {
    if members.is_full() {
        return false;
    }
    let outside = members.complement().to_vec();
    outside
        .iter()
        .all(|&a| outside.iter().all(|&b| !members.contains(ring.mul(a, b))))
}

/// Every ideal of the ring exactly once, ordered by size then member list.
///
/// Starts from the principal ideals and closes under sums with principal
/// ideals, which reaches every finite sum of principal ideals.
pub fn enumerate_ideals(ring: &FiniteRing, cap: usize) -> Result<Vec<Ideal>> {
    let mut principals: Vec<(ElemSet, Elem)> = Vec::new();
    let mut seen_principal: HashMap<ElemSet, ()> = HashMap::new();
    for a in ring.elements() {
        let p = ring.principal_members(a);
        if seen_principal.insert(p.clone(), ()).is_none() {
            principals.push((p, a));
        }
    }

    let mut found: HashMap<ElemSet, Vec<Elem>> = HashMap::new();
    let mut work: Vec<ElemSet> = Vec::new();
    for (p, a) in &principals {
        let gens = if *a == 0 { vec![] } else { vec![*a] };
        found.insert(p.clone(), gens);
        work.push(p.clone());
    }
    if found.len() > cap {
        return Err(Error::IdealCapExceeded { cap });
    }
    while let Some(current) = work.pop() {
        for (p, a) in &principals {
            if p.is_subset(&current) {
                continue;
            }
            let next = ring.sum_members(&current, p);
            if !found.contains_key(&next) {
                let mut gens = found[&current].clone();
                gens.push(*a);
                found.insert(next.clone(), gens);
                if found.len() > cap {
                    return Err(Error::IdealCapExceeded { cap });
                }
                work.push(next);
            }
        }
    }

    let mut ideals: Vec<Ideal> = found
        .into_iter()
        .map(|(members, generators)| Ideal {
            members,
            generators,
            ring_id: ring.id(),
        })
        .collect();
    ideals.sort();
    Ok(ideals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_ring, RingExpression};
    use std::sync::Arc;

    fn z(n: u64) -> Arc<FiniteRing> {
        build_ring(&RingExpression::zmod(n), 4096).unwrap()
    }

    fn multiples(d: usize, n: usize) -> Vec<usize> {
        (0..n).filter(|x| x % d == 0).collect()
    }

    // Oracle: additive closure of {r*g} by repeated pairwise sums until stable.
    fn closure_oracle(n: usize, gens: &[usize]) -> Vec<usize> {
        let mut set: std::collections::BTreeSet<usize> = [0].into();
        for &g in gens {
            for r in 0..n {
                set.insert(r * g % n);
            }
        }
        loop {
            let snapshot: Vec<usize> = set.iter().copied().collect();
            let before = set.len();
            for &a in &snapshot {
                for &b in &snapshot {
                    set.insert((a + b) % n);
                }
            }
            if set.len() == before {
                return snapshot;
            }
        }
    }

    #[test]
    fn generated_ideals_in_z24() {
        let r = z(24);
        assert_eq!(
            ideal_generated(&r, &[3]).elements(),
            closure_oracle(24, &[3])
        );
        assert_eq!(
            ideal_generated(&r, &[3]).elements(),
            vec![0, 3, 6, 9, 12, 15, 18, 21]
        );
        assert_eq!(ideal_generated(&r, &[]).elements(), vec![0]);
        assert_eq!(
            ideal_generated(&r, &[8, 6]).elements(),
            closure_oracle(24, &[8, 6])
        );
        assert_eq!(ideal_generated(&r, &[8, 6]).elements(), multiples(2, 24));
    }

    #[test]
    fn ideals_of_z24_match_divisors() {
        let r = z(24);
        let ideals = enumerate_ideals(&r, DEFAULT_IDEAL_CAP).unwrap();
        assert_eq!(ideals.len(), 8);
        let mut by_divisor: Vec<Vec<usize>> = [1, 2, 3, 4, 6, 8, 12, 24]
            .iter()
            .map(|&d| multiples(d, 24))
            .collect();
        by_divisor.sort_by_key(|v| v.len());
        let mut got: Vec<Vec<usize>> = ideals.iter().map(|i| i.elements()).collect();
        got.sort_by_key(|v| v.len());
        assert_eq!(got, by_divisor);
        for i in &ideals {
            assert!(is_ideal_set(&r, i.members()));
            assert_eq!(&ideal_generated(&r, i.generators()), i);
        }
    }

    #[test]
    fn ideals_of_field_and_klein() {
        assert_eq!(enumerate_ideals(&z(7), 16).unwrap().len(), 2);
        let k = build_ring(
            &RingExpression::product(vec![RingExpression::zmod(2), RingExpression::zmod(2)]),
            16,
        )
        .unwrap();
        let ideals = enumerate_ideals(&k, 16).unwrap();
        // Oracle: every additive subgroup of Z_2 x Z_2 that absorbs multiplication.
        let mut oracle = 0;
        for mask in 0u32..16 {
            let set = ElemSet::from_elems(4, (0..4).filter(|e| mask & (1 << e) != 0));
            if is_ideal_set(&k, &set) {
                oracle += 1;
            }
        }
        assert_eq!(ideals.len(), oracle);
        assert_eq!(ideals.len(), 4);
    }

    #[test]
    fn ideal_cap() {
        assert_eq!(
            enumerate_ideals(&z(24), 4).unwrap_err(),
            Error::IdealCapExceeded { cap: 4 }
        );
    }

    #[test]
    fn colon_examples() {
        let r12 = z(12);
        let i3 = ideal_generated(&r12, &[3]);
        assert_eq!(colon_elem(&r12, &i3, 2).elements(), vec![0, 3, 6, 9]);
        assert_eq!(colon_elem(&r12, &i3, 1), i3);
        let r24 = z(24);
        assert_eq!(
            colon_elem(&r24, &Ideal::zero(&r24), 8).elements(),
            multiples(3, 24)
        );
    }

    #[test]
    fn prime_examples() {
        let r = z(24);
        assert!(is_prime_ideal(&r, &ideal_generated(&r, &[3])));
        assert!(!is_prime_ideal(&r, &ideal_generated(&r, &[6])));
        assert!(!is_prime_ideal(&r, &Ideal::unit(&r)));
    }

    #[test]
    fn colon_by_ideal_agrees_with_colon_by_element() {
        let r = z(36);
        for i in enumerate_ideals(&r, 64).unwrap() {
            for x in r.elements() {
                let by_elem = colon_elem(&r, &i, x);
                assert!(i.is_subset(&by_elem));
                assert_eq!(colon(&r, &i, &ideal_generated(&r, &[x])), by_elem);
            }
        }
    }

    #[test]
    fn product_and_intersection() {
        let r = z(24);
        let a = ideal_generated(&r, &[4]);
        let b = ideal_generated(&r, &[6]);
        assert_eq!(a.product(&r, &b).elements(), vec![0]);
        assert_eq!(a.intersection(&r, &b).elements(), vec![0, 12]);
        assert_eq!(a.sum(&r, &b).elements(), multiples(2, 24));
    }
}
