//! S-radicals, S-prime ideals and the S-prime spectrum.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::ideal::{colon_members, enumerate_ideals, is_prime_members, Ideal};
use super::multset::MultiplicativeSet;
use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::ring::FiniteRing;
use crate::Elem;

/// `√[S]{I} = {a | s·aⁿ ∈ I for some s ∈ S, n ≥ 1}` with a witness per member.
#[derive(Clone, Debug)]
pub struct SRadical {
    pub ideal: Ideal,
    /// Member `a` ↦ `(s, n)` with `s·aⁿ ∈ I`; least `n`, then least `s`.
    pub witnesses: BTreeMap<Elem, (Elem, u32)>,
    /// Whether the input ideal equals its S-radical.
    pub is_s_radical: bool,
}

pub fn s_radical(ring: &FiniteRing, s: &MultiplicativeSet, i: &Ideal) -> SRadical {
    // kill[p] = least s with s·p ∈ I.
    let mut kill: Vec<Option<Elem>> = vec![None; ring.size()];
    for &t in s.elems() {
        for p in ring.elements() {
            if kill[p].is_none() && i.contains(ring.mul(t, p)) {
                kill[p] = Some(t);
            }
        }
    }
    let mut witnesses = BTreeMap::new();
    for a in ring.elements() {
        let mut p = a;
        for n in 1..=ring.size() as u32 {
            if let Some(t) = kill[p] {
                witnesses.insert(a, (t, n));
                break;
            }
            p = ring.mul(p, a);
        }
    }
    let members = ElemSet::from_elems(ring.size(), witnesses.keys().copied());
    let is_s_radical = &members == i.members();
    SRadical {
        ideal: Ideal::from_members(ring, members),
        witnesses,
        is_s_radical,
    }
}

/// `Nil_S(R)`, the S-radical of the zero ideal.
pub fn s_nilradical(ring: &FiniteRing, s: &MultiplicativeSet) -> SRadical {
    s_radical(ring, s, &Ideal::zero(ring))
}

/// Certificate that `ideal` is S-prime.
#[derive(Clone, Debug)]
pub struct SPrimeWitness {
    pub ideal: Ideal,
    /// Least `s` with `ab ∈ P ⇒ sa ∈ P or sb ∈ P` for all `a, b`.
    pub witness_s: Elem,
    /// Least `s'` for which `(P : s')` is prime, found independently.
    pub colon_s: Elem,
    pub colon_prime: Ideal,
    /// `s_P`: least `s` whose colon `(P : s)` contains every other `(P : s')`.
    pub stable_s: Elem,
}

fn admissible(s: &MultiplicativeSet, p: &Ideal) -> bool {
    p.is_proper() && p.members().is_disjoint(s.members())
}

/// Definitional test, returning the least witnessing `s`.
pub fn s_prime_definitional(ring: &FiniteRing, s: &MultiplicativeSet, p: &Ideal) -> Option<Elem> {
    if !admissible(s, p) {
        return None;
    }
    s.elems().iter().copied().find(|&t| {
        // Elements a with t·a ∉ P; a pair of them with ab ∈ P refutes t.
        let escaping: Vec<Elem> = ring
            .elements()
            .filter(|&a| !p.contains(ring.mul(t, a)))
            .collect();
        escaping
            .iter()
            .all(|&a| escaping.iter().all(|&b| !p.contains(ring.mul(a, b))))
    })
}

/// Colon criterion: the least `s` with `(P : s)` prime, and that colon ideal.
pub fn s_prime_by_colon(
    ring: &FiniteRing,
    s: &MultiplicativeSet,
    p: &Ideal,
) -> Option<(Elem, Ideal)> {
    if !admissible(s, p) {
        return None;
    }
    s.elems().iter().find_map(|&t| {
        let c = colon_members(ring, p.members(), t);
        is_prime_members(ring, &c).then(|| (t, Ideal::from_members(ring, c)))
    })
}

/// Runs both criteria; they must agree on the verdict.
pub fn is_s_prime(ring: &FiniteRing, s: &MultiplicativeSet, p: &Ideal) -> Option<SPrimeWitness> {
    let definitional = s_prime_definitional(ring, s, p);
    let by_colon = s_prime_by_colon(ring, s, p);
    assert_eq!(
        definitional.is_some(),
        by_colon.is_some(),
        "S-prime criteria disagree on {:?}",
        p.elements()
    );
    let (witness_s, (colon_s, colon_prime)) = (definitional?, by_colon?);
    let colons: Vec<(Elem, ElemSet)> = s
        .elems()
        .iter()
        .map(|&t| (t, colon_members(ring, p.members(), t)))
        .collect();
    let stable_s = colons
        .iter()
        .find(|(_, c)| colons.iter().all(|(_, other)| other.is_subset(c)))
        .map(|(t, _)| *t)
        .expect("the product of all of S has the largest colon");
    Some(SPrimeWitness {
        ideal: p.clone(),
        witness_s,
        colon_s,
        colon_prime,
        stable_s,
    })
}

/// All S-prime ideals in canonical ideal order.
pub fn s_spectrum(
    ring: &FiniteRing,
    s: &MultiplicativeSet,
    ideal_cap: usize,
) -> Result<Vec<SPrimeWitness>> {
    let ideals = enumerate_ideals(ring, ideal_cap)?;
    Ok(s_spectrum_of(ring, s, &ideals))
}

/// Same as [`s_spectrum`] over a precomputed ideal list.
pub fn s_spectrum_of(
    ring: &FiniteRing,
    s: &MultiplicativeSet,
    ideals: &[Ideal],
) -> Vec<SPrimeWitness> {
    ideals
        .par_iter()
        .filter_map(|p| is_s_prime(ring, s, p))
        .collect()
}

/// S-primes `P` such that every S-prime `Q ⊆ P` has `sP ⊆ Q` for some `s ∈ S`.
pub fn s_minimal_s_primes(
    ring: &FiniteRing,
    s: &MultiplicativeSet,
    spectrum: &[SPrimeWitness],
) -> Vec<Ideal> {
    spectrum
        .iter()
        .filter(|p| {
            spectrum
                .iter()
                .filter(|q| q.ideal.is_subset(&p.ideal))
                .all(|q| {
                    s.elems()
                        .iter()
                        .any(|&t| p.ideal.scaled(ring, t).is_subset(q.ideal.members()))
                })
        })
        .map(|p| p.ideal.clone())
        .collect()
}

/// `⋂ Spec_S(R)`.
pub fn spectrum_intersection(ring: &FiniteRing, spectrum: &[SPrimeWitness]) -> Result<Ideal> {
    intersect_all(ring, spectrum.iter().map(|w| &w.ideal))
}

pub(crate) fn intersect_all<'a>(
    ring: &FiniteRing,
    ideals: impl IntoIterator<Item = &'a Ideal>,
) -> Result<Ideal> {
    let mut iter = ideals.into_iter();
    let first = iter.next().ok_or(Error::EmptySpectrum)?;
    let mut acc = first.members().clone();
    for i in iter {
        acc.intersect_with(i.members());
    }
    Ok(Ideal::from_members(ring, acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ideal::{ideal_generated, DEFAULT_IDEAL_CAP};
    use crate::lattice::multset::mult_closure;
    use crate::ring::{build_ring, RingExpression};
    use std::sync::Arc;

    fn z(n: u64) -> Arc<FiniteRing> {
        build_ring(&RingExpression::zmod(n), 4096).unwrap()
    }

    fn klein() -> Arc<FiniteRing> {
        build_ring(
            &RingExpression::product(vec![RingExpression::zmod(2), RingExpression::zmod(2)]),
            16,
        )
        .unwrap()
    }

    // Oracle: scan all (a, s, n) triples with n ≤ |R| on plain integers.
    fn s_radical_oracle(n: u64, s: &[u64], ideal_mod: u64) -> Vec<usize> {
        (0..n)
            .filter(|&a| {
                s.iter().any(|&t| {
                    let mut p = a % n;
                    (1..=n).any(|_| {
                        let hit = (t * p % n).is_multiple_of(ideal_mod);
                        p = p * a % n;
                        hit
                    })
                })
            })
            .map(|a| a as usize)
            .collect()
    }

    #[test]
    fn s_radical_examples() {
        let r = z(12);
        let s = mult_closure(&r, &[2], false).unwrap();
        assert_eq!(s.elems(), &[1, 2, 4, 8]);
        let rad = s_radical(&r, &s, &Ideal::zero(&r));
        assert_eq!(
            rad.ideal.elements(),
            s_radical_oracle(12, &[1, 2, 4, 8], 12)
        );
        assert_eq!(rad.ideal.elements(), vec![0, 3, 6, 9]);
        assert!(!rad.is_s_radical);
        assert_eq!(rad.witnesses[&3], (4, 1));

        let unit = s_radical(&r, &s, &Ideal::unit(&r));
        assert!(unit.ideal.is_unit() && unit.is_s_radical);

        let r24 = z(24);
        let s24 = mult_closure(&r24, &[2], false).unwrap();
        let nil = s_nilradical(&r24, &s24);
        assert_eq!(
            nil.ideal.elements(),
            s_radical_oracle(24, &[1, 2, 4, 8, 16], 24)
        );
        assert_eq!(nil.ideal, ideal_generated(&r24, &[3]));

        let s4 = mult_closure(&r, &[4], false).unwrap();
        assert_eq!(s_nilradical(&r, &s4).ideal.elements(), vec![0, 3, 6, 9]);
    }

    #[test]
    fn s_radical_witnesses_recheck() {
        let r = z(36);
        let s = mult_closure(&r, &[2], false).unwrap();
        for i in enumerate_ideals(&r, 64).unwrap() {
            let rad = s_radical(&r, &s, &i);
            assert!(i.is_subset(&rad.ideal));
            let again = s_radical(&r, &s, &rad.ideal);
            assert!(rad.ideal.is_subset(&again.ideal));
            for (&a, &(t, n)) in &rad.witnesses {
                assert!(s.contains(t));
                assert!(i.contains(r.mul(t, r.pow(a, n as u64))));
            }
        }
    }

    #[test]
    fn z24_spectrum() {
        let r = z(24);
        let s = mult_closure(&r, &[2], false).unwrap();
        let spec = s_spectrum(&r, &s, DEFAULT_IDEAL_CAP).unwrap();
        let ideals: Vec<Vec<usize>> = spec.iter().map(|w| w.ideal.elements()).collect();
        let expect: Vec<Vec<usize>> = [0usize, 12, 6, 3]
            .iter()
            .map(|&g| ideal_generated(&r, &[g]).elements())
            .collect();
        assert_eq!(ideals, expect);
        let three = ideal_generated(&r, &[3]);
        for w in &spec {
            assert_eq!(w.colon_prime, three);
            assert_eq!(w.witness_s, w.colon_s);
        }
        let zero = &spec[0];
        assert_eq!(zero.witness_s, 8);
        assert!(is_s_prime(&r, &s, &ideal_generated(&r, &[2])).is_none());
        let six = is_s_prime(&r, &s, &ideal_generated(&r, &[6])).unwrap();
        assert_eq!(colon_members(&r, six.ideal.members(), 8), *three.members());

        assert!(spectrum_intersection(&r, &spec).unwrap().is_zero());
        assert_eq!(s_minimal_s_primes(&r, &s, &spec).len(), 4);
    }

    #[test]
    fn field_spectrum() {
        let r = z(7);
        let s = MultiplicativeSet::trivial(&r);
        let spec = s_spectrum(&r, &s, 16).unwrap();
        assert_eq!(spec.len(), 1);
        assert!(spec[0].ideal.is_zero());
        assert_eq!(s_minimal_s_primes(&r, &s, &spec).len(), 1);
        assert!(spectrum_intersection(&r, &spec).unwrap().is_zero());
    }

    #[test]
    fn klein_spectra() {
        let k = klein();
        // Elements: 0=(0,0) 1=(0,1) 2=(1,0) 3=(1,1).
        let s = mult_closure(&k, &[2], false).unwrap();
        assert_eq!(s.elems(), &[2, 3]);
        let spec = s_spectrum(&k, &s, 16).unwrap();
        let ideals: Vec<Vec<usize>> = spec.iter().map(|w| w.ideal.elements()).collect();
        assert_eq!(ideals, vec![vec![0], vec![0, 1]]);

        let trivial = MultiplicativeSet::trivial(&k);
        let spec = s_spectrum(&k, &trivial, 16).unwrap();
        let minimal: Vec<Vec<usize>> = s_minimal_s_primes(&k, &trivial, &spec)
            .iter()
            .map(Ideal::elements)
            .collect();
        assert_eq!(minimal, vec![vec![0, 1], vec![0, 2]]);
        assert!(spectrum_intersection(&k, &spec).unwrap().is_zero());
    }

    #[test]
    fn primes_disjoint_from_s_have_witness_one() {
        let r = z(60);
        let s = mult_closure(&r, &[7], false).unwrap();
        for p in enumerate_ideals(&r, 64).unwrap() {
            if crate::lattice::is_prime_ideal(&r, &p) && p.members().is_disjoint(s.members()) {
                assert_eq!(is_s_prime(&r, &s, &p).unwrap().witness_s, 1);
            }
        }
    }
}
