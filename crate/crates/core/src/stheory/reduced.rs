use std::collections::BTreeMap;

use serde::Serialize;

use crate::lattice::{Ideal, MultiplicativeSet};
use crate::ring::{nilpotent_profile, FiniteRing};
use crate::Elem;

/// Outcome of the S-reduced test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SReducedCertificate {
    pub verdict: bool,
    /// Nilpotent `a` ↦ least `s ∈ S` with `s·a = 0`.
    pub witnesses: BTreeMap<Elem, Elem>,
    /// Least single `s` that kills every nilpotent, if one exists.
    pub uniform_witness: Option<Elem>,
    /// Least nilpotent killed by no member of `S`.
    pub failing_element: Option<Elem>,
    pub degenerate: bool,
}

/// Least `s ∈ S` with `s·a = 0`.
pub fn is_s_zero_element(ring: &FiniteRing, s: &MultiplicativeSet, a: Elem) -> Option<Elem> {
    s.elems().iter().copied().find(|&t| ring.mul(t, a) == 0)
}

pub fn is_s_reduced(ring: &FiniteRing, s: &MultiplicativeSet) -> SReducedCertificate {
    let profile = nilpotent_profile(ring);
    let mut witnesses = BTreeMap::new();
    let mut failing_element = None;
    for a in profile.nilpotents() {
        match is_s_zero_element(ring, s, a) {
            Some(t) => {
                witnesses.insert(a, t);
            }
            None => {
                failing_element.get_or_insert(a);
            }
        }
    }
    let uniform_witness = if failing_element.is_none() {
        uniform_killer(ring, s, &profile.nilpotents().collect::<Vec<_>>())
    } else {
        None
    };
    SReducedCertificate {
        verdict: failing_element.is_none(),
        witnesses,
        uniform_witness,
        failing_element,
        degenerate: s.is_degenerate(),
    }
}

fn uniform_killer(ring: &FiniteRing, s: &MultiplicativeSet, targets: &[Elem]) -> Option<Elem> {
    s.elems()
        .iter()
        .copied()
        .find(|&t| targets.iter().all(|&a| ring.mul(t, a) == 0))
}

/// Least `s` that kills every nilpotent at once.
pub fn is_u_s_reduced(ring: &FiniteRing, s: &MultiplicativeSet) -> Option<Elem> {
    let profile = nilpotent_profile(ring);
    uniform_killer(ring, s, &profile.nilpotents().collect::<Vec<_>>())
}

/// Least `s` such that `ab = 0` forces `sa = 0` or `sb = 0`, one `s` for all pairs.
pub fn is_s_integral_domain(ring: &FiniteRing, s: &MultiplicativeSet) -> Option<Elem> {
    s.elems().iter().copied().find(|&t| {
        let survivors: Vec<Elem> = ring.elements().filter(|&a| ring.mul(t, a) != 0).collect();
        survivors
            .iter()
            .all(|&a| survivors.iter().all(|&b| ring.mul(a, b) != 0))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SZeroIdealVerdict {
    pub verdict: bool,
    /// Member ↦ least killing `s`.
    pub witnesses: BTreeMap<Elem, Elem>,
    pub failing_element: Option<Elem>,
}

/// Every member of `I` is killed by some `s ∈ S`.
pub fn is_s_zero_ideal(ring: &FiniteRing, s: &MultiplicativeSet, i: &Ideal) -> SZeroIdealVerdict {
    let mut witnesses = BTreeMap::new();
    let mut failing_element = None;
    for a in i.members().iter() {
        match is_s_zero_element(ring, s, a) {
            Some(t) => {
                witnesses.insert(a, t);
            }
            None => {
                failing_element = Some(a);
                break;
            }
        }
    }
    SZeroIdealVerdict {
        verdict: failing_element.is_none(),
        witnesses,
        failing_element,
    }
}
