use std::collections::BTreeMap;

use serde::Serialize;

use crate::lattice::{Ideal, MultiplicativeSet};
use crate::ring::{annihilator, FiniteRing};
use crate::Elem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SPureVerdict {
    pub verdict: bool,
    /// `a ↦ (b, s)` with `b ∈ I` and `sa = ab`.
    pub witnesses: BTreeMap<Elem, (Elem, Elem)>,
    pub failing_element: Option<Elem>,
}

fn pure_witness(
    ring: &FiniteRing,
    s: &MultiplicativeSet,
    members: &[Elem],
    a: Elem,
) -> Option<(Elem, Elem)> {
    s.elems().iter().find_map(|&t| {
        let sa = ring.mul(t, a);
        members
            .iter()
            .find(|&&b| ring.mul(a, b) == sa)
            .map(|&b| (b, t))
    })
}

pub fn is_s_pure(ring: &FiniteRing, s: &MultiplicativeSet, i: &Ideal) -> SPureVerdict {
    let members = i.elements();
    let mut witnesses = BTreeMap::new();
    let mut failing_element = None;
    for &a in &members {
        match pure_witness(ring, s, &members, a) {
            Some(w) => {
                witnesses.insert(a, w);
            }
            None => {
                failing_element = Some(a);
                break;
            }
        }
    }
    SPureVerdict {
        verdict: failing_element.is_none(),
        witnesses,
        failing_element,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SPfVerdict {
    pub verdict: bool,
    /// Least `a` whose annihilator is not S-pure.
    pub failing_element: Option<Elem>,
    /// Member of `(0:a)` with no purity witness.
    pub failing_member: Option<Elem>,
}

/// Every annihilator `(0:a)` is S-pure.
pub fn is_s_pf(ring: &FiniteRing, s: &MultiplicativeSet) -> SPfVerdict {
    for a in ring.elements() {
        let ann = Ideal::from_members(ring, annihilator(ring, a));
        let v = is_s_pure(ring, s, &ann);
        if !v.verdict {
            return SPfVerdict {
                verdict: false,
                failing_element: Some(a),
                failing_member: v.failing_element,
            };
        }
    }
    SPfVerdict {
        verdict: true,
        failing_element: None,
        failing_member: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{ideal_generated, mult_closure};
    use crate::ring::{build_ring, RingExpression};
    use std::sync::Arc;

    fn z(n: u64) -> Arc<FiniteRing> {
        build_ring(&RingExpression::zmod(n), 4096).unwrap()
    }

    #[test]
    fn zero_ideal_is_pure() {
        let r = z(24);
        let s = mult_closure(&r, &[2], false).unwrap();
        let v = is_s_pure(&r, &s, &Ideal::zero(&r));
        assert!(v.verdict);
        assert_eq!(v.witnesses[&0], (0, 1));
    }

    #[test]
    fn z4_annihilator_of_two() {
        let r = z(4);
        let s = mult_closure(&r, &[3], false).unwrap();
        let ann = Ideal::from_members(&r, annihilator(&r, 2));
        assert_eq!(ann.elements(), vec![0, 2]);
        let v = is_s_pure(&r, &s, &ann);
        assert!(!v.verdict);
        assert_eq!(v.failing_element, Some(2));
        let pf = is_s_pf(&r, &s);
        assert!(!pf.verdict);
        assert_eq!(pf.failing_element, Some(2));
    }

    #[test]
    fn z6_is_pf() {
        let r = z(6);
        let one = MultiplicativeSet::trivial(&r);
        let v = is_s_pure(&r, &one, &ideal_generated(&r, &[3]));
        assert_eq!(v.witnesses[&3], (3, 1));
        assert!(is_s_pf(&r, &one).verdict);
        assert!(is_s_pf(&z(7), &MultiplicativeSet::trivial(&z(7))).verdict);
    }
}
