use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bitset::ElemSet;
use crate::lattice::{Ideal, MultiplicativeSet};
use crate::ring::FiniteRing;
use crate::Elem;

/// `S⁻¹R` realized as `R/T` with `T` the S-torsion ideal.
#[derive(Clone, Debug)]
pub struct LocalizationResult {
    /// `T = {r | sr = 0 for some s ∈ S}`.
    pub torsion: Ideal,
    /// `None` when `0 ∈ S` and the localization is the zero ring.
    pub localized: Option<Arc<FiniteRing>>,
    /// `r ↦` index of `r/1`. All zeros for a degenerate set.
    pub canonical_map: Vec<Elem>,
    /// `s ↦ (s/1)⁻¹` in the localized ring.
    pub unit_images: BTreeMap<Elem, Elem>,
    pub degenerate: bool,
}

impl LocalizationResult {
    pub fn size(&self) -> usize {
        self.localized.as_ref().map_or(1, |r| r.size())
    }
}

pub fn s_torsion(ring: &FiniteRing, s: &MultiplicativeSet) -> Ideal {
    let hat = s.absorbing_element(ring);
    let members = ElemSet::from_elems(
        ring.size(),
        ring.elements().filter(|&r| ring.mul(hat, r) == 0),
    );
    Ideal::from_members(ring, members)
}

pub fn localize(ring: &Arc<FiniteRing>, s: &MultiplicativeSet) -> LocalizationResult {
    let torsion = s_torsion(ring, s);
    if s.is_degenerate() {
        return LocalizationResult {
            torsion,
            localized: None,
            canonical_map: vec![0; ring.size()],
            unit_images: BTreeMap::new(),
            degenerate: true,
        };
    }
    let local = FiniteRing::quotient(ring, torsion.members(), torsion.generators())
        .expect("torsion ideal is proper when 0 is not in S");
    let canonical_map: Vec<Elem> = ring
        .elements()
        .map(|r| local.project_from_base(r))
        .collect();

    let kernel: Vec<Elem> = ring.elements().filter(|&r| canonical_map[r] == 0).collect();
    assert_eq!(kernel, torsion.elements(), "kernel of R -> R/T must be T");
    let unit_images: BTreeMap<Elem, Elem> = s
        .elems()
        .iter()
        .map(|&t| {
            let inv = local
                .inverse(canonical_map[t])
                .expect("image of S is a unit in R/T");
            (t, inv)
        })
        .collect();

    LocalizationResult {
        torsion,
        localized: Some(local),
        canonical_map,
        unit_images,
        degenerate: false,
    }
}
