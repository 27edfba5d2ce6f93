use std::collections::BTreeSet;

use proptest::prelude::*;
use serde_json::json;
use sring_core::harness::{
    check_statement, generate_corpus, verify_catalog, CorpusConfig, Instance, StatementId, Variant,
    Verdict,
};
use sring_core::lattice::{
    enumerate_ideals, s_prime_by_colon, s_prime_definitional, s_spectrum, spectrum_intersection,
};
use sring_core::ring::nilpotent_profile;
use sring_core::stheory::{is_s_pf, is_s_reduced, is_u_s_reduced};
use sring_core::RingExpression;

fn zmod(n: u64, gens: &[u64]) -> Option<Instance> {
    Instance::new(
        0,
        RingExpression::zmod(n),
        gens.iter().map(|&g| json!(g % n)).collect(),
        4096,
    )
    .ok()
}

#[test]
fn corpus_is_deterministic_and_bounded() {
    let cfg = CorpusConfig::default();
    let a = generate_corpus(&cfg).unwrap();
    let b = generate_corpus(&cfg).unwrap();
    assert_eq!(a.len(), 49);
    assert_eq!(a.iter().filter(|i| i.curated).count(), 19);
    let labels: Vec<String> = a.iter().map(Instance::label).collect();
    assert_eq!(labels, b.iter().map(Instance::label).collect::<Vec<_>>());
    for i in a.iter().filter(|i| !i.curated) {
        assert!(i.ring.size() <= cfg.size_cap, "{}", i.label());
        assert!(!i.mult_set.contains(0));
    }
    for i in &a {
        let s = &i.mult_set;
        assert!(s.contains(i.ring.one()));
        for &x in s.elems() {
            for &y in s.elems() {
                assert!(s.contains(i.ring.mul(x, y)));
            }
        }
    }
}

#[test]
fn corpus_rings_satisfy_axioms() {
    for i in generate_corpus(&CorpusConfig::default()).unwrap() {
        i.ring
            .check_axioms(3)
            .unwrap_or_else(|m| panic!("{}: {m}", i.label()));
    }
}

#[test]
fn full_catalog_has_no_violations() {
    let cfg = CorpusConfig::default();
    let corpus = generate_corpus(&cfg).unwrap();
    let reports = verify_catalog(&StatementId::ALL, &corpus, Variant::Full, &cfg, false).unwrap();
    assert_eq!(reports.len(), 18 * corpus.len());
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| r.verdict == Verdict::Violated)
        .map(|r| format!("{:?} on {}", r.statement, r.instance["label"]))
        .collect();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn z24_report_for_spectrum_statement() {
    let i = zmod(24, &[2]).unwrap();
    let r = check_statement(
        StatementId::SpectrumSZero,
        &i,
        Variant::Full,
        &CorpusConfig::default(),
    )
    .unwrap();
    assert_eq!(r.verdict, Verdict::Holds);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn s_reduced_matches_naive(n in 2u64..=60, g in proptest::collection::vec(2u64..60, 0..3)) {
        let Some(i) = zmod(n, &g) else { return Ok(()) };
        let (r, s) = (&i.ring, &i.mult_set);
        let naive = nilpotent_profile(r)
            .nilpotents()
            .all(|a| s.elems().iter().any(|&t| r.mul(t, a) == 0));
        prop_assert_eq!(is_s_reduced(r, s).verdict, naive);
        if let Some(u) = is_u_s_reduced(r, s) {
            prop_assert!(nilpotent_profile(r).nilpotents().all(|a| r.mul(u, a) == 0));
        }
    }

    #[test]
    fn prime_criteria_agree(n in 2u64..=60, g in proptest::collection::vec(2u64..60, 0..3)) {
        let Some(i) = zmod(n, &g) else { return Ok(()) };
        let (r, s) = (&i.ring, &i.mult_set);
        for p in enumerate_ideals(r, 4096).unwrap() {
            prop_assert_eq!(s_prime_definitional(r, s, &p).is_some(), s_prime_by_colon(r, s, &p).is_some());
        }
    }

    #[test]
    fn s_pf_implies_s_reduced(n in 2u64..=60, g in proptest::collection::vec(2u64..60, 0..3)) {
        let Some(i) = zmod(n, &g) else { return Ok(()) };
        if is_s_pf(&i.ring, &i.mult_set).verdict {
            prop_assert!(is_s_reduced(&i.ring, &i.mult_set).verdict);
        }
    }

    #[test]
    fn spectrum_meet_is_s_zero_when_s_reduced(n in 2u64..=60, g in proptest::collection::vec(2u64..60, 0..3)) {
        let Some(i) = zmod(n, &g) else { return Ok(()) };
        let (r, s) = (&i.ring, &i.mult_set);
        if !is_s_reduced(r, s).verdict {
            return Ok(());
        }
        let spec = s_spectrum(r, s, 4096).unwrap();
        let meet = spectrum_intersection(r, &spec).unwrap();
        let members: BTreeSet<usize> = meet.members().iter().collect();
        prop_assert!(members.iter().all(|&a| s.elems().iter().any(|&t| r.mul(t, a) == 0)));
    }
}
