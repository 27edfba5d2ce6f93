//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use serde_json::{json, Value};
use sring_core::harness::{
    check_statement, counterexample_search, decomposition, e_ring_instance, field_decomposition,
    generate_corpus, CorpusConfig, Instance, StatementId, Variant, Verdict,
};
use sring_core::lattice::{
    enumerate_ideals, s_prime_by_colon, s_prime_definitional, s_radical, s_spectrum,
    spectrum_intersection, MultiplicativeSet,
};
use sring_core::ring::{is_field, nilpotent_profile};
use sring_core::stheory::{
    is_s_pf, is_s_reduced, is_u_s_armendariz_up_to, is_u_s_reduced, localize,
    s_strongly_hopfian_profile, zero_product_poly_pairs, SearchMode,
};
use sring_core::{Elem, ElemSet, FiniteRing, Ideal, RingExpression};

const LIMIT_1: Duration = Duration::from_secs(1);
const LIMIT_2: Duration = Duration::from_secs(60);
const LIMIT_3: Duration = Duration::from_secs(60);
const LIMIT_8: Duration = Duration::from_secs(1);
const LIMIT_9: Duration = Duration::from_secs(120);
const LIMIT_SUITE: Duration = Duration::from_secs(300);

const SAMPLE_SEED: u64 = 42;
const SAMPLE_BUDGET: u64 = 100_000;
const EXHAUSTIVE_BUDGET: u64 = 10_000_000;
const SMALL_RING: usize = 12;

fn corpus() -> &'static [Instance] {
    static CORPUS: OnceLock<Vec<Instance>> = OnceLock::new();
    CORPUS.get_or_init(|| generate_corpus(&CorpusConfig::default()).expect("default corpus"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn zmod(n: u64, gens: &[i64]) -> Instance {
    Instance::new(
        0,
        RingExpression::zmod(n),
        gens.iter().map(|&g| json!(g)).collect(),
        4096,
    )
    .unwrap()
}

fn s_reduced_instances() -> impl Iterator<Item = &'static Instance> {
    corpus()
        .iter()
        .filter(|i| !i.mult_set.is_degenerate() && is_s_reduced(&i.ring, &i.mult_set).verdict)
}

fn naive_ann(r: &FiniteRing, a: Elem) -> BTreeSet<Elem> {
    r.elements().filter(|&x| r.mul(a, x) == 0).collect()
}

fn naive_s_zero(
    r: &FiniteRing,
    s: &MultiplicativeSet,
    members: impl IntoIterator<Item = Elem>,
) -> bool {
    members
        .into_iter()
        .all(|a| s.elems().iter().any(|&t| r.mul(t, a) == 0))
}

/// Additive closure of all products `ab`.
fn naive_product(r: &FiniteRing, i: &Ideal, j: &Ideal) -> BTreeSet<Elem> {
    let gens: Vec<Elem> = i
        .members()
        .iter()
        .flat_map(|a| j.members().iter().map(move |b| (a, b)))
        .map(|(a, b)| r.mul(a, b))
        .collect();
    let mut set: BTreeSet<Elem> = [0].into();
    loop {
        let next: BTreeSet<Elem> = set
            .iter()
            .flat_map(|&x| gens.iter().map(move |&g| (x, g)))
            .map(|(x, g)| r.add(x, g))
            .chain(set.iter().copied())
            .collect();
        if next == set {
            return set;
        }
        set = next;
    }
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = f()?;
    let took = start.elapsed();
    match limit {
        Some(l) if took > l => Err(format!("{detail}; took {took:.2?}, limit {l:?}")),
        Some(l) => Ok(format!("{detail}; {took:.2?} < {l:?}")),
        None => Ok(format!("{detail}; {took:.2?}")),
    }
}

fn c1() -> Outcome {
    timed(Some(LIMIT_1), || {
        let i = zmod(24, &[2]);
        let (r, s) = (&i.ring, &i.mult_set);
        ensure(s.elems() == [1, 2, 4, 8, 16], "S = {1,2,4,8,16}")?;
        let nil = nilpotent_profile(r);
        let nils: Vec<Elem> = nil.nilpotents().collect();
        ensure(nils == [0, 6, 12, 18], format!("nilpotents {nils:?}"))?;
        ensure(!nil.is_reduced(), "Z_24 is not reduced")?;
        let cert = is_s_reduced(r, s);
        ensure(cert.verdict, "S-reduced")?;
        for a in [6, 12, 18] {
            ensure(r.mul(4, a) == 0, format!("4 kills {a}"))?;
        }
        let least: Vec<(Elem, Elem)> = cert.witnesses.iter().map(|(&a, &t)| (a, t)).collect();
        ensure(
            least == [(0, 1), (6, 4), (12, 2), (18, 4)],
            format!("least witnesses {least:?}"),
        )?;
        ensure(cert.uniform_witness == Some(4), "uniform witness 4")?;
        ensure(is_u_s_reduced(r, s) == Some(4), "u-S-reduced with 4")?;
        Ok("nilpotents {0,6,12,18}, s = 4 kills each, uniform witness 4".into())
    })
}

fn c2() -> Outcome {
    timed(Some(LIMIT_2), || {
        let mut n = 0;
        for i in s_reduced_instances() {
            let (r, s) = (&i.ring, &i.mult_set);
            let spec = s_spectrum(r, s, 4096).map_err(|e| e.to_string())?;
            let meet = spectrum_intersection(r, &spec).map_err(|e| e.to_string())?;
            ensure(
                naive_s_zero(r, s, meet.members().iter()),
                format!("{}: intersection not S-zero", i.label()),
            )?;
            let rep = check_statement(
                StatementId::SpectrumSZero,
                i,
                Variant::Full,
                &CorpusConfig::default(),
            )
            .map_err(|e| e.to_string())?;
            ensure(
                rep.verdict == Verdict::Holds,
                format!("{}: {:?}", i.label(), rep.verdict),
            )?;
            n += 1;
        }
        ensure(n > 0, "no S-reduced instances")?;
        Ok(format!("{n} S-reduced instances, 0 violations"))
    })
}

fn c3() -> Outcome {
    timed(Some(LIMIT_3), || {
        let (mut ideals, mut primes) = (0, 0);
        for i in corpus() {
            let (r, s) = (&i.ring, &i.mult_set);
            for p in enumerate_ideals(r, 4096).map_err(|e| e.to_string())? {
                let a = s_prime_definitional(r, s, &p);
                let b = s_prime_by_colon(r, s, &p);
                ensure(
                    a.is_some() == b.is_some(),
                    format!("{}: disagreement on {:?}", i.label(), p.elements()),
                )?;
                ideals += 1;
                primes += a.is_some() as usize;
            }
        }
        Ok(format!(
            "{ideals} ideals over {} rings, {primes} S-prime, 0 disagreements",
            corpus().len()
        ))
    })
}

fn c4() -> Outcome {
    timed(None, || {
        let out = Command::new(env!("CARGO_BIN_EXE_sring"))
            .args(["--pretty", "spectrum"])
            .arg(data("z24.json"))
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), "spectrum command failed")?;
        let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
        let golden = std::fs::read_to_string(
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/z24_spectrum.json"),
        )
        .map_err(|e| e.to_string())?;
        ensure(text == golden, "output differs from the golden file")?;
        let doc: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let three: Vec<u64> = (0..24).filter(|x| x % 3 == 0).collect();
        let mut seen = BTreeSet::new();
        for entry in doc["spectrum"].as_array().unwrap() {
            let ideal: BTreeSet<u64> = entry["ideal"]
                .as_array()
                .unwrap()
                .iter()
                .map(|v| v.as_u64().unwrap())
                .collect();
            let s = entry["witness_s"].as_u64().unwrap();
            // (P : s) = (3), computed directly mod 24.
            let colon: Vec<u64> = (0..24).filter(|x| ideal.contains(&(s * x % 24))).collect();
            ensure(colon == three, format!("colon of {ideal:?} by {s}"))?;
            let colon_json: Vec<u64> = entry["colon_prime"]
                .as_array()
                .unwrap()
                .iter()
                .map(|v| v.as_u64().unwrap())
                .collect();
            ensure(colon_json == three, "recorded colon ideal")?;
            for a in 0..24u64 {
                for b in 0..24u64 {
                    if ideal.contains(&(a * b % 24)) {
                        ensure(
                            ideal.contains(&(s * a % 24)) || ideal.contains(&(s * b % 24)),
                            format!("{s} fails on ({a},{b})"),
                        )?;
                    }
                }
            }
            seen.insert(*ideal.iter().nth(1).unwrap_or(&0));
        }
        ensure(seen == [0, 3, 6, 12].into(), format!("generators {seen:?}"))?;
        ensure(doc["intersection"] == json!([0]), "intersection (0)")?;
        Ok(
            "Spec_S = {(0),(3),(6),(12)}, colon (3) for each, intersection (0), golden match"
                .into(),
        )
    })
}

/// Direct check of the quotient equivalence on one ideal.
fn naive_quotient_case(r: &FiniteRing, s: &MultiplicativeSet, i: &ElemSet) -> (bool, bool, bool) {
    let pow = |a: Elem, n: usize| (1..n).fold(a, |x, _| r.mul(x, a));
    let n_max = r.size();
    let radical_is_i = r
        .elements()
        .filter(|&a| {
            (1..=n_max).any(|n| s.elems().iter().any(|&t| i.contains(r.mul(t, pow(a, n)))))
        })
        .all(|a| i.contains(a));
    let quotient_reduced = r
        .elements()
        .filter(|&a| (1..=n_max).any(|n| i.contains(pow(a, n))))
        .all(|a| s.elems().iter().any(|&t| i.contains(r.mul(t, a))));
    // s̄ is zero or a zero divisor of R/I.
    let hyp_fails = s.elems().iter().any(|&t| {
        i.contains(t)
            || r.elements()
                .any(|b| !i.contains(b) && i.contains(r.mul(t, b)))
    });
    (radical_is_i, quotient_reduced, hyp_fails)
}

fn c5() -> Outcome {
    timed(None, || {
        let mut cases = 0;
        for inst in corpus() {
            let (r, s) = (&inst.ring, &inst.mult_set);
            for i in enumerate_ideals(r, 4096).map_err(|e| e.to_string())? {
                if !i.is_proper() {
                    continue;
                }
                let (rad, red, hyp_fails) = naive_quotient_case(r, s, i.members());
                if hyp_fails {
                    continue;
                }
                ensure(
                    rad == red,
                    format!("{}: ideal {:?}", inst.label(), i.elements()),
                )?;
                ensure(
                    s_radical(r, s, &i).is_s_radical == rad,
                    "library S-radical test",
                )?;
                cases += 1;
            }
            let rep = check_statement(
                StatementId::SRadicalQuotient,
                inst,
                Variant::Full,
                &CorpusConfig::default(),
            )
            .map_err(|e| e.to_string())?;
            ensure(
                rep.verdict != Verdict::Violated,
                format!("{}: harness violation", inst.label()),
            )?;
        }
        let found = counterexample_search(
            StatementId::SRadicalQuotient,
            Variant::DropHypothesis,
            corpus(),
            0,
            &CorpusConfig::default(),
        )
        .map_err(|e| e.to_string())?;
        let min = found
            .minimized
            .ok_or("drop-hypothesis search found nothing")?;
        let expr: RingExpression =
            serde_json::from_value(min.instance["ring"].clone()).map_err(|e| e.to_string())?;
        let gens = min.instance["mult_set"]["generators"]
            .as_array()
            .cloned()
            .unwrap_or_default();
        let inst = Instance::new(0, expr, gens, 4096).map_err(|e| e.to_string())?;
        let r = &inst.ring;
        let c = &min.payload["counterexample"];
        let members = c["ideal"]["members"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| r.parse_literal(v, "ideal"))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        let i = ElemSet::from_elems(r.size(), members);
        let (rad, red, hyp_fails) = naive_quotient_case(r, &inst.mult_set, &i);
        ensure(
            hyp_fails && !rad && red,
            "minimized case is not the zero-divisor pattern",
        )?;
        Ok(format!(
            "{cases} ideals satisfy the hypothesis, 0 violations; without it {} violations, minimized to {} with I = {}",
            found.violations_found,
            inst.label(),
            c["ideal"]["members"]
        ))
    })
}

fn c6() -> Outcome {
    timed(None, || {
        let (mut rings, mut pairs) = (0, 0);
        for inst in s_reduced_instances() {
            let (r, s) = (&inst.ring, &inst.mult_set);
            let ideals = enumerate_ideals(r, 4096).map_err(|e| e.to_string())?;
            if ideals.len() > 16 {
                continue;
            }
            rings += 1;
            for (x, i) in ideals.iter().enumerate() {
                for j in &ideals[x..] {
                    let meet = i.members().intersection(j.members());
                    let a = naive_s_zero(r, s, meet.iter());
                    let b = naive_s_zero(r, s, naive_product(r, i, j));
                    ensure(
                        a == b,
                        format!(
                            "{}: {:?} and {:?}",
                            inst.label(),
                            i.elements(),
                            j.elements()
                        ),
                    )?;
                    pairs += 1;
                }
            }
        }
        Ok(format!(
            "{pairs} ideal pairs over {rings} rings, 0 violations"
        ))
    })
}

fn c7() -> Outcome {
    timed(None, || {
        let i = zmod(24, &[2]);
        let loc = localize(&i.ring, &i.mult_set);
        let three: Vec<Elem> = (0..24).filter(|x| x % 3 == 0).collect();
        ensure(loc.torsion.elements() == three, "torsion kernel (3)")?;
        let l = loc.localized.as_ref().ok_or("degenerate localization")?;
        ensure(
            l.size() == 3 && is_field(l) && nilpotent_profile(l).is_reduced(),
            "localized ring",
        )?;
        let mut n = 0;
        for inst in s_reduced_instances() {
            let loc = localize(&inst.ring, &inst.mult_set);
            if let Some(l) = &loc.localized {
                let nil: Vec<Elem> = nilpotent_profile(l).nilpotents().collect();
                ensure(
                    nil == [0],
                    format!("{}: localization has nilpotents", inst.label()),
                )?;
            }
            n += 1;
        }
        Ok(format!("Z_24 -> torsion (3), field of size 3; {n} S-reduced instances localize to reduced rings"))
    })
}

fn c8() -> Outcome {
    timed(Some(LIMIT_8), || {
        let i = zmod(30, &[]);
        let d = field_decomposition(&i.ring, &i.mult_set, 4096).map_err(|e| e.to_string())?;
        let mut sizes = d.field_sizes();
        sizes.sort();
        ensure(sizes == [2, 3, 5], format!("field sizes {sizes:?}"))?;
        ensure(d.all_fields && d.bijective && d.homomorphic, "isomorphism")?;
        ensure(d.products_checked == 900, "900 products")?;
        // Independent CRT check.
        for a in 0..30usize {
            for b in 0..30usize {
                let ab = a * b % 30;
                for p in [2, 3, 5] {
                    ensure(ab % p == (a % p) * (b % p) % p, "CRT")?;
                }
            }
        }
        Ok("Z_30 = F_2 x F_3 x F_5, bijective and homomorphic on 900 products".into())
    })
}

fn c9() -> Outcome {
    timed(Some(LIMIT_9), || {
        let (mut small, mut large) = (0, 0);
        for inst in corpus() {
            let (r, s) = (&inst.ring, &inst.mult_set);
            if is_u_s_reduced(r, s).is_none() {
                continue;
            }
            let (d, mode) = if r.size() <= SMALL_RING {
                small += 1;
                (
                    2,
                    SearchMode::Exhaustive {
                        budget: EXHAUSTIVE_BUDGET,
                    },
                )
            } else {
                large += 1;
                (
                    1,
                    SearchMode::Sampled {
                        seed: SAMPLE_SEED,
                        budget: SAMPLE_BUDGET,
                    },
                )
            };
            let v = is_u_s_armendariz_up_to(r, s, d, mode).map_err(|e| e.to_string())?;
            ensure(
                v.complete && v.uniform_holds(),
                format!("{}: no uniform witness", inst.label()),
            )?;
        }
        Ok(format!(
            "{small} instances exhaustive at D=2, {large} sampled at D=1, 0 violations"
        ))
    })
}

fn c10() -> Outcome {
    timed(None, || {
        let base = zmod(12, &[4]);
        let (e, sp) = e_ring_instance(&base).map_err(|e| e.to_string())?;
        ensure(e.size() == 20736, "E(Z_12) has 12^4 elements")?;
        let four = e.join_triangular([4, 4, 4, 4]).unwrap();
        ensure(sp.generators() == [four], "S' generated by (4,4,4,4)")?;
        let mode = SearchMode::Sampled {
            seed: SAMPLE_SEED,
            budget: SAMPLE_BUDGET,
        };
        let v = is_u_s_armendariz_up_to(&e, &sp, 1, mode).map_err(|e| e.to_string())?;
        ensure(
            v.complete && v.pairs_examined == SAMPLE_BUDGET,
            "full budget of pairs",
        )?;
        let w = v.uniform_witness.ok_or("no uniform witness")?;
        // Re-check the witness on the regenerated stream.
        let stream = zero_product_poly_pairs(&e, 1, mode).map_err(|e| e.to_string())?;
        for (f, g) in &stream.pairs {
            ensure(f.mul(&e, g).is_zero(), "pair does not multiply to zero")?;
            for &a in f.coeffs() {
                for &b in g.coeffs() {
                    ensure(
                        e.mul(w, e.mul(a, b)) == 0,
                        "witness misses a coefficient product",
                    )?;
                }
            }
        }
        Ok(format!(
            "{} pairs, uniform witness {}",
            stream.pairs.len(),
            e.literal(w)
        ))
    })
}

fn c11() -> Outcome {
    timed(None, || {
        let mut checked = 0;
        for inst in s_reduced_instances() {
            let (r, s) = (&inst.ring, &inst.mult_set);
            let profile = s_strongly_hopfian_profile(r, s);
            ensure(profile.len() == r.size(), "profile incomplete")?;
            for e in &profile {
                let t = e.shift_s.ok_or(format!(
                    "{}: no shift witness for {}",
                    inst.label(),
                    e.element
                ))?;
                let pow = |n: u32| r.pow(e.element, n as u64);
                for n in 1..=e.stable_index + 1 {
                    let lo = naive_ann(r, pow(n));
                    ensure(
                        naive_ann(r, pow(n + 1))
                            .iter()
                            .all(|&y| lo.contains(&r.mul(t, y))),
                        format!(
                            "{}: shift fails at a = {}, n = {n}",
                            inst.label(),
                            e.element
                        ),
                    )?;
                }
                let k_ann = naive_ann(r, pow(e.k));
                for n in e.k..=e.stable_index + 1 {
                    ensure(
                        naive_ann(r, pow(n))
                            .iter()
                            .all(|&y| k_ann.contains(&r.mul(e.s, y))),
                        "stationarity witness",
                    )?;
                }
                checked += 1;
            }
        }
        Ok(format!("{checked} elements re-checked, 0 failures"))
    })
}

fn c12() -> Outcome {
    timed(None, || {
        let mut pf = 0;
        for inst in corpus() {
            if is_s_pf(&inst.ring, &inst.mult_set).verdict {
                pf += 1;
                ensure(
                    is_s_reduced(&inst.ring, &inst.mult_set).verdict,
                    format!("{} is S-PF only", inst.label()),
                )?;
            }
        }
        let z4 = zmod(4, &[3]);
        ensure(z4.mult_set.elems() == [1, 3], "S = {1,3}")?;
        ensure(!is_s_pf(&z4.ring, &z4.mult_set).verdict, "Z_4 is not S-PF")?;
        ensure(
            !is_s_reduced(&z4.ring, &z4.mult_set).verdict,
            "Z_4 is not S-reduced",
        )?;
        Ok(format!(
            "{pf} S-PF instances all S-reduced; Z_4 with S = {{1,3}} neither"
        ))
    })
}

fn c13() -> Outcome {
    timed(None, || {
        let cfg = CorpusConfig::default();
        let mut n = 0;
        for inst in s_reduced_instances() {
            let (r, s) = (&inst.ring, &inst.mult_set);
            let d = decomposition(r, s, 4096).map_err(|e| e.to_string())?;
            ensure(!d.primes.is_empty(), "no S-minimal S-primes")?;
            ensure(
                naive_s_zero(r, s, d.kernel.members().iter()),
                format!("{}: kernel", inst.label()),
            )?;
            ensure(
                d.kernel_torsion && d.surjective && d.domains(),
                format!("{}: forward", inst.label()),
            )?;
            let back = check_statement(StatementId::StructureConverse, inst, Variant::Full, &cfg)
                .map_err(|e| e.to_string())?;
            ensure(
                back.verdict == Verdict::Holds,
                format!("{}: converse {:?}", inst.label(), back.verdict),
            )?;
            n += 1;
        }
        Ok(format!(
            "{n} S-reduced instances decompose and re-derive, 0 violations"
        ))
    })
}

fn c14() -> Outcome {
    timed(None, || {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_sring"))
                .args(["verify", "--all", "--seed", "42"])
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (run()?, run()?);
        ensure(
            a.status.code() == Some(0) && b.status.code() == Some(0),
            "verify exited nonzero",
        )?;
        ensure(
            !a.stdout.is_empty() && a.stdout == b.stdout,
            "outputs differ",
        )?;
        let lines = a.stdout.iter().filter(|&&c| c == b'\n').count();
        Ok(format!(
            "{lines} JSON lines, byte-identical across two runs"
        ))
    })
}

fn main() {
    let criteria: [Criterion; 14] = [
        ("Z_24 example reproduction", c1),
        ("S-prime intersection is S-zero on the corpus", c2),
        ("S-prime definitional and colon criteria agree", c3),
        ("Z_24 S-spectrum golden file", c4),
        ("S-radical quotient equivalence", c5),
        ("I meet J versus IJ S-zero equivalence", c6),
        ("localization", c7),
        ("Z_30 product of fields", c8),
        ("u-S-reduced implies u-S-Armendariz", c9),
        ("E(Z_12) sampled uniform Armendariz", c10),
        ("S-strongly Hopfian profiles", c11),
        ("S-PF implies S-reduced", c12),
        ("structure theorem both directions", c13),
        ("verify determinism", c14),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match res {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", n + 1);
            }
        }
    }
    let total = start.elapsed();
    let within = total <= LIMIT_SUITE;
    println!(
        "acceptance: {} of 14 passed in {total:.1?} (suite limit {LIMIT_SUITE:?}{})",
        14 - failed,
        if within { "" } else { ", exceeded" }
    );
    if failed > 0 || !within {
        std::process::exit(1);
    }
}
