use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use super::catalog::{StatementId, Variant};
use super::corpus::{CorpusConfig, Instance};
use crate::bitset::ElemSet;
use crate::error::Result;
use crate::lattice::{
    colon_elem, enumerate_ideals, ideal_generated, is_prime_ideal, mult_closure,
    s_minimal_s_primes, s_nilradical, s_radical, s_spectrum, Ideal, MultiplicativeSet,
};
use crate::ring::{
    build_ring, nilpotent_profile, self_idealization, unit_set, zero_divisor_set, FiniteRing,
    Polynomial, RingExpression,
};
use crate::stheory::{
    is_s_integral_domain, is_s_pf, is_s_reduced, is_s_zero_ideal, is_u_s_armendariz_up_to,
    is_u_s_reduced, localize, s_strongly_hopfian_profile, ArmendarizVerdict,
};
use crate::Elem;

pub const DEGENERATE_NOTE: &str =
    "degenerate hypotheses: every finite ring is Noetherian and Artinian, so these hold vacuously";
pub const S_ARTINIAN_NOTE: &str =
    "S-Artinian is read with the chain condition for all n >= k; finite rings satisfy it with s = 1";
/// Largest ideal lattice on which the I meet J versus IJ entry runs.
pub const PAIR_SCOPE: usize = 16;
/// Largest number of all-nilpotent-coefficient polynomials enumerated.
const POLY_LIMIT: usize = 50_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    HypothesisNotMet,
    Violated,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::HypothesisNotMet => "hypothesis-not-met",
            Verdict::Violated => "violated",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub holds: bool,
}

fn hyp(name: &str, holds: bool) -> HypothesisCheck {
    HypothesisCheck {
        name: name.to_string(),
        holds,
    }
}

/// Outcome of one statement on one instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatementReport {
    pub statement: StatementId,
    pub variant: Variant,
    pub instance: Value,
    pub hypotheses: Vec<HypothesisCheck>,
    pub verdict: Verdict,
    pub payload: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

struct Outcome {
    hypotheses: Vec<HypothesisCheck>,
    verdict: Verdict,
    payload: Value,
    notes: Vec<String>,
}

/// Evaluates `hypotheses ⇒ conclusion` in the requested form. Under `Full`
/// the conclusion is not computed when a hypothesis fails.
fn implication(
    variant: Variant,
    hypotheses: Vec<HypothesisCheck>,
    conclusion: impl FnOnce() -> Result<(bool, Value)>,
) -> Result<Outcome> {
    let h = hypotheses.iter().all(|x| x.holds);
    if variant == Variant::Full && !h {
        return Ok(Outcome {
            hypotheses,
            verdict: Verdict::HypothesisNotMet,
            payload: json!({}),
            notes: Vec::new(),
        });
    }
    let (c, payload) = conclusion()?;
    let verdict = match variant {
        Variant::Full | Variant::DropHypothesis => {
            if c {
                Verdict::Holds
            } else {
                Verdict::Violated
            }
        }
        Variant::Converse => match (c, h) {
            (false, _) => Verdict::HypothesisNotMet,
            (true, true) => Verdict::Holds,
            (true, false) => Verdict::Violated,
        },
    };
    Ok(Outcome {
        hypotheses,
        verdict,
        payload,
        notes: Vec::new(),
    })
}

fn lit(ring: &FiniteRing, e: Elem) -> Value {
    ring.literal(e)
}

pub fn lits(ring: &FiniteRing, set: impl IntoIterator<Item = Elem>) -> Vec<Value> {
    set.into_iter().map(|e| ring.literal(e)).collect()
}

pub fn ideal_json(ring: &FiniteRing, i: &Ideal) -> Value {
    json!({
        "generators": lits(ring, i.generators().iter().copied()),
        "members": lits(ring, i.members().iter()),
    })
}

pub fn witness_json(ring: &FiniteRing, w: &BTreeMap<Elem, Elem>) -> Value {
    Value::Array(
        w.iter()
            .map(|(&a, &s)| json!({"element": lit(ring, a), "s": lit(ring, s)}))
            .collect(),
    )
}

/// `R/I` together with the image of `S`.
fn quotient_with_image(
    ring: &Arc<FiniteRing>,
    s: &MultiplicativeSet,
    i: &Ideal,
) -> Result<(Arc<FiniteRing>, ElemSet)> {
    let q = FiniteRing::quotient(ring, i.members(), i.generators())?;
    let img = ElemSet::from_elems(q.size(), s.elems().iter().map(|&t| q.project_from_base(t)));
    Ok((q, img))
}

fn image_set(q: &FiniteRing, img: &ElemSet, s: &MultiplicativeSet) -> Result<MultiplicativeSet> {
    let gens: Vec<Elem> = s
        .generators()
        .iter()
        .map(|&g| q.project_from_base(g))
        .collect();
    MultiplicativeSet::from_members(q, img.clone(), gens, true)
}

pub fn armendariz_json(ring: &FiniteRing, v: &ArmendarizVerdict) -> Value {
    let mut mode = json!({"degree": v.degree, "search": v.mode.name(), "budget": v.mode.budget()});
    if let Some(seed) = v.mode.seed() {
        mode["seed"] = json!(seed);
    }
    let mut out = json!({
        "mode": mode,
        "pairs_examined": v.pairs_examined,
        "complete": v.complete,
        "uniform_witness": v.uniform_witness.map(|s| lit(ring, s)),
        "per_pair_holds": v.per_pair_holds,
        "per_pair_witnesses": v.per_pair_witnesses.iter()
            .map(|(&s, &n)| json!({"s": lit(ring, s), "pairs": n}))
            .collect::<Vec<_>>(),
    });
    if !v.uniform_refutation.is_empty() {
        out["uniform_refutation"] = Value::Array(
            v.uniform_refutation
                .iter()
                .map(|(&s, (f, g))| json!({"s": lit(ring, s), "f": poly_json(ring, f), "g": poly_json(ring, g)}))
                .collect(),
        );
    }
    if let Some(viol) = &v.violation {
        out["violation"] = json!({
            "f": poly_json(ring, &viol.f),
            "g": poly_json(ring, &viol.g),
            "coefficient": viol.coefficient,
        });
    }
    out
}

pub fn poly_json(ring: &FiniteRing, p: &Polynomial) -> Value {
    Value::Array(p.coeffs().iter().map(|&c| lit(ring, c)).collect())
}

/// Runs one statement on one instance.
pub fn check_statement(
    id: StatementId,
    inst: &Instance,
    variant: Variant,
    cfg: &CorpusConfig,
) -> Result<StatementReport> {
    let mut out = match id {
        StatementId::SRadicalQuotient => s_radical_quotient(inst, variant, cfg),
        StatementId::IntersectionVsProduct => intersection_vs_product(inst, variant, cfg),
        StatementId::SpectrumSZero => spectrum_s_zero(inst, variant, cfg),
        StatementId::NilsInColon => nils_in_colon(inst, variant, cfg),
        StatementId::NilsSZero => nils_s_zero(inst, variant),
        StatementId::LocalizationReduced => localization_reduced(inst, variant),
        StatementId::LocalizationArtinian => localization_artinian(inst, variant, cfg),
        StatementId::ProductOfFields => product_of_fields(inst, variant, cfg),
        StatementId::PolyTransfer => poly_transfer(inst, variant),
        StatementId::USRedImpliesUSArm => u_s_red_implies_arm(inst, variant, cfg),
        StatementId::ERingArmendariz => e_ring_armendariz(inst, variant, cfg),
        StatementId::IdealizationArmendariz => idealization_armendariz(inst, variant, cfg),
        StatementId::SReducedImpliesHopfian => s_reduced_implies_hopfian(inst, variant),
        StatementId::SPfImpliesSReduced => s_pf_implies_s_reduced(inst, variant),
        StatementId::StructureForward => structure_forward(inst, variant, cfg),
        StatementId::StructureConverse => structure_converse(inst, variant, cfg),
        StatementId::NilIsIntersection => nil_is_intersection(inst, variant, cfg),
        StatementId::NilNilpotent => nil_nilpotent(inst, variant),
    }?;
    if id.degenerate_hypotheses() {
        out.notes.insert(0, DEGENERATE_NOTE.to_string());
    }
    if matches!(id, StatementId::ProductOfFields | StatementId::NilNilpotent) {
        out.notes.push(S_ARTINIAN_NOTE.to_string());
    }
    Ok(StatementReport {
        statement: id,
        variant,
        instance: inst.describe(),
        hypotheses: out.hypotheses,
        verdict: out.verdict,
        payload: out.payload,
        notes: out.notes,
        runtime_ms: None,
    })
}

fn s_reduced_hyp(inst: &Instance) -> HypothesisCheck {
    hyp(
        "S-reduced",
        is_s_reduced(&inst.ring, &inst.mult_set).verdict,
    )
}

fn s_meets_no_zero_divisor(inst: &Instance) -> bool {
    let z = zero_divisor_set(&inst.ring);
    inst.mult_set.members().is_disjoint(&z)
}

fn s_radical_quotient(inst: &Instance, variant: Variant, cfg: &CorpusConfig) -> Result<Outcome> {
    let (r, s) = (&inst.ring, &inst.mult_set);
    let ideals = enumerate_ideals(r, cfg.ideal_cap)?;
    let (mut checked, mut skipped) = (0usize, 0usize);
    let mut failure = None;
    for i in ideals.iter().filter(|i| i.is_proper()) {
        let (q, img) = quotient_with_image(r, s, i)?;
        let zero_in = img.contains(0);
        let hyp_ok = !zero_in && img.is_disjoint(&zero_divisor_set(&q));
        let include = match variant {
            Variant::Full | Variant::Converse => hyp_ok,
            Variant::DropHypothesis => !zero_in,
        };
        if !include {
            skipped += 1;
            continue;
        }
        checked += 1;
        let sbar = image_set(&q, &img, s)?;
        let rad = s_radical(r, s, i);
        let cert = is_s_reduced(&q, &sbar);
        if rad.is_s_radical != cert.verdict && failure.is_none() {
            let extra = rad
                .witnesses
                .iter()
                .find(|(a, _)| !i.contains(**a))
                .map(|(&a, &(t, n))| json!({"element": lit(r, a), "s": lit(r, t), "n": n}));
            failure = Some(json!({
                "ideal": ideal_json(r, i),
                "quotient": q.expr(),
                "image_of_s": lits(&q, img.iter()),
                "is_s_radical": rad.is_s_radical,
                "quotient_s_reduced": cert.verdict,
                "radical_escape": extra,
                "quotient_failing_nilpotent": cert.failing_element.map(|e| lit(&q, e)),
                "hypothesis_holds": hyp_ok,
            }));
        }
    }
    let hypotheses = vec![hyp(
        "some proper ideal I has no zero divisor of R/I and not 0 in the image of S",
        checked > 0,
    )];
    let verdict = if checked == 0 {
        Verdict::HypothesisNotMet
    } else if failure.is_some() {
        Verdict::Violated
    } else {
        Verdict::Holds
    };
    let mut notes = Vec::new();
    if variant == Variant::Converse {
        notes.push("the statement is an equivalence; the converse coincides with it".to_string());
    }
    Ok(Outcome {
        hypotheses,
        verdict,
        payload: json!({
            "ideals_checked": checked,
            "ideals_skipped": skipped,
            "counterexample": failure,
        }),
        notes,
    })
}

fn intersection_vs_product(
    inst: &Instance,
    variant: Variant,
    cfg: &CorpusConfig,
) -> Result<Outcome> {
    let (r, s) = (&inst.ring, &inst.mult_set);
    let ideals = enumerate_ideals(r, cfg.ideal_cap)?;
    if ideals.len() > PAIR_SCOPE {
        return Ok(Outcome {
            hypotheses: vec![hyp("at most 16 ideals", false)],
            verdict: Verdict::HypothesisNotMet,
            payload: json!({"ideal_count": ideals.len()}),
            notes: vec![format!("outside the checked scope of {PAIR_SCOPE} ideals")],
        });
    }
    let hypotheses = vec![s_reduced_hyp(inst), hyp("at most 16 ideals", true)];
    implication(variant, hypotheses, || {
        let mut pairs = 0;
        for (x, i) in ideals.iter().enumerate() {
            for j in &ideals[x..] {
                pairs += 1;
                let meet = i.intersection(r, j);
                let prod = i.product(r, j);
                let a = is_s_zero_ideal(r, s, &meet);
                let b = is_s_zero_ideal(r, s, &prod);
                if a.verdict != b.verdict {
                    return Ok((
                        false,
                        json!({
                            "pairs_checked": pairs,
                            "i": ideal_json(r, i),
                            "j": ideal_json(r, j),
                            "meet_s_zero": a.verdict,
                            "product_s_zero": b.verdict,
                            "meet_failing_element": a.failing_element.map(|e| lit(r, e)),
                            "product_failing_element": b.failing_element.map(|e| lit(r, e)),
                        }),
                    ));
                }
            }
        }
        Ok((
            true,
            json!({"pairs_checked": pairs, "ideal_count": ideals.len()}),
        ))
    })
}

fn spectrum_s_zero(inst: &Instance, variant: Variant, cfg: &CorpusConfig) -> Result<Outcome> {
    let (r, s) = (&inst.ring, &inst.mult_set);
    let hypotheses = vec![s_reduced_hyp(inst), hyp("0 not in S", !s.is_degenerate())];
    implication(variant, hypotheses, || {
        let spectrum = s_spectrum(r, s, cfg.ideal_cap)?;
        let mut meet = ElemSet::full(r.size());
        for w in &spectrum {
            meet.intersect_with(w.ideal.members());
        }
        let meet = Ideal::from_members(r, meet);
        let v = is_s_zero_ideal(r, s, &meet);
        Ok((
            v.verdict,
            json!({
                "spectrum": spectrum.iter().map(|w| json!({
                    "ideal": ideal_json(r, &w.ideal),
                    "witness_s": lit(r, w.witness_s),
                    "colon_prime": ideal_json(r, &w.colon_prime),
                })).collect::<Vec<_>>(),
                "intersection": ideal_json(r, &meet),
                "witnesses": witness_json(r, &v.witnesses),
                "failing_element": v.failing_element.map(|e| lit(r, e)),
            }),
        ))
    })
}

fn nils_in_colon(inst: &Instance, variant: Variant, cfg: &CorpusConfig) -> Result<Outcome> {
    let (r, s) = (&inst.ring, &inst.mult_set);
    implication(variant, Vec::new(), || {
        let nil = s_nilradical(r, s).ideal;
        let spectrum = s_spectrum(r, s, cfg.ideal_cap)?;
        let mut rows = Vec::new();
        let mut ok = true;
        for w in &spectrum {
            let colon = colon_elem(r, &w.ideal, w.stable_s);
            let contained = nil.is_subset(&colon);
            ok &= contained;
            rows.push(json!({
                "ideal": ideal_json(r, &w.ideal),
                "s_p": lit(r, w.stable_s),
                "colon": ideal_json(r, &colon),
                "colon_prime": is_prime_ideal(r, &colon),
                "contains_nil_s": contained,
            }));
        }
        Ok((ok, json!({"nil_s": ideal_json(r, &nil), "primes": rows})))
    })
}

fn nils_s_zero(inst: &Instance, variant: Variant) -> Result<Outcome> {
    let (r, s) = (&inst.ring, &inst.mult_set);
    implication(variant, vec![s_reduced_hyp(inst)], || {
        let nil = s_nilradical(r, s).ideal;
        let v = is_s_zero_ideal(r, s, &nil);
        Ok((
            v.verdict,
            json!({
                "nil_s": ideal_json(r, &nil),
                "witnesses": witness_json(r, &v.witnesses),
                "failing_element": v.failing_element.map(|e| lit(r, e)),
            }),
        ))
    })
}

fn localization_reduced(inst: &Instance, variant: Variant) -> Result<Outcome> {
    let (r, s) = (&inst.ring, &inst.mult_set);
    implication(variant, vec![s_reduced_hyp(inst)], || {
        let loc = localize(r, s);
        let (reduced, nil) = match &loc.localized {
            Some(l) => {
                let p = nilpotent_profile(l);
                (p.is_reduced(), lits(l, p.nilpotents()))
            }
            None => (true, Vec::new()),
        };
        Ok((
            reduced,
            json!({
                "torsion": ideal_json(r, &loc.torsion),
                "localized_size": loc.size(),
                "localized_nilpotents": nil,
                "degenerate": loc.degenerate,
            }),
        ))
    })
}

fn localization_artinian(inst: &Instance, variant: Variant, cfg: &CorpusConfig) -> Result<Outcome> {
    let (r, s) = (&inst.ring, &inst.mult_set);
    let loc = localize(r, s);
    let zd_or_unit = match &loc.localized {
        Some(l) => {
            let (z, u) = (zero_divisor_set(l), unit_set(l));
            (1..l.size()).all(|x| z.contains(x) || u.contains(x))
        }
        None => true,
    };
    let hypotheses = vec![
        hyp("S-Noetherian", true),
        s_reduced_hyp(inst),
        hyp(
            "every nonzero element of the localization is a zero divisor or a unit",
            zd_or_unit,
        ),
    ];
    implication(variant, hypotheses, || {
        let Some(l) = &loc.localized else {
            return Ok((true, json!({"localized_size": 1, "degenerate": true})));
        };
        let ideals = enumerate_ideals(l, cfg.ideal_cap)?;
        let maximal = |p: &Ideal| {
            p.is_proper()
                && !ideals
                    .iter()
                    .any(|q| q.is_proper() && q != p && p.is_subset(q))
        };
        let primes: Vec<&Ideal> = ideals.iter().filter(|p| is_prime_ideal(l, p)).collect();
        let dim_zero = primes.iter().all(|p| maximal(p));
        Ok((
            dim_zero,
            json!({
                "localized_size": l.size(),
                "ideal_count": ideals.len(),
                "prime_count": primes.len(),
                "every_prime_maximal": dim_zero,
            }),
        ))
    })
}

fn product_of_fields(inst: &Instance, variant: Variant, cfg: &CorpusConfig) -> Result<Outcome> {
    let (r, s) = (&inst.ring, &inst.mult_set);
    let hypotheses = vec![
        hyp("S-Artinian", true),
        hyp("reduced", nilpotent_profile(r).is_reduced()),
        hyp("S contains no zero divisor", s_meets_no_zero_divisor(inst)),
    ];
    implication(variant, hypotheses, || {
        let d = field_decomposition(r, s, cfg.ideal_cap)?;
        Ok((d.isomorphism, d.to_json(r)))
    })
}

/// `r ↦ (r + P_i)_i` over the primes disjoint from `S`, checked exhaustively.
pub struct FieldDecomposition {
    pub primes: Vec<Ideal>,
    pub factors: Vec<Arc<FiniteRing>>,
    pub all_fields: bool,
    pub bijective: bool,
    pub homomorphic: bool,
    pub isomorphism: bool,
    pub products_checked: usize,
    /// `r ↦` index in the product of the factors.
    pub map: Vec<Elem>,
}

impl FieldDecomposition {
    pub fn field_sizes(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.size()).collect()
    }

    fn to_json(&self, r: &FiniteRing) -> Value {
        json!({
            "primes": self.primes.iter().map(|p| ideal_json(r, p)).collect::<Vec<_>>(),
            "field_sizes": self.field_sizes(),
            "all_fields": self.all_fields,
            "bijective": self.bijective,
            "homomorphic": self.homomorphic,
            "products_checked": self.products_checked,
        })
    }
}

pub fn field_decomposition(
    r: &Arc<FiniteRing>,
    s: &MultiplicativeSet,
    ideal_cap: usize,
) -> Result<FieldDecomposition> {
    let ideals = enumerate_ideals(r, ideal_cap)?;
    let primes: Vec<Ideal> = ideals
        .into_iter()
        .filter(|p| is_prime_ideal(r, p) && p.members().is_disjoint(s.members()))
        .collect();
    let factors = primes
        .iter()
        .map(|p| FiniteRing::quotient(r, p.members(), p.generators()))
        .collect::<Result<Vec<_>>>()?;
    let all_fields = factors.iter().all(|f| crate::ring::is_field(f));
    let target = FiniteRing::product_of(factors.clone());
    let map: Vec<Elem> = r
        .elements()
        .map(|x| {
            let parts: Vec<Elem> = factors.iter().map(|f| f.project_from_base(x)).collect();
            target.join_product(&parts).expect("product ring")
        })
        .collect();
    let image = ElemSet::from_elems(target.size(), map.iter().copied());
    let bijective = target.size() == r.size() && image.is_full();
    let mut homomorphic = map[r.one()] == target.one();
    for a in r.elements() {
        for b in r.elements() {
            homomorphic &= map[r.add(a, b)] == target.add(map[a], map[b]);
            homomorphic &= map[r.mul(a, b)] == target.mul(map[a], map[b]);
        }
    }
    Ok(FieldDecomposition {
        isomorphism: all_fields && bijective && homomorphic && !primes.is_empty(),
        primes,
        factors,
        all_fields,
        bijective,
        homomorphic,
        products_checked: r.size() * r.size(),
        map,
    })
}

fn poly_transfer(inst: &Instance, variant: Variant) -> Result<Outcome> {
    let (r, s) = (&inst.ring, &inst.mult_set);
    implication(variant, Vec::new(), || {
        let profile = nilpotent_profile(r);
        let nil: Vec<Elem> = profile.nilpotents().collect();
        let degree = (0..=2usize)
            .rev()
            .find(|&d| {
                nil.len()
                    .checked_pow(d as u32 + 1)
                    .is_some_and(|n| n <= POLY_LIMIT)
            })
            .unwrap_or(0);
        let total = nil.len().pow(degree as u32 + 1);
        let mut poly_reduced = true;
        let mut failing = None;
        let mut nilpotency_checked = 0;
        let bound = (degree + 1) * profile.max_index().max(1) as usize;
        for code in 0..total {
            let mut c = code;
            let coeffs: Vec<Elem> = (0..=degree)
                .map(|_| {
                    let x = nil[c % nil.len()];
                    c /= nil.len();
                    x
                })
                .collect();
            let f = Polynomial::new(coeffs);
            if code < 500 {
                let mut p = f.clone();
                for _ in 1..bound {
                    p = p.mul(r, &f);
                }
                assert!(
                    p.is_zero(),
                    "polynomial with nilpotent coefficients must be nilpotent"
                );
                nilpotency_checked += 1;
            }
            let killed = s
                .elems()
                .iter()
                .any(|&t| f.coeffs().iter().all(|&a| r.mul(t, a) == 0));
            if !killed {
                poly_reduced = false;
                failing = Some(poly_json(r, &f));
                break;
            }
        }
        let ring_reduced = is_s_reduced(r, s).verdict;
        Ok((
            ring_reduced == poly_reduced,
            json!({
                "degree_bound": degree,
                "polynomials_examined": total,
                "nilpotency_rechecked": nilpotency_checked,
                "ring_s_reduced": ring_reduced,
                "polynomial_ring_s_reduced": poly_reduced,
                "failing_polynomial": failing,
            }),
        ))
    })
}

fn u_s_red_implies_arm(inst: &Instance, variant: Variant, cfg: &CorpusConfig) -> Result<Outcome> {
    let (r, s) = (&inst.ring, &inst.mult_set);
    let w = is_u_s_reduced(r, s);
    implication(variant, vec![hyp("u-S-reduced", w.is_some())], || {
        let (d, mode) = cfg.armendariz.mode_for(r.size());
        let v = is_u_s_armendariz_up_to(r, s, d, mode)?;
        let mut payload = armendariz_json(r, &v);
        payload["u_s_reduced_witness"] = json!(w.map(|x| lit(r, x)));
        Ok((v.uniform_holds(), payload))
    })
}

/// Derived rings are bounded by the expression itself, not the corpus cap.
fn build_cap(expr: &RingExpression) -> usize {
    expr.upper_size().min(1 << 24) as usize
}

/// `S' = ⟨(g, g, g, g) : g a generator of S⟩` inside `E(R)`.
pub fn e_ring_instance(inst: &Instance) -> Result<(Arc<FiniteRing>, MultiplicativeSet)> {
    let e_expr = RingExpression::triangular_e(inst.expr.clone());
    let e = build_ring(&e_expr, build_cap(&e_expr))?;
    let gens: Vec<Elem> = inst
        .mult_set
        .generators()
        .iter()
        .map(|&t| e.join_triangular([t; 4]).expect("triangular ring"))
        .collect();
    let s_prime = mult_closure(&e, &gens, false)?;
    Ok((e, s_prime))
}

fn e_ring_armendariz(inst: &Instance, variant: Variant, cfg: &CorpusConfig) -> Result<Outcome> {
    let r = &inst.ring;
    let limit = cfg.armendariz.e_ring_limit;
    if r.size() > limit {
        return Ok(Outcome {
            hypotheses: vec![hyp("base ring small enough to build E(R)", false)],
            verdict: Verdict::HypothesisNotMet,
            payload: json!({"base_size": r.size(), "limit": limit}),
            notes: vec![format!("E(R) is only built for |R| <= {limit}")],
        });
    }
    let hypotheses = vec![
        s_reduced_hyp(inst),
        hyp("base ring small enough to build E(R)", true),
    ];
    implication(variant, hypotheses, || {
        let (e, sp) = e_ring_instance(inst)?;
        let (d, mode) = cfg.armendariz.mode_for(e.size());
        let v = is_u_s_armendariz_up_to(&e, &sp, d, mode)?;
        let mut payload = armendariz_json(&e, &v);
        payload["e_ring"] = json!(e.expr());
        payload["e_size"] = json!(e.size());
        payload["s_prime"] = json!(lits(&e, sp.elems().iter().copied()));
        Ok((v.uniform_holds(), payload))
    })
}

/// `R(+)R` with `S(+)R = {(s, r)}`.
pub fn idealization_instance(inst: &Instance) -> Result<(Arc<FiniteRing>, MultiplicativeSet)> {
    let r = &inst.ring;
    let expr = self_idealization(&inst.expr);
    let ring = build_ring(&expr, build_cap(&expr))?;
    let members = ElemSet::from_elems(
        ring.size(),
        inst.mult_set
            .elems()
            .iter()
            .flat_map(|&t| r.elements().map(move |m| (t, m)))
            .map(|(t, m)| ring.join_idealization(t, m).expect("idealization")),
    );
    let gens = inst
        .mult_set
        .generators()
        .iter()
        .map(|&g| ring.join_idealization(g, 0).expect("idealization"))
        .collect();
    let set = MultiplicativeSet::from_members(&ring, members, gens, false)?;
    Ok((ring, set))
}

fn idealization_armendariz(
    inst: &Instance,
    variant: Variant,
    cfg: &CorpusConfig,
) -> Result<Outcome> {
    let (r, s) = (&inst.ring, &inst.mult_set);
    let w = is_u_s_reduced(r, s);
    implication(variant, vec![hyp("u-S-reduced", w.is_some())], || {
        let (ring, set) = idealization_instance(inst)?;
        let (d, mode) = cfg.armendariz.mode_for(ring.size());
        let v = is_u_s_armendariz_up_to(&ring, &set, d, mode)?;
        let mut payload = armendariz_json(&ring, &v);
        // With u the u-S-reduced witness, (u², u) should itself be uniform.
        let mut square_ok = true;
        if let Some(t) = w {
            let elem = ring
                .join_idealization(r.mul(t, t), t)
                .expect("idealization");
            square_ok = v.uniform_candidates.contains(&elem);
            payload["square_pair"] = lit(&ring, elem);
            payload["square_pair_is_uniform_witness"] = json!(square_ok);
        }
        payload["idealization_size"] = json!(ring.size());
        Ok((v.uniform_holds() && square_ok, payload))
    })
}

fn s_reduced_implies_hopfian(inst: &Instance, variant: Variant) -> Result<Outcome> {
    let (r, s) = (&inst.ring, &inst.mult_set);
    implication(variant, vec![s_reduced_hyp(inst)], || {
        let profile = s_strongly_hopfian_profile(r, s);
        let mut failing = None;
        for e in &profile {
            let ok = match e.shift_s {
                Some(t) => shift_recheck(r, e.element, t, e.stable_index as usize + 1),
                None => false,
            };
            if !ok {
                failing = Some(lit(r, e.element));
                break;
            }
        }
        let nontrivial: Vec<Value> = profile
            .iter()
            .filter(|e| e.k > 1 || e.s != r.one() || e.shift_s != Some(r.one()))
            .map(|e| {
                json!({
                    "element": lit(r, e.element),
                    "k": e.k,
                    "s": lit(r, e.s),
                    "stable_index": e.stable_index,
                    "shift_s": e.shift_s.map(|t| lit(r, t)),
                })
            })
            .collect();
        Ok((
            failing.is_none(),
            json!({
                "elements": profile.len(),
                "max_k": profile.iter().map(|e| e.k).max(),
                "max_stable_index": profile.iter().map(|e| e.stable_index).max(),
                "nontrivial_entries": nontrivial,
                "failing_element": failing,
            }),
        ))
    })
}

/// Direct re-check of `s·ann(aⁿ⁺¹) ⊆ ann(aⁿ)` for `n = 1..=upto`.
fn shift_recheck(r: &FiniteRing, a: Elem, t: Elem, upto: usize) -> bool {
    let ann = |x: Elem| -> Vec<Elem> { r.elements().filter(|&y| r.mul(x, y) == 0).collect() };
    (1..=upto).all(|n| {
        let lo = r.pow(a, n as u64);
        let hi = r.pow(a, n as u64 + 1);
        ann(hi).into_iter().all(|y| r.mul(r.mul(t, y), lo) == 0)
    })
}

fn s_pf_implies_s_reduced(inst: &Instance, variant: Variant) -> Result<Outcome> {
    let (r, s) = (&inst.ring, &inst.mult_set);
    let pf = is_s_pf(r, s);
    implication(variant, vec![hyp("S-PF", pf.verdict)], || {
        let cert = is_s_reduced(r, s);
        Ok((
            cert.verdict,
            json!({
                "s_pf_failing_element": pf.failing_element.map(|e| lit(r, e)),
                "witnesses": witness_json(r, &cert.witnesses),
                "failing_element": cert.failing_element.map(|e| lit(r, e)),
            }),
        ))
    })
}

/// Subdirect data over the S-minimal S-primes.
pub struct Decomposition {
    pub primes: Vec<Ideal>,
    pub kernel: Ideal,
    pub kernel_torsion: bool,
    pub surjective: bool,
    /// Per prime: least S̄-integral-domain witness of `R/P`, as a lift in `R`.
    pub domain_witnesses: Vec<Option<Elem>>,
}

impl Decomposition {
    pub fn domains(&self) -> bool {
        self.domain_witnesses.iter().all(Option::is_some)
    }

    fn to_json(&self, r: &FiniteRing) -> Value {
        json!({
            "s_minimal_s_primes": self.primes.iter().zip(&self.domain_witnesses).map(|(p, w)| json!({
                "ideal": ideal_json(r, p),
                "domain_witness": w.map(|x| lit(r, x)),
            })).collect::<Vec<_>>(),
            "kernel": ideal_json(r, &self.kernel),
            "kernel_s_torsion": self.kernel_torsion,
            "projections_surjective": self.surjective,
        })
    }
}

pub fn decomposition(
    r: &Arc<FiniteRing>,
    s: &MultiplicativeSet,
    ideal_cap: usize,
) -> Result<Decomposition> {
    let spectrum = s_spectrum(r, s, ideal_cap)?;
    let primes = s_minimal_s_primes(r, s, &spectrum);
    let mut kernel = ElemSet::full(r.size());
    let mut surjective = true;
    let mut domain_witnesses = Vec::new();
    for p in &primes {
        kernel.intersect_with(p.members());
        let (q, img) = quotient_with_image(r, s, p)?;
        let hit = ElemSet::from_elems(q.size(), r.elements().map(|x| q.project_from_base(x)));
        surjective &= hit.is_full();
        let sbar = image_set(&q, &img, s)?;
        let w = is_s_integral_domain(&q, &sbar).map(|t| {
            *s.elems()
                .iter()
                .find(|&&x| q.project_from_base(x) == t)
                .expect("image of S")
        });
        domain_witnesses.push(w);
    }
    let kernel = Ideal::from_members(r, kernel);
    let kernel_torsion = !primes.is_empty() && is_s_zero_ideal(r, s, &kernel).verdict;
    Ok(Decomposition {
        primes,
        kernel,
        kernel_torsion,
        surjective,
        domain_witnesses,
    })
}

fn structure_forward(inst: &Instance, variant: Variant, cfg: &CorpusConfig) -> Result<Outcome> {
    let (r, s) = (&inst.ring, &inst.mult_set);
    implication(variant, vec![s_reduced_hyp(inst)], || {
        let d = decomposition(r, s, cfg.ideal_cap)?;
        Ok((
            d.kernel_torsion && d.surjective && d.domains(),
            d.to_json(r),
        ))
    })
}

fn structure_converse(inst: &Instance, variant: Variant, cfg: &CorpusConfig) -> Result<Outcome> {
    let (r, s) = (&inst.ring, &inst.mult_set);
    let d = decomposition(r, s, cfg.ideal_cap)?;
    let hypotheses = vec![
        hyp("kernel of the subdirect map is S-torsion", d.kernel_torsion),
        hyp("every projection is surjective", d.surjective),
        hyp("every R/P is an S-integral domain", d.domains()),
    ];
    implication(variant, hypotheses, || {
        // s_i with s_i·a ∈ P_i for each prime, their product t lands in the
        // kernel, then a torsion witness u gives (t·u)·a = 0.
        let mut derived = BTreeMap::new();
        let mut failing = None;
        for a in nilpotent_profile(r).nilpotents() {
            let lifts: Option<Vec<Elem>> = d
                .primes
                .iter()
                .map(|p| s.elems().iter().copied().find(|&x| p.contains(r.mul(x, a))))
                .collect();
            let w = lifts.and_then(|ls| {
                let t = ls.iter().fold(r.one(), |acc, &x| r.mul(acc, x));
                let ta = r.mul(t, a);
                if !d.kernel.contains(ta) {
                    return None;
                }
                let u = s.elems().iter().copied().find(|&u| r.mul(u, ta) == 0)?;
                Some(r.mul(t, u))
            });
            match w {
                Some(w) if r.mul(w, a) == 0 => {
                    derived.insert(a, w);
                }
                _ => {
                    failing = Some(a);
                    break;
                }
            }
        }
        let agrees = is_s_reduced(r, s).verdict == failing.is_none();
        Ok((
            failing.is_none() && agrees,
            json!({
                "decomposition": d.to_json(r),
                "derived_witnesses": witness_json(r, &derived),
                "failing_element": failing.map(|e| lit(r, e)),
            }),
        ))
    })
}

fn primes_avoiding(r: &FiniteRing, s: &MultiplicativeSet, cap: usize) -> Result<Vec<Ideal>> {
    Ok(enumerate_ideals(r, cap)?
        .into_iter()
        .filter(|p| is_prime_ideal(r, p) && p.members().is_disjoint(s.members()))
        .collect())
}

fn nil_is_intersection(inst: &Instance, variant: Variant, cfg: &CorpusConfig) -> Result<Outcome> {
    let (r, s) = (&inst.ring, &inst.mult_set);
    let hypotheses = vec![hyp(
        "S contains no zero divisor",
        s_meets_no_zero_divisor(inst),
    )];
    implication(variant, hypotheses, || {
        let nil = Ideal::from_members(r, nilpotent_profile(r).as_set());
        let primes = primes_avoiding(r, s, cfg.ideal_cap)?;
        let mut meet = ElemSet::full(r.size());
        for p in &primes {
            meet.intersect_with(p.members());
        }
        let meet = Ideal::from_members(r, meet);
        Ok((
            nil == meet,
            json!({
                "nil": ideal_json(r, &nil),
                "primes_avoiding_s": primes.iter().map(|p| ideal_json(r, p)).collect::<Vec<_>>(),
                "intersection": ideal_json(r, &meet),
            }),
        ))
    })
}

fn nil_nilpotent(inst: &Instance, variant: Variant) -> Result<Outcome> {
    let r = &inst.ring;
    let hypotheses = vec![
        hyp("S contains no zero divisor", s_meets_no_zero_divisor(inst)),
        hyp("S-Artinian", true),
    ];
    implication(variant, hypotheses, || {
        let nil = Ideal::from_members(r, nilpotent_profile(r).as_set());
        let mut power = nil.clone();
        let mut k = 1;
        while !power.is_zero() {
            let next = power.product(r, &nil);
            if next == power {
                break;
            }
            power = next;
            k += 1;
        }
        Ok((
            power.is_zero(),
            json!({"nil": ideal_json(r, &nil), "nilpotency_index": power.is_zero().then_some(k)}),
        ))
    })
}

/// Principal ideal helper for callers building payloads by hand.
pub fn principal(r: &FiniteRing, a: Elem) -> Ideal {
    ideal_generated(r, &[a])
}
