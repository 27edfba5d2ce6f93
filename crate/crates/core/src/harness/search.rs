use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use super::catalog::{StatementId, Variant};
use super::checks::{check_statement, StatementReport, Verdict};
use super::corpus::{random_instance, CorpusConfig, Instance};
use crate::error::Result;
use crate::lattice::enumerate_ideals;
use crate::ring::RingExpression;

/// Result of scanning for instances that violate a statement.
#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub statement: StatementId,
    pub variant: Variant,
    pub instances_scanned: usize,
    pub violations_found: usize,
    pub first: Option<StatementReport>,
    pub minimized: Option<StatementReport>,
    pub shrink_steps: usize,
}

/// Runs every statement over every instance, preserving (statement, instance) order.
pub fn verify_catalog(
    ids: &[StatementId],
    corpus: &[Instance],
    variant: Variant,
    cfg: &CorpusConfig,
    timings: bool,
) -> Result<Vec<StatementReport>> {
    let jobs: Vec<(StatementId, &Instance)> = ids
        .iter()
        .flat_map(|&id| corpus.iter().map(move |inst| (id, inst)))
        .collect();
    jobs.into_par_iter()
        .map(|(id, inst)| {
            let start = std::time::Instant::now();
            let mut r = check_statement(id, inst, variant, cfg)?;
            if timings {
                r.runtime_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            Ok(r)
        })
        .collect()
}

/// Scans `corpus` plus `fresh` seeded random instances, then shrinks the
/// first violation through homomorphic images and smaller generator lists.
pub fn counterexample_search(
    id: StatementId,
    variant: Variant,
    corpus: &[Instance],
    fresh: usize,
    cfg: &CorpusConfig,
) -> Result<SearchOutcome> {
    let mut pool: Vec<Instance> = corpus.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
    let mut attempts = 0;
    let target = pool.len() + fresh;
    while pool.len() < target && attempts < fresh * 100 {
        attempts += 1;
        if let Some(inst) = random_instance(&mut rng, cfg.size_cap, cfg.max_depth, pool.len()) {
            pool.push(inst);
        }
    }
    let reports = pool
        .par_iter()
        .map(|inst| check_statement(id, inst, variant, cfg))
        .collect::<Result<Vec<_>>>()?;
    let violations: Vec<usize> = (0..reports.len())
        .filter(|&i| reports[i].verdict == Verdict::Violated)
        .collect();
    let mut out = SearchOutcome {
        statement: id,
        variant,
        instances_scanned: pool.len(),
        violations_found: violations.len(),
        first: None,
        minimized: None,
        shrink_steps: 0,
    };
    let Some(&first) = violations.first() else {
        return Ok(out);
    };
    out.first = Some(reports[first].clone());
    // Start from the smallest violating instance; ties go to the earliest.
    let start = violations
        .iter()
        .copied()
        .min_by_key(|&i| (pool[i].ring.size(), pool[i].generators.len(), i))
        .expect("nonempty");
    let (_, report, steps) = shrink(
        id,
        variant,
        pool[start].clone(),
        reports[start].clone(),
        cfg,
    )?;
    out.minimized = Some(report);
    out.shrink_steps = steps;
    Ok(out)
}

fn shrink(
    id: StatementId,
    variant: Variant,
    mut current: Instance,
    mut report: StatementReport,
    cfg: &CorpusConfig,
) -> Result<(Instance, StatementReport, usize)> {
    let mut steps = 0;
    'outer: loop {
        for cand in shrink_candidates(&current, cfg) {
            let r = check_statement(id, &cand, variant, cfg)?;
            if r.verdict == Verdict::Violated {
                current = cand;
                report = r;
                steps += 1;
                continue 'outer;
            }
        }
        return Ok((current, report, steps));
    }
}

type LiteralMap = Box<dyn Fn(&Value) -> Value>;

/// Strictly smaller candidates, ordered by ring size then generator count.
/// Structural images come before generic quotients of equal size.
pub fn shrink_candidates(inst: &Instance, cfg: &CorpusConfig) -> Vec<Instance> {
    let mut out: Vec<(usize, usize, usize, Instance)> = Vec::new();
    let mut push = |rank: usize, cand: Instance| {
        out.push((cand.ring.size(), cand.generators.len(), rank, cand));
    };
    for (expr, map) in images(&inst.expr) {
        let gens = inst.generators.iter().map(&map).collect();
        if let Ok(c) = Instance::new(inst.index, expr, gens, cfg.size_cap) {
            if c.ring.size() < inst.ring.size() {
                push(0, c);
            }
        }
    }
    if let Ok(ideals) = enumerate_ideals(&inst.ring, cfg.ideal_cap) {
        for i in ideals.iter().filter(|i| !i.is_zero() && i.is_proper()) {
            let lits = i
                .generators()
                .iter()
                .map(|&g| inst.ring.literal(g))
                .collect();
            let expr = RingExpression::quotient(inst.expr.clone(), lits);
            if let Ok(c) = Instance::new(inst.index, expr, inst.generators.clone(), cfg.size_cap) {
                push(1, c);
            }
        }
    }
    for k in 0..inst.generators.len() {
        let mut gens = inst.generators.clone();
        gens.remove(k);
        if let Ok(c) = Instance::new(inst.index, inst.expr.clone(), gens, cfg.size_cap) {
            push(0, c);
        }
    }
    out.sort_by_key(|(size, gens, rank, _)| (*size, *gens, *rank));
    out.into_iter().map(|(.., c)| c).collect()
}

/// Proper homomorphic images reachable by editing the expression tree, with
/// the induced map on element literals.
fn images(expr: &RingExpression) -> Vec<(RingExpression, LiteralMap)> {
    let mut out: Vec<(RingExpression, LiteralMap)> = Vec::new();
    match expr {
        RingExpression::Zmod { n } => {
            for d in (2..*n).filter(|d| n % d == 0) {
                out.push((
                    RingExpression::zmod(d),
                    Box::new(move |v: &Value| {
                        Value::from(v.as_i64().unwrap_or(0).rem_euclid(d as i64))
                    }),
                ));
            }
        }
        RingExpression::Product { factors } => {
            if factors.len() > 1 {
                for k in 0..factors.len() {
                    let mut rest = factors.clone();
                    rest.remove(k);
                    let expr = if rest.len() == 1 {
                        rest.pop().unwrap()
                    } else {
                        RingExpression::product(rest)
                    };
                    let single = factors.len() == 2;
                    out.push((
                        expr,
                        Box::new(move |v: &Value| {
                            let mut items = v.as_array().cloned().unwrap_or_default();
                            if k < items.len() {
                                items.remove(k);
                            }
                            if single {
                                items.pop().unwrap_or(Value::Null)
                            } else {
                                Value::Array(items)
                            }
                        }),
                    ));
                }
            }
            for (k, f) in factors.iter().enumerate() {
                for (sub, map) in images(f) {
                    let mut fs = factors.clone();
                    fs[k] = sub;
                    out.push((
                        RingExpression::product(fs),
                        Box::new(move |v: &Value| {
                            let mut items = v.as_array().cloned().unwrap_or_default();
                            if k < items.len() {
                                items[k] = map(&items[k]);
                            }
                            Value::Array(items)
                        }),
                    ));
                }
            }
        }
        RingExpression::Quotient { base, ideal } => {
            if let RingExpression::Zmod { n } = base.as_ref() {
                let d = ideal
                    .iter()
                    .filter_map(Value::as_i64)
                    .fold(*n as i64, |g, x| gcd(g, x.rem_euclid(*n as i64)));
                if d > 1 {
                    out.push((
                        RingExpression::zmod(d as u64),
                        Box::new(move |v: &Value| {
                            Value::from(v.as_i64().unwrap_or(0).rem_euclid(d))
                        }),
                    ));
                }
            }
            for (sub, map) in images(base) {
                let ideal: Vec<Value> = ideal.iter().map(&map).collect();
                out.push((RingExpression::quotient(sub, ideal), map));
            }
        }
        RingExpression::Idealization { base, .. } => {
            out.push((
                base.as_ref().clone(),
                Box::new(|v: &Value| {
                    v.as_array()
                        .and_then(|a| a.first().cloned())
                        .unwrap_or(Value::Null)
                }),
            ));
        }
        RingExpression::TriangularE { base } => {
            out.push((
                base.as_ref().clone(),
                Box::new(|v: &Value| {
                    v.as_array()
                        .and_then(|a| a.first().cloned())
                        .unwrap_or(Value::Null)
                }),
            ));
            for (sub, map) in images(base) {
                out.push((
                    RingExpression::triangular_e(sub),
                    Box::new(move |v: &Value| {
                        Value::Array(
                            v.as_array()
                                .cloned()
                                .unwrap_or_default()
                                .iter()
                                .map(&map)
                                .collect(),
                        )
                    }),
                ));
            }
        }
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}
