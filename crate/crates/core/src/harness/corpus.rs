use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{mult_closure, MultiplicativeSet, DEFAULT_IDEAL_CAP};
use crate::ring::{build_ring, self_idealization, FiniteRing, ModuleSpec, RingExpression};
use crate::stheory::{exhaustive_cost, is_s_reduced, is_u_s_reduced, SearchMode};
use crate::Elem;

/// A ring with a multiplicative set, plus the data needed to rebuild it.
#[derive(Clone, Debug)]
pub struct Instance {
    pub index: usize,
    pub expr: RingExpression,
    /// Generator literals of `S`.
    pub generators: Vec<Value>,
    pub ring: Arc<FiniteRing>,
    pub mult_set: MultiplicativeSet,
    pub curated: bool,
}

impl Instance {
    pub fn new(
        index: usize,
        expr: RingExpression,
        generators: Vec<Value>,
        cap: usize,
    ) -> Result<Self> {
        let ring = build_ring(&expr, cap)?;
        let gens = generators
            .iter()
            .enumerate()
            .map(|(i, l)| ring.parse_literal(l, &format!("mult_set.generators[{i}]")))
            .collect::<Result<Vec<Elem>>>()?;
        let mult_set = mult_closure(&ring, &gens, false)?;
        Ok(Self {
            index,
            expr,
            generators,
            ring,
            mult_set,
            curated: false,
        })
    }

    /// Builds from element indices rather than literals.
    pub fn from_elems(index: usize, ring: Arc<FiniteRing>, gens: &[Elem]) -> Result<Self> {
        let mult_set = mult_closure(&ring, gens, false)?;
        Ok(Self {
            index,
            expr: ring.expr().clone(),
            generators: gens.iter().map(|&g| ring.literal(g)).collect(),
            ring,
            mult_set,
            curated: false,
        })
    }

    pub fn label(&self) -> String {
        if self.generators.is_empty() {
            format!("{} with S = {{1}}", self.expr)
        } else {
            let gens: Vec<String> = self.generators.iter().map(Value::to_string).collect();
            format!("{} with S = <{}>", self.expr, gens.join(", "))
        }
    }

    /// Same JSON shape as a ring-definition file, plus index and label.
    pub fn describe(&self) -> Value {
        json!({
            "index": self.index,
            "label": self.label(),
            "ring": self.expr,
            "mult_set": {
                "generators": self.generators,
                "members": self.mult_set.elems().iter().map(|&e| self.ring.literal(e)).collect::<Vec<_>>(),
            },
        })
    }
}

/// Which instances survive generation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusFilter {
    #[default]
    All,
    SReduced,
    USReduced,
}

/// How Armendariz-dependent entries search for zero-product pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ArmendarizPolicy {
    /// Rings up to this size are searched exhaustively.
    pub exhaustive_limit: usize,
    pub exhaustive_degree: usize,
    pub exhaustive_budget: u64,
    pub sampled_degree: usize,
    pub budget: u64,
    pub seed: u64,
    /// Largest base ring for which `E(R)` is built.
    pub e_ring_limit: usize,
}

impl Default for ArmendarizPolicy {
    fn default() -> Self {
        Self {
            exhaustive_limit: 12,
            exhaustive_degree: 2,
            exhaustive_budget: 10_000_000,
            sampled_degree: 1,
            budget: 100_000,
            seed: 42,
            e_ring_limit: 12,
        }
    }
}

impl ArmendarizPolicy {
    /// Degree and search mode for a ring of the given size.
    pub fn mode_for(&self, ring_size: usize) -> (usize, SearchMode) {
        if ring_size <= self.exhaustive_limit
            && exhaustive_cost(ring_size, self.exhaustive_degree) <= self.exhaustive_budget as u128
        {
            return (
                self.exhaustive_degree,
                SearchMode::Exhaustive {
                    budget: self.exhaustive_budget,
                },
            );
        }
        (
            self.sampled_degree,
            SearchMode::Sampled {
                seed: self.seed,
                budget: self.budget,
            },
        )
    }

    /// Caps both degrees at `d`.
    pub fn with_max_degree(mut self, d: usize) -> Self {
        self.exhaustive_degree = self.exhaustive_degree.min(d);
        self.sampled_degree = self.sampled_degree.min(d);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusConfig {
    pub seed: u64,
    /// Number of random instances appended after the curated ones.
    pub count: usize,
    pub size_cap: usize,
    pub max_depth: usize,
    pub ideal_cap: usize,
    pub filter: CorpusFilter,
    pub armendariz: ArmendarizPolicy,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            count: 30,
            size_cap: 64,
            max_depth: 2,
            ideal_cap: DEFAULT_IDEAL_CAP,
            filter: CorpusFilter::All,
            armendariz: ArmendarizPolicy::default(),
        }
    }
}

fn z(n: u64) -> RingExpression {
    RingExpression::zmod(n)
}

/// Hand-picked instances covering every worked example.
pub fn curated_instances() -> Vec<(RingExpression, Vec<Value>)> {
    vec![
        (z(24), vec![json!(2)]),
        (z(12), vec![json!(4)]),
        (z(12), vec![json!(2)]),
        (z(4), vec![json!(3)]),
        (z(6), vec![json!(2)]),
        (z(6), vec![]),
        (z(5), vec![]),
        (z(7), vec![json!(3)]),
        (z(30), vec![]),
        (z(8), vec![json!(3)]),
        (RingExpression::product(vec![z(2), z(2)]), vec![]),
        (
            RingExpression::product(vec![z(2), z(2)]),
            vec![json!([1, 0])],
        ),
        (z(4), vec![]),
        (z(12), vec![]),
        (z(24), vec![]),
        (self_idealization(&z(2)), vec![]),
        (self_idealization(&z(4)), vec![]),
        (RingExpression::quotient(z(24), vec![json!(3)]), vec![]),
        (
            RingExpression::product(vec![z(4), z(3)]),
            vec![json!([1, 0])],
        ),
    ]
}

fn passes(filter: CorpusFilter, inst: &Instance) -> bool {
    match filter {
        CorpusFilter::All => true,
        CorpusFilter::SReduced => is_s_reduced(&inst.ring, &inst.mult_set).verdict,
        CorpusFilter::USReduced => is_u_s_reduced(&inst.ring, &inst.mult_set).is_some(),
    }
}

/// Curated instances followed by `count` seeded random ones; deterministic in the config.
pub fn generate_corpus(config: &CorpusConfig) -> Result<Vec<Instance>> {
    let cap = config.size_cap.max(2);
    let mut out = Vec::new();
    for (expr, gens) in curated_instances() {
        let mut inst = Instance::new(out.len(), expr, gens, cap.max(64))?;
        inst.curated = true;
        if passes(config.filter, &inst) {
            out.push(inst);
        }
    }
    let mut seen: BTreeSet<String> = out.iter().map(instance_key).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut added = 0;
    let mut attempts = 0;
    while added < config.count && attempts < 1000 * config.count.max(1) {
        attempts += 1;
        let Some(inst) = random_instance(&mut rng, cap, config.max_depth.max(1), out.len()) else {
            continue;
        };
        if !passes(config.filter, &inst) || !seen.insert(instance_key(&inst)) {
            continue;
        }
        out.push(inst);
        added += 1;
    }
    Ok(out)
}

fn instance_key(inst: &Instance) -> String {
    format!(
        "{}|{:?}",
        serde_json::to_string(&inst.expr).unwrap_or_default(),
        inst.mult_set.elems()
    )
}

/// One random valid instance, or `None` if the draw was rejected.
pub fn random_instance(
    rng: &mut ChaCha8Rng,
    cap: usize,
    depth: usize,
    index: usize,
) -> Option<Instance> {
    let expr = random_expr(rng, cap, depth)?;
    let ring = match build_ring(&expr, cap) {
        Ok(r) => r,
        Err(Error::SizeCapExceeded { .. } | Error::ZeroRing) => return None,
        Err(_) => return None,
    };
    let k = rng.random_range(0..=2);
    let one = ring.one();
    let gens: BTreeSet<Elem> = (0..k)
        .map(|_| rng.random_range(1..ring.size()))
        .filter(|&g| g != one)
        .collect();
    let gens: Vec<Elem> = gens.into_iter().collect();
    Instance::from_elems(index, ring, &gens).ok()
}

fn random_expr(rng: &mut ChaCha8Rng, cap: usize, depth: usize) -> Option<RingExpression> {
    if cap < 2 {
        return None;
    }
    let roll = if depth <= 1 || cap < 4 {
        0
    } else {
        rng.random_range(0..20)
    };
    match roll {
        0..=6 => Some(z(rng.random_range(2..=cap.min(64)) as u64)),
        7..=11 => {
            let a = random_expr(rng, cap / 2, depth - 1)?;
            let sa = build_ring(&a, cap).ok()?.size();
            let b = random_expr(rng, cap / sa, depth - 1)?;
            Some(RingExpression::product(vec![a, b]))
        }
        12..=15 => {
            let base = random_expr(rng, cap, depth - 1)?;
            let ring = build_ring(&base, cap).ok()?;
            let g = rng.random_range(1..ring.size());
            Some(RingExpression::quotient(base, vec![ring.literal(g)]))
        }
        _ => {
            let sqrt = (cap as f64).sqrt() as usize;
            let base = random_expr(rng, sqrt.max(2), depth - 1)?;
            let ring = build_ring(&base, cap).ok()?;
            let module = if rng.random_bool(0.5) {
                ModuleSpec::free(1)
            } else {
                let g = rng.random_range(0..ring.size());
                ModuleSpec {
                    cyclic: vec![vec![ring.literal(g)]],
                }
            };
            Some(RingExpression::idealization(base, module))
        }
    }
}
