//! Bounded-degree zero-product search and the two Armendariz readings.
//!
//! Pairs `(f, g)` with `deg f, deg g ≤ D` and `fg = 0` come either from a full
//! enumeration or from seeded sampling. In both cases `g` is built one
//! coefficient at a time from the convolution equations
//! `a₀·b_k = −Σ_{i≥1} a_i·b_{k−i}`, so only genuine zero-product pairs are
//! produced.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::lattice::MultiplicativeSet;
use crate::ring::{FiniteRing, Polynomial};
use crate::Elem;

/// Sampled runs are split into this many independently seeded chunks.
pub const SAMPLE_CHUNKS: u64 = 16;
/// Draws allowed per requested pair before a sampled chunk gives up.
const DRAWS_PER_PAIR: u64 = 50;
/// Partner attempts per drawn `f`.
const PARTNER_TRIES: usize = 8;
/// Above this size, solving `a·x = c` uses the ring structure instead of a scan.
const SCAN_LIMIT: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive { budget: u64 },
    Sampled { seed: u64, budget: u64 },
}

impl SearchMode {
    pub fn budget(&self) -> u64 {
        match *self {
            SearchMode::Exhaustive { budget } | SearchMode::Sampled { budget, .. } => budget,
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match *self {
            SearchMode::Sampled { seed, .. } => Some(seed),
            SearchMode::Exhaustive { .. } => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SearchMode::Exhaustive { .. } => "exhaustive",
            SearchMode::Sampled { .. } => "sampled",
        }
    }
}

/// `|R|^(2D+2)`, saturating.
pub fn exhaustive_cost(ring_size: usize, degree: usize) -> u128 {
    (ring_size as u128).saturating_pow(2 * degree as u32 + 2)
}

fn check_feasible(ring: &FiniteRing, degree: usize, mode: SearchMode) -> Result<()> {
    if let SearchMode::Exhaustive { budget } = mode {
        let needed = exhaustive_cost(ring.size(), degree);
        if needed > budget as u128 {
            return Err(Error::ExhaustiveInfeasible { needed, budget });
        }
    }
    Ok(())
}

fn chunk_count(ring: &FiniteRing, mode: SearchMode) -> usize {
    match mode {
        SearchMode::Exhaustive { .. } => ring.size(),
        SearchMode::Sampled { .. } => SAMPLE_CHUNKS as usize,
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed for one sampling chunk, derived from the master seed.
pub fn chunk_seed(seed: u64, chunk: u64) -> u64 {
    splitmix(seed ^ splitmix(chunk))
}

/// Runs `visit` on every pair of one chunk; returns whether the chunk met its quota.
fn run_chunk(
    ring: &FiniteRing,
    degree: usize,
    mode: SearchMode,
    chunk: usize,
    visit: &mut dyn FnMut(&[Elem], &[Elem]),
) -> bool {
    match mode {
        SearchMode::Exhaustive { .. } => {
            exhaustive_chunk(ring, degree, chunk, visit);
            true
        }
        SearchMode::Sampled { seed, budget } => {
            let base = budget / SAMPLE_CHUNKS;
            let quota = base + u64::from((chunk as u64) < budget % SAMPLE_CHUNKS);
            let mut rng = ChaCha8Rng::seed_from_u64(chunk_seed(seed, chunk as u64));
            sampled_chunk(ring, degree, quota, &mut rng, visit)
        }
    }
}

/// Convolution coefficient `Σ_{i+j=k} f_i g_j` restricted to known `g` entries.
fn conv(ring: &FiniteRing, f: &[Elem], g: &[Elem], k: usize, from_i: usize) -> Elem {
    let d = f.len() - 1;
    let lo = k.saturating_sub(d).max(from_i);
    (lo..=k.min(d)).fold(0, |acc, i| ring.add(acc, ring.mul(f[i], g[k - i])))
}

fn tail_vanishes(ring: &FiniteRing, f: &[Elem], g: &[Elem]) -> bool {
    let d = f.len() - 1;
    (d + 1..=2 * d).all(|k| conv(ring, f, g, k, 0) == 0)
}

/// Every `f` with leading index `f₀ = chunk`, every compatible `g`.
fn exhaustive_chunk(
    ring: &FiniteRing,
    degree: usize,
    chunk: usize,
    visit: &mut dyn FnMut(&[Elem], &[Elem]),
) {
    let n = ring.size();
    let a0 = chunk;
    let solutions: Vec<Vec<Elem>> = ring.elements().map(|c| ring.solve_mul(a0, c)).collect();
    let mut f = vec![0; degree + 1];
    f[0] = a0;
    let mut g = vec![0; degree + 1];
    loop {
        dfs(ring, &f, &mut g, 0, &solutions, visit);
        // next f in the odometer over positions 1..=D
        let mut pos = 1;
        loop {
            if pos > degree {
                return;
            }
            f[pos] += 1;
            if f[pos] < n {
                break;
            }
            f[pos] = 0;
            pos += 1;
        }
    }
}

fn dfs(
    ring: &FiniteRing,
    f: &[Elem],
    g: &mut Vec<Elem>,
    k: usize,
    solutions: &[Vec<Elem>],
    visit: &mut dyn FnMut(&[Elem], &[Elem]),
) {
    if k == f.len() {
        if tail_vanishes(ring, f, g) {
            visit(f, g);
        }
        return;
    }
    let c = ring.neg(conv(ring, f, g, k, 1));
    for &x in &solutions[c] {
        g[k] = x;
        dfs(ring, f, g, k + 1, solutions, visit);
    }
    g[k] = 0;
}

fn sampled_chunk(
    ring: &FiniteRing,
    degree: usize,
    quota: u64,
    rng: &mut ChaCha8Rng,
    visit: &mut dyn FnMut(&[Elem], &[Elem]),
) -> bool {
    let n = ring.size();
    let mut emitted = 0;
    let mut draws = 0;
    let mut f = vec![0; degree + 1];
    let mut g = vec![0; degree + 1];
    while emitted < quota && draws < quota * DRAWS_PER_PAIR {
        draws += 1;
        for c in f.iter_mut() {
            *c = rng.random_range(0..n);
        }
        for _ in 0..PARTNER_TRIES {
            if sample_partner(ring, &f, &mut g, rng) {
                visit(&f, &g);
                emitted += 1;
                break;
            }
        }
    }
    emitted == quota
}

fn sample_partner(ring: &FiniteRing, f: &[Elem], g: &mut [Elem], rng: &mut ChaCha8Rng) -> bool {
    for k in 0..g.len() {
        let c = ring.neg(conv(ring, f, g, k, 1));
        match random_solution(ring, f[0], c, rng) {
            Some(x) => g[k] = x,
            None => return false,
        }
    }
    tail_vanishes(ring, f, g)
}

/// Uniform choice among `x` with `a·x = c`, by scanning twice instead of collecting.
fn pick(ring: &FiniteRing, a: Elem, c: Elem, rng: &mut ChaCha8Rng) -> Option<Elem> {
    let count = ring.elements().filter(|&x| ring.mul(a, x) == c).count();
    if count == 0 {
        return None;
    }
    let k = rng.random_range(0..count);
    ring.elements().filter(|&x| ring.mul(a, x) == c).nth(k)
}

/// A random `x` with `a·x = c`, or `None` if the attempt found none.
///
/// Small rings scan; products, idealizations and triangular rings solve
/// componentwise. The draw is not uniform over all solutions.
pub fn random_solution(ring: &FiniteRing, a: Elem, c: Elem, rng: &mut ChaCha8Rng) -> Option<Elem> {
    if ring.size() <= SCAN_LIMIT {
        return pick(ring, a, c, rng);
    }
    if let Some(factors) = ring.factors() {
        let (pa, pc) = (ring.split_product(a)?, ring.split_product(c)?);
        let mut parts = Vec::with_capacity(factors.len());
        for ((fr, &x), &y) in factors.iter().zip(&pa).zip(&pc) {
            parts.push(random_solution(fr, x, y, rng)?);
        }
        return ring.join_product(&parts);
    }
    if let (Some([a0, a1, a2, a3]), Some([c0, c1, c2, c3])) =
        (ring.split_triangular(a), ring.split_triangular(c))
    {
        // (a0,a1,a2,a3)(x,y,z,w) = (a0x, a0y+a1x, a0z+a1w+a2x, a0w+a3x)
        let b = ring.base()?;
        let x = random_solution(b, a0, c0, rng)?;
        let y = random_solution(b, a0, b.sub(c1, b.mul(a1, x)), rng)?;
        let w = random_solution(b, a0, b.sub(c3, b.mul(a3, x)), rng)?;
        let rhs = b.sub(b.sub(c2, b.mul(a1, w)), b.mul(a2, x));
        let z = random_solution(b, a0, rhs, rng)?;
        let sol = ring.join_triangular([x, y, z, w])?;
        debug_assert_eq!(ring.mul(a, sol), c);
        return Some(sol);
    }
    if let (Some((r, _)), Some((p, _))) = (ring.split_idealization(a), ring.split_idealization(c)) {
        // (r,u)(x,m) = (rx, r·m + x·u), and r acts on each summand separately.
        let b = ring.base()?;
        let x = random_solution(b, r, p, rng)?;
        let (_, t) =
            ring.split_idealization(ring.sub(c, ring.mul(a, ring.join_idealization(x, 0)?)))?;
        let parts = ring.module_parts()?;
        let mut digits = Vec::with_capacity(parts.len());
        for (part, d) in parts.iter().zip(ring.module_digits(t)?) {
            digits.push(random_solution(part, part.project_from_base(r), d, rng)?);
        }
        let sol = ring.join_idealization(x, ring.join_module(&digits)?)?;
        debug_assert_eq!(ring.mul(a, sol), c);
        return Some(sol);
    }
    pick(ring, a, c, rng)
}

/// Zero-product pairs with both degrees at most `degree`.
#[derive(Clone, Debug)]
pub struct PairStream {
    pub pairs: Vec<(Polynomial, Polynomial)>,
    /// False when a sampled run could not fill its budget.
    pub complete: bool,
}

pub fn zero_product_poly_pairs(
    ring: &FiniteRing,
    degree: usize,
    mode: SearchMode,
) -> Result<PairStream> {
    check_feasible(ring, degree, mode)?;
    let chunks: Vec<(Vec<(Polynomial, Polynomial)>, bool)> = (0..chunk_count(ring, mode))
        .into_par_iter()
        .map(|chunk| {
            let mut out = Vec::new();
            let done = run_chunk(ring, degree, mode, chunk, &mut |f, g| {
                out.push((Polynomial::new(f.to_vec()), Polynomial::new(g.to_vec())));
            });
            (out, done)
        })
        .collect();
    let complete = chunks.iter().all(|(_, d)| *d);
    Ok(PairStream {
        pairs: chunks.into_iter().flat_map(|(p, _)| p).collect(),
        complete,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArmendarizViolation {
    pub f: Polynomial,
    pub g: Polynomial,
    /// A coefficient pair `(i, j)` whose product no member of `S` kills, if any.
    pub coefficient: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArmendarizVerdict {
    pub degree: usize,
    pub mode: SearchMode,
    pub pairs_examined: u64,
    pub complete: bool,
    /// Least `s` killing every `a_i b_j` of every examined pair.
    pub uniform_witness: Option<Elem>,
    /// Every `s` that survived all examined pairs, in index order.
    pub uniform_candidates: Vec<Elem>,
    /// When no uniform witness exists: each `s ∈ S` with the first pair it fails on.
    pub uniform_refutation: BTreeMap<Elem, (Polynomial, Polynomial)>,
    /// Every examined pair has its own killing `s`.
    pub per_pair_holds: bool,
    /// Least per-pair witness ↦ number of pairs it was chosen for.
    pub per_pair_witnesses: BTreeMap<Elem, u64>,
    /// First pair with no per-pair witness.
    pub violation: Option<ArmendarizViolation>,
    pub degenerate: bool,
}

impl ArmendarizVerdict {
    pub fn uniform_holds(&self) -> bool {
        self.uniform_witness.is_some()
    }
}

type Seq = (usize, u64);

struct Accumulator {
    pairs: u64,
    candidates: ElemSet,
    eliminated: BTreeMap<usize, (Seq, Polynomial, Polynomial)>,
    histogram: BTreeMap<usize, u64>,
    violation: Option<(Seq, ArmendarizViolation)>,
}

impl Accumulator {
    fn new(width: usize) -> Self {
        Self {
            pairs: 0,
            candidates: ElemSet::full(width),
            eliminated: BTreeMap::new(),
            histogram: BTreeMap::new(),
            violation: None,
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.pairs += other.pairs;
        self.candidates.intersect_with(&other.candidates);
        for (k, v) in other.eliminated {
            match self.eliminated.get(&k) {
                Some(old) if old.0 <= v.0 => {}
                _ => {
                    self.eliminated.insert(k, v);
                }
            }
        }
        for (k, v) in other.histogram {
            *self.histogram.entry(k).or_default() += v;
        }
        self.violation = match (self.violation.take(), other.violation) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Positions in `S` (by index order) that kill `p`.
struct Killers<'a> {
    ring: &'a FiniteRing,
    s: &'a [Elem],
    cache: HashMap<Elem, ElemSet>,
}

impl<'a> Killers<'a> {
    fn get(&mut self, p: Elem) -> &ElemSet {
        let (ring, s) = (self.ring, self.s);
        self.cache.entry(p).or_insert_with(|| {
            ElemSet::from_elems(s.len(), (0..s.len()).filter(|&i| ring.mul(s[i], p) == 0))
        })
    }
}

/// Checks both Armendariz readings over the zero-product pairs of degree `≤ degree`.
pub fn is_u_s_armendariz_up_to(
    ring: &FiniteRing,
    s: &MultiplicativeSet,
    degree: usize,
    mode: SearchMode,
) -> Result<ArmendarizVerdict> {
    check_feasible(ring, degree, mode)?;
    let elems = s.elems();
    let width = elems.len();
    let results: Vec<(Accumulator, bool)> = (0..chunk_count(ring, mode))
        .into_par_iter()
        .map(|chunk| {
            let mut acc = Accumulator::new(width);
            let mut killers = Killers {
                ring,
                s: elems,
                cache: HashMap::new(),
            };
            let mut local = 0u64;
            let done = run_chunk(ring, degree, mode, chunk, &mut |f, g| {
                let seq = (chunk, local);
                local += 1;
                acc.pairs += 1;
                let mut common = ElemSet::full(width);
                let mut dead = None;
                for (i, &a) in f.iter().enumerate() {
                    for (j, &b) in g.iter().enumerate() {
                        let k = killers.get(ring.mul(a, b));
                        if k.is_empty() && dead.is_none() {
                            dead = Some((i, j));
                        }
                        common.intersect_with(k);
                    }
                }
                match common.first() {
                    Some(pos) => *acc.histogram.entry(pos).or_default() += 1,
                    None => {
                        if acc.violation.is_none() {
                            acc.violation = Some((
                                seq,
                                ArmendarizViolation {
                                    f: Polynomial::new(f.to_vec()),
                                    g: Polynomial::new(g.to_vec()),
                                    coefficient: dead,
                                },
                            ));
                        }
                    }
                }
                if !acc.candidates.is_subset(&common) {
                    for pos in acc
                        .candidates
                        .iter()
                        .filter(|&p| !common.contains(p))
                        .collect::<Vec<_>>()
                    {
                        acc.eliminated.entry(pos).or_insert_with(|| {
                            (
                                seq,
                                Polynomial::new(f.to_vec()),
                                Polynomial::new(g.to_vec()),
                            )
                        });
                    }
                    acc.candidates.intersect_with(&common);
                }
            });
            (acc, done)
        })
        .collect();

    let complete = results.iter().all(|(_, d)| *d);
    let acc = results
        .into_iter()
        .map(|(a, _)| a)
        .fold(Accumulator::new(width), Accumulator::merge);

    let uniform_candidates: Vec<Elem> = acc.candidates.iter().map(|p| elems[p]).collect();
    let uniform_witness = uniform_candidates.first().copied();
    let uniform_refutation = if uniform_witness.is_none() {
        acc.eliminated
            .into_iter()
            .map(|(pos, (_, f, g))| (elems[pos], (f, g)))
            .collect()
    } else {
        BTreeMap::new()
    };
    Ok(ArmendarizVerdict {
        degree,
        mode,
        pairs_examined: acc.pairs,
        complete,
        uniform_witness,
        uniform_candidates,
        uniform_refutation,
        per_pair_holds: acc.violation.is_none(),
        per_pair_witnesses: acc
            .histogram
            .into_iter()
            .map(|(p, c)| (elems[p], c))
            .collect(),
        violation: acc.violation.map(|(_, v)| v),
        degenerate: s.is_degenerate(),
    })
}
