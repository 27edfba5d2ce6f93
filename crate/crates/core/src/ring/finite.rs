use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::expr::{ModuleSpec, RingExpression};
use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::Elem;

/// Default bound on the carrier size of any realized ring.
pub const DEFAULT_SIZE_CAP: usize = 4096;

/// Rings up to this size get precomputed operation tables and exhaustive axiom checks.
pub const TABLE_LIMIT: usize = 256;

/// Number of random triples used by the sampled axiom check.
pub const AXIOM_SAMPLES: usize = 100_000;

/// A finite ring with elements encoded as `0..size`. Commutative unless the
/// construction contains `E(R)`.
///
/// Index 0 is always the zero element. Arithmetic is structure-aware: each
/// constructor decodes an index into its components, operates there, and
/// re-encodes. Small rings cache full operation tables.
pub struct FiniteRing {
    size: usize,
    one: Elem,
    id: u64,
    expr: RingExpression,
    structure: Structure,
    tables: Option<Tables>,
}

struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
}

enum Structure {
    Cyclic {
        n: usize,
    },
    /// First factor is the most significant digit.
    Product {
        factors: Vec<Arc<FiniteRing>>,
        strides: Vec<usize>,
    },
    /// Cosets are numbered in order of their least base index.
    Quotient {
        base: Arc<FiniteRing>,
        coset_of: Vec<u32>,
        reps: Vec<Elem>,
    },
    /// Index is `r * |M| + m`.
    Idealization {
        base: Arc<FiniteRing>,
        module: CyclicSum,
    },
    /// Index is the base-`|R|` number with digits `a, b, c, d`.
    Triangular {
        base: Arc<FiniteRing>,
    },
}

/// `R/J_1 ⊕ … ⊕ R/J_k`, each summand realized as a quotient ring of `R`.
struct CyclicSum {
    parts: Vec<Arc<FiniteRing>>,
    strides: Vec<usize>,
    size: usize,
}

impl CyclicSum {
    fn digits(&self, m: Elem) -> impl Iterator<Item = (usize, &Arc<FiniteRing>, Elem)> + '_ {
        self.parts
            .iter()
            .zip(&self.strides)
            .enumerate()
            .map(move |(k, (p, &st))| (k, p, (m / st) % p.size))
    }

    fn add(&self, x: Elem, y: Elem) -> Elem {
        self.parts
            .iter()
            .zip(&self.strides)
            .map(|(p, &st)| p.add((x / st) % p.size, (y / st) % p.size) * st)
            .sum()
    }

    fn neg(&self, x: Elem) -> Elem {
        self.digits(x)
            .map(|(k, p, d)| p.neg(d) * self.strides[k])
            .sum()
    }

    /// Scalar action of a base element.
    fn scale(&self, r: Elem, x: Elem) -> Elem {
        self.digits(x)
            .map(|(k, p, d)| p.mul(p.project_from_base(r), d) * self.strides[k])
            .sum()
    }
}

fn strides_for(sizes: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; sizes.len()];
    for i in (0..sizes.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * sizes[i + 1];
    }
    strides
}

fn fingerprint(expr: &RingExpression) -> u64 {
    let mut h = DefaultHasher::new();
    serde_json::to_string(expr)
        .expect("ring expressions always serialize")
        .hash(&mut h);
    h.finish()
}

fn check_cap(size: u128, cap: usize) -> Result<()> {
    if size > cap as u128 {
        Err(Error::SizeCapExceeded { size, cap })
    } else {
        Ok(())
    }
}

/// Realizes a construction tree, enforcing `cap` on every intermediate ring.
pub fn build_ring(expr: &RingExpression, cap: usize) -> Result<Arc<FiniteRing>> {
    check_cap(expr.upper_size(), cap)?;
    match expr {
        RingExpression::Zmod { n } => {
            if *n < 2 {
                return Err(Error::InvalidModulus(*n));
            }
            Ok(FiniteRing::finish(
                *n as usize,
                expr.clone(),
                Structure::Cyclic { n: *n as usize },
            ))
        }
        RingExpression::Product { factors } => {
            if factors.is_empty() {
                return Err(Error::EmptyProduct);
            }
            let built = factors
                .iter()
                .map(|f| build_ring(f, cap))
                .collect::<Result<Vec<_>>>()?;
            Ok(FiniteRing::product_of(built))
        }
        RingExpression::Quotient { base, ideal } => {
            let base = build_ring(base, cap)?;
            if !base.is_commutative() {
                return Err(Error::NonCommutative("quotient".into()));
            }
            let gens = ideal
                .iter()
                .enumerate()
                .map(|(i, l)| base.parse_literal(l, &format!("ideal[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            let members = generated_members(&base, &gens);
            FiniteRing::quotient_with_expr(&base, &members, expr.clone())
        }
        RingExpression::Idealization { base, module } => {
            let base = build_ring(base, cap)?;
            if !base.is_commutative() {
                return Err(Error::NonCommutative("idealization".into()));
            }
            let parts = module
                .cyclic
                .iter()
                .enumerate()
                .map(|(k, rel)| {
                    let gens = rel
                        .iter()
                        .enumerate()
                        .map(|(i, l)| base.parse_literal(l, &format!("module.cyclic[{k}][{i}]")))
                        .collect::<Result<Vec<_>>>()?;
                    let members = generated_members(&base, &gens);
                    let q_expr = RingExpression::quotient(base.expr.clone(), rel.clone());
                    FiniteRing::quotient_with_expr(&base, &members, q_expr)
                })
                .collect::<Result<Vec<_>>>()?;
            let sizes: Vec<usize> = parts.iter().map(|p| p.size).collect();
            let msize: usize = sizes.iter().product();
            check_cap(base.size as u128 * msize as u128, cap)?;
            let module = CyclicSum {
                strides: strides_for(&sizes),
                size: msize,
                parts,
            };
            Ok(FiniteRing::finish(
                base.size * msize,
                expr.clone(),
                Structure::Idealization { base, module },
            ))
        }
        RingExpression::TriangularE { base } => {
            let base = build_ring(base, cap)?;
            Ok(FiniteRing::finish(
                base.size.pow(4),
                expr.clone(),
                Structure::Triangular { base },
            ))
        }
    }
}

/// Members of the ideal generated by `gens`: the sum of the principal ideals `R·g`.
pub(crate) fn generated_members(ring: &FiniteRing, gens: &[Elem]) -> ElemSet {
    let mut acc = ElemSet::from_elems(ring.size, [0]);
    for &g in gens {
        let principal = ring.principal_members(g);
        acc = ring.sum_members(&acc, &principal);
    }
    acc
}

impl FiniteRing {
    fn finish(size: usize, expr: RingExpression, structure: Structure) -> Arc<FiniteRing> {
        let mut ring = FiniteRing {
            size,
            one: 0,
            id: fingerprint(&expr),
            expr,
            structure,
            tables: None,
        };
        ring.one = ring.structural_one();
        if size <= TABLE_LIMIT {
            let mut add = Vec::with_capacity(size * size);
            let mut mul = Vec::with_capacity(size * size);
            for a in 0..size {
                for b in 0..size {
                    add.push(ring.add_structural(a, b) as u16);
                    mul.push(ring.mul_structural(a, b) as u16);
                }
            }
            let neg = (0..size).map(|a| ring.neg_structural(a) as u16).collect();
            ring.tables = Some(Tables { add, mul, neg });
        }
        Arc::new(ring)
    }

    /// Direct product of already-realized rings.
    pub fn product_of(factors: Vec<Arc<FiniteRing>>) -> Arc<FiniteRing> {
        let sizes: Vec<usize> = factors.iter().map(|f| f.size).collect();
        let expr = RingExpression::product(factors.iter().map(|f| f.expr.clone()).collect());
        FiniteRing::finish(
            sizes.iter().product(),
            expr,
            Structure::Product {
                strides: strides_for(&sizes),
                factors,
            },
        )
    }

    /// `base / I` where `members` is the member set of an ideal with the given generators.
    pub fn quotient(
        base: &Arc<FiniteRing>,
        members: &ElemSet,
        gens: &[Elem],
    ) -> Result<Arc<FiniteRing>> {
        let expr = RingExpression::quotient(
            base.expr.clone(),
            gens.iter().map(|&g| base.literal(g)).collect(),
        );
        Self::quotient_with_expr(base, members, expr)
    }

    fn quotient_with_expr(
        base: &Arc<FiniteRing>,
        members: &ElemSet,
        expr: RingExpression,
    ) -> Result<Arc<FiniteRing>> {
        if members.is_full() {
            return Err(Error::ZeroRing);
        }
        let ideal: Vec<Elem> = members.iter().collect();
        let mut coset_of = vec![u32::MAX; base.size];
        let mut reps = Vec::with_capacity(base.size / ideal.len());
        for x in 0..base.size {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &i in &ideal {
                coset_of[base.add(x, i)] = id;
            }
        }
        Ok(FiniteRing::finish(
            reps.len(),
            expr,
            Structure::Quotient {
                base: Arc::clone(base),
                coset_of,
                reps,
            },
        ))
    }

    fn structural_one(&self) -> Elem {
        match &self.structure {
            Structure::Cyclic { .. } => 1,
            Structure::Product { factors, strides } => {
                factors.iter().zip(strides).map(|(f, &st)| f.one * st).sum()
            }
            Structure::Quotient { base, coset_of, .. } => coset_of[base.one] as Elem,
            Structure::Idealization { base, module } => base.one * module.size,
            Structure::Triangular { base } => base.one * base.size.pow(3),
        }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        0
    }

    #[inline]
    pub fn one(&self) -> Elem {
        self.one
    }

    /// Identity of this ring, derived from its construction expression.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn expr(&self) -> &RingExpression {
        &self.expr
    }

    pub fn is_commutative(&self) -> bool {
        self.expr.is_commutative()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.add[a * self.size + b] as Elem,
            None => self.add_structural(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.mul[a * self.size + b] as Elem,
            None => self.mul_structural(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.neg[a] as Elem,
            None => self.neg_structural(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: Elem, mut n: u64) -> Elem {
        let mut base = a;
        let mut acc = self.one;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        match &self.structure {
            Structure::Cyclic { n } => gcd(a, *n) == 1,
            Structure::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .all(|(f, &st)| f.is_unit((a / st) % f.size)),
            Structure::Idealization { base, module } => base.is_unit(a / module.size),
            Structure::Triangular { base } => base.is_unit(quad(a, base.size)[0]),
            Structure::Quotient { .. } => self.inverse(a).is_some(),
        }
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.elements().find(|&b| self.mul(a, b) == self.one)
    }

    /// Every `x` with `a·x = c`, in increasing index order.
    pub fn solve_mul(&self, a: Elem, c: Elem) -> Vec<Elem> {
        self.elements().filter(|&x| self.mul(a, x) == c).collect()
    }

    /// `R·a`, which is already closed under addition.
    pub fn principal_members(&self, a: Elem) -> ElemSet {
        ElemSet::from_elems(self.size, self.elements().map(|r| self.mul(r, a)))
    }

    /// `{x + y | x ∈ A, y ∈ B}`.
    pub fn sum_members(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        if a.len() == 1 {
            return b.clone();
        }
        if b.len() == 1 {
            return a.clone();
        }
        let bs: Vec<Elem> = b.iter().collect();
        let mut out = ElemSet::empty(self.size);
        for x in a.iter() {
            for &y in &bs {
                out.insert(self.add(x, y));
            }
        }
        out
    }

    fn add_structural(&self, a: Elem, b: Elem) -> Elem {
        match &self.structure {
            Structure::Cyclic { n } => {
                let s = a + b;
                if s >= *n {
                    s - n
                } else {
                    s
                }
            }
            Structure::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, &st)| f.add((a / st) % f.size, (b / st) % f.size) * st)
                .sum(),
            Structure::Quotient {
                base,
                coset_of,
                reps,
            } => coset_of[base.add(reps[a], reps[b])] as Elem,
            Structure::Idealization { base, module } => {
                let m = module.size;
                base.add(a / m, b / m) * m + module.add(a % m, b % m)
            }
            Structure::Triangular { base } => {
                let (x, y) = (quad(a, base.size), quad(b, base.size));
                unquad(
                    [
                        base.add(x[0], y[0]),
                        base.add(x[1], y[1]),
                        base.add(x[2], y[2]),
                        base.add(x[3], y[3]),
                    ],
                    base.size,
                )
            }
        }
    }

    fn mul_structural(&self, a: Elem, b: Elem) -> Elem {
        match &self.structure {
            Structure::Cyclic { n } => ((a as u64 * b as u64) % *n as u64) as Elem,
            Structure::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, &st)| f.mul((a / st) % f.size, (b / st) % f.size) * st)
                .sum(),
            Structure::Quotient {
                base,
                coset_of,
                reps,
            } => coset_of[base.mul(reps[a], reps[b])] as Elem,
            Structure::Idealization { base, module } => {
                let m = module.size;
                let (r1, m1, r2, m2) = (a / m, a % m, b / m, b % m);
                let tail = module.add(module.scale(r1, m2), module.scale(r2, m1));
                base.mul(r1, r2) * m + tail
            }
            Structure::Triangular { base } => {
                let [a1, b1, c1, d1] = quad(a, base.size);
                let [a2, b2, c2, d2] = quad(b, base.size);
                let r = base.as_ref();
                unquad(
                    [
                        r.mul(a1, a2),
                        r.add(r.mul(a1, b2), r.mul(b1, a2)),
                        r.add(r.add(r.mul(a1, c2), r.mul(b1, d2)), r.mul(c1, a2)),
                        r.add(r.mul(a1, d2), r.mul(d1, a2)),
                    ],
                    base.size,
                )
            }
        }
    }

    fn neg_structural(&self, a: Elem) -> Elem {
        match &self.structure {
            Structure::Cyclic { n } => (n - a) % n,
            Structure::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, &st)| f.neg((a / st) % f.size) * st)
                .sum(),
            Structure::Quotient {
                base,
                coset_of,
                reps,
            } => coset_of[base.neg(reps[a])] as Elem,
            Structure::Idealization { base, module } => {
                let m = module.size;
                base.neg(a / m) * m + module.neg(a % m)
            }
            Structure::Triangular { base } => {
                let x = quad(a, base.size);
                unquad(x.map(|c| base.neg(c)), base.size)
            }
        }
    }

    /// For a quotient ring `R/I`, maps a base index to its coset. Identity otherwise.
    pub fn project_from_base(&self, r: Elem) -> Elem {
        match &self.structure {
            Structure::Quotient { coset_of, .. } => coset_of[r] as Elem,
            _ => r,
        }
    }

    /// For a quotient ring, the least base index in the coset `q`.
    pub fn representative(&self, q: Elem) -> Option<Elem> {
        match &self.structure {
            Structure::Quotient { reps, .. } => Some(reps[q]),
            _ => None,
        }
    }

    /// Base ring of a quotient, idealization or triangular construction.
    pub fn base(&self) -> Option<&Arc<FiniteRing>> {
        match &self.structure {
            Structure::Quotient { base, .. }
            | Structure::Idealization { base, .. }
            | Structure::Triangular { base } => Some(base),
            _ => None,
        }
    }

    pub fn factors(&self) -> Option<&[Arc<FiniteRing>]> {
        match &self.structure {
            Structure::Product { factors, .. } => Some(factors),
            _ => None,
        }
    }

    /// Splits an element of a product ring into factor indices.
    pub fn split_product(&self, a: Elem) -> Option<Vec<Elem>> {
        match &self.structure {
            Structure::Product { factors, strides } => Some(
                factors
                    .iter()
                    .zip(strides)
                    .map(|(f, &st)| (a / st) % f.size)
                    .collect(),
            ),
            _ => None,
        }
    }

    pub fn join_product(&self, parts: &[Elem]) -> Option<Elem> {
        match &self.structure {
            Structure::Product { strides, .. } => {
                Some(parts.iter().zip(strides).map(|(p, st)| p * st).sum())
            }
            _ => None,
        }
    }

    /// `[a, b, c, d]` entries of an element of a triangular ring.
    pub fn split_triangular(&self, x: Elem) -> Option<[Elem; 4]> {
        match &self.structure {
            Structure::Triangular { base } => Some(quad(x, base.size)),
            _ => None,
        }
    }

    pub fn join_triangular(&self, q: [Elem; 4]) -> Option<Elem> {
        match &self.structure {
            Structure::Triangular { base } => Some(unquad(q, base.size)),
            _ => None,
        }
    }

    /// `(r, m)` for an idealization element, with `m` indexing the module.
    pub fn split_idealization(&self, x: Elem) -> Option<(Elem, Elem)> {
        match &self.structure {
            Structure::Idealization { module, .. } => Some((x / module.size, x % module.size)),
            _ => None,
        }
    }

    pub fn join_idealization(&self, r: Elem, m: Elem) -> Option<Elem> {
        match &self.structure {
            Structure::Idealization { module, .. } => Some(r * module.size + m),
            _ => None,
        }
    }

    pub fn module_size(&self) -> Option<usize> {
        match &self.structure {
            Structure::Idealization { module, .. } => Some(module.size),
            _ => None,
        }
    }

    /// For `R(+)M` with `M = ⊕ R/J_k`: the summand rings, in digit order.
    pub fn module_parts(&self) -> Option<&[Arc<FiniteRing>]> {
        match &self.structure {
            Structure::Idealization { module, .. } => Some(&module.parts),
            _ => None,
        }
    }

    /// Per-summand coordinates of a module element.
    pub fn module_digits(&self, m: Elem) -> Option<Vec<Elem>> {
        match &self.structure {
            Structure::Idealization { module, .. } => {
                Some(module.digits(m).map(|(_, _, d)| d).collect())
            }
            _ => None,
        }
    }

    pub fn join_module(&self, digits: &[Elem]) -> Option<Elem> {
        match &self.structure {
            Structure::Idealization { module, .. } if digits.len() == module.parts.len() => Some(
                digits
                    .iter()
                    .zip(&module.strides)
                    .map(|(&d, &st)| d * st)
                    .sum(),
            ),
            _ => None,
        }
    }

    /// Parses an element literal against this ring's structure.
    pub fn parse_literal(&self, lit: &Value, path: &str) -> Result<Elem> {
        let bad = |reason: &str| Error::MalformedLiteral {
            path: path.to_string(),
            reason: reason.to_string(),
        };
        let array = |len: usize| -> Result<&Vec<Value>> {
            match lit {
                Value::Array(items) if items.len() == len => Ok(items),
                Value::Array(items) => {
                    Err(bad(&format!("expected {len} entries, got {}", items.len())))
                }
                _ => Err(bad(&format!("expected an array of {len} entries"))),
            }
        };
        match &self.structure {
            Structure::Cyclic { n } => {
                let v = lit.as_i64().ok_or_else(|| bad("expected an integer"))?;
                Ok(v.rem_euclid(*n as i64) as Elem)
            }
            Structure::Product { factors, strides } => {
                let items = array(factors.len())?;
                let mut out = 0;
                for (i, ((f, &st), item)) in factors.iter().zip(strides).zip(items).enumerate() {
                    out += f.parse_literal(item, &format!("{path}[{i}]"))? * st;
                }
                Ok(out)
            }
            Structure::Quotient { base, coset_of, .. } => {
                Ok(coset_of[base.parse_literal(lit, path)?] as Elem)
            }
            Structure::Idealization { base, module } => {
                let items = array(2)?;
                let r = base.parse_literal(&items[0], &format!("{path}[0]"))?;
                let parts = match &items[1] {
                    Value::Array(p) if p.len() == module.parts.len() => p,
                    _ => {
                        return Err(bad(&format!(
                            "second entry must list {} module coordinates",
                            module.parts.len()
                        )))
                    }
                };
                let mut m = 0;
                for (k, (part, item)) in module.parts.iter().zip(parts).enumerate() {
                    let b = base.parse_literal(item, &format!("{path}[1][{k}]"))?;
                    m += part.project_from_base(b) * module.strides[k];
                }
                Ok(r * module.size + m)
            }
            Structure::Triangular { base } => {
                let items = array(4)?;
                let mut q = [0; 4];
                for (i, item) in items.iter().enumerate() {
                    q[i] = base.parse_literal(item, &format!("{path}[{i}]"))?;
                }
                Ok(unquad(q, base.size))
            }
        }
    }

    /// Canonical literal for an element; `parse_literal` inverts it.
    pub fn literal(&self, e: Elem) -> Value {
        match &self.structure {
            Structure::Cyclic { .. } => Value::from(e as u64),
            Structure::Product { factors, strides } => Value::Array(
                factors
                    .iter()
                    .zip(strides)
                    .map(|(f, &st)| f.literal((e / st) % f.size))
                    .collect(),
            ),
            Structure::Quotient { base, reps, .. } => base.literal(reps[e]),
            Structure::Idealization { base, module } => {
                let (r, m) = (e / module.size, e % module.size);
                let coords = module
                    .digits(m)
                    .map(|(_, p, d)| base.literal(p.representative(d).unwrap_or(d)))
                    .collect();
                Value::Array(vec![base.literal(r), Value::Array(coords)])
            }
            Structure::Triangular { base } => Value::Array(
                quad(e, base.size)
                    .iter()
                    .map(|&c| base.literal(c))
                    .collect(),
            ),
        }
    }

    /// Checks every ring axiom, plus commutativity of `*` unless the tree
    /// contains `E(R)`; exhaustive up to [`TABLE_LIMIT`], otherwise on
    /// [`AXIOM_SAMPLES`] seeded random triples.
    pub fn check_axioms(&self, seed: u64) -> std::result::Result<(), String> {
        if self.one == 0 {
            return Err("zero equals one".into());
        }
        let commutative = self.is_commutative();
        let check = |a: Elem, b: Elem, c: Elem| -> std::result::Result<(), String> {
            let fail = |law: &str| Err(format!("{law} fails at ({a}, {b}, {c})"));
            if self.add(a, b) != self.add(b, a) {
                return fail("additive commutativity");
            }
            if commutative && self.mul(a, b) != self.mul(b, a) {
                return fail("multiplicative commutativity");
            }
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                return fail("additive associativity");
            }
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return fail("multiplicative associativity");
            }
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                return fail("distributivity");
            }
            if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                return fail("right distributivity");
            }
            if self.add(a, 0) != a || self.mul(a, self.one) != a || self.mul(self.one, a) != a {
                return fail("identity");
            }
            if self.add(a, self.neg(a)) != 0 {
                return fail("additive inverse");
            }
            Ok(())
        };
        if self.size <= TABLE_LIMIT {
            for a in self.elements() {
                for b in self.elements() {
                    for c in self.elements() {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..AXIOM_SAMPLES {
                let (a, b, c) = (
                    rng.random_range(0..self.size),
                    rng.random_range(0..self.size),
                    rng.random_range(0..self.size),
                );
                check(a, b, c)?;
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteRing({}, size {})", self.expr, self.size)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[inline]
fn quad(x: Elem, n: usize) -> [Elem; 4] {
    [x / (n * n * n), (x / (n * n)) % n, (x / n) % n, x % n]
}

#[inline]
fn unquad(q: [Elem; 4], n: usize) -> Elem {
    ((q[0] * n + q[1]) * n + q[2]) * n + q[3]
}

/// `R(+)R`.
pub fn self_idealization(base: &RingExpression) -> RingExpression {
    RingExpression::idealization(base.clone(), ModuleSpec::free(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn zmod(n: u64) -> Arc<FiniteRing> {
        build_ring(&RingExpression::zmod(n), DEFAULT_SIZE_CAP).unwrap()
    }

    #[test]
    fn zmod_basics() {
        let r = zmod(24);
        assert_eq!(r.size(), 24);
        assert_eq!((r.zero(), r.one()), (0, 1));
        assert_eq!(r.mul(5, 7), 11);
        assert_eq!(r.neg(0), 0);
        assert_eq!(r.neg(5), 19);
        assert_eq!(r.pow(6, 3), 0);
    }

    #[test]
    fn structural_units_match_inverse_scan() {
        let exprs = [
            RingExpression::zmod(36),
            RingExpression::product(vec![RingExpression::zmod(4), RingExpression::zmod(9)]),
            RingExpression::quotient(RingExpression::zmod(24), vec![json!(8)]),
            RingExpression::idealization(RingExpression::zmod(6), ModuleSpec::free(1)),
            RingExpression::triangular_e(RingExpression::zmod(4)),
        ];
        for e in &exprs {
            let r = build_ring(e, 4096).unwrap();
            for a in r.elements() {
                assert_eq!(r.is_unit(a), r.inverse(a).is_some(), "{e} at {a}");
            }
        }
    }

    #[test]
    fn modulus_below_two_rejected() {
        assert_eq!(
            build_ring(&RingExpression::zmod(1), 10).unwrap_err(),
            Error::InvalidModulus(1)
        );
        assert_eq!(
            build_ring(&RingExpression::product(vec![]), 10).unwrap_err(),
            Error::EmptyProduct
        );
    }

    #[test]
    fn size_cap_enforced() {
        let e = RingExpression::triangular_e(RingExpression::zmod(12));
        assert!(matches!(
            build_ring(&e, DEFAULT_SIZE_CAP),
            Err(Error::SizeCapExceeded { size: 20736, .. })
        ));
        let ring = build_ring(&e, 20736).unwrap();
        assert_eq!(ring.size(), 20736);
    }

    #[test]
    fn quotient_of_z24_by_3_is_z3() {
        // Oracle: brute-force coset enumeration of (3) in Z_24.
        let q = build_ring(
            &RingExpression::quotient(RingExpression::zmod(24), vec![json!(3)]),
            64,
        )
        .unwrap();
        assert_eq!(q.size(), 3);
        let mut classes: Vec<Vec<u64>> = Vec::new();
        for x in 0..24u64 {
            if !classes.iter().any(|c| c.contains(&x)) {
                classes.push((0..24).filter(|y| (y + 24 - x) % 3 == 0).collect());
            }
        }
        assert_eq!(classes.len(), 3);
        // Z_3 arithmetic through the representatives.
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(q.representative(q.mul(a, b)), Some((a * b) % 3));
                assert_eq!(q.representative(q.add(a, b)), Some((a + b) % 3));
            }
        }
        assert_eq!(q.literal(2), json!(2));
    }

    #[test]
    fn malformed_generators() {
        let e = RingExpression::quotient(RingExpression::zmod(24), vec![json!([1, 2])]);
        assert!(matches!(
            build_ring(&e, 64),
            Err(Error::MalformedLiteral { .. })
        ));
        let e = RingExpression::quotient(RingExpression::zmod(24), vec![json!(5)]);
        assert_eq!(build_ring(&e, 64).unwrap_err(), Error::ZeroRing);
    }

    #[test]
    fn literals_round_trip() {
        let exprs = [
            RingExpression::product(vec![RingExpression::zmod(2), RingExpression::zmod(3)]),
            RingExpression::idealization(
                RingExpression::zmod(4),
                ModuleSpec {
                    cyclic: vec![vec![], vec![json!(2)]],
                },
            ),
            RingExpression::triangular_e(RingExpression::zmod(2)),
            RingExpression::quotient(
                RingExpression::product(vec![RingExpression::zmod(4), RingExpression::zmod(6)]),
                vec![json!([2, 3])],
            ),
        ];
        for e in &exprs {
            let r = build_ring(e, 4096).unwrap();
            for x in r.elements() {
                assert_eq!(r.parse_literal(&r.literal(x), "x").unwrap(), x, "{e}");
            }
        }
    }

    #[test]
    fn idealization_of_z4_with_two_components() {
        let e = RingExpression::idealization(
            RingExpression::zmod(4),
            ModuleSpec {
                cyclic: vec![vec![], vec![json!(2)]],
            },
        );
        let r = build_ring(&e, 4096).unwrap();
        assert_eq!(r.size(), 4 * 4 * 2);
        let x = r.parse_literal(&json!([3, [1, 1]]), "x").unwrap();
        let y = r.parse_literal(&json!([2, [3, 0]]), "y").unwrap();
        // (3,(1,1))(2,(3,0)) = (6, 3(3,0) + 2(1,1)) = (2, (9+2, 0+2)) = (2, (3, 0 mod 2))
        assert_eq!(r.literal(r.mul(x, y)), json!([2, [3, 0]]));
    }
}
