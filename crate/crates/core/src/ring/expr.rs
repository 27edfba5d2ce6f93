use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Construction tree for a finite commutative ring.
///
/// Element literals inside the tree (quotient generators, module relations)
/// are raw JSON values, interpreted against the ring they belong to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingExpression {
    Zmod {
        n: u64,
    },
    Product {
        factors: Vec<RingExpression>,
    },
    Quotient {
        base: Box<RingExpression>,
        ideal: Vec<Value>,
    },
    Idealization {
        base: Box<RingExpression>,
        module: ModuleSpec,
    },
    TriangularE {
        base: Box<RingExpression>,
    },
}

/// A finite direct sum of cyclic modules `R/J_1 ⊕ … ⊕ R/J_k`; each entry of
/// `cyclic` lists generators of one `J_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub cyclic: Vec<Vec<Value>>,
}

impl ModuleSpec {
    /// The free module `R` itself, so that `R(+)R` is `idealization(R, ModuleSpec::free(1))`.
    pub fn free(rank: usize) -> Self {
        Self {
            cyclic: vec![Vec::new(); rank],
        }
    }
}

impl RingExpression {
    pub fn zmod(n: u64) -> Self {
        Self::Zmod { n }
    }

    pub fn product(factors: Vec<RingExpression>) -> Self {
        Self::Product { factors }
    }

    pub fn quotient(base: RingExpression, ideal: Vec<Value>) -> Self {
        Self::Quotient {
            base: Box::new(base),
            ideal,
        }
    }

    pub fn idealization(base: RingExpression, module: ModuleSpec) -> Self {
        Self::Idealization {
            base: Box::new(base),
            module,
        }
    }

    pub fn triangular_e(base: RingExpression) -> Self {
        Self::TriangularE {
            base: Box::new(base),
        }
    }

    /// Carrier size implied by the tree, ignoring quotients (which can only shrink it).
    /// Used as a cheap pre-check against the size cap.
    pub fn upper_size(&self) -> u128 {
        match self {
            Self::Zmod { n } => *n as u128,
            Self::Product { factors } => factors
                .iter()
                .fold(1u128, |acc, f| acc.saturating_mul(f.upper_size())),
            Self::Quotient { base, .. } => base.upper_size(),
            Self::Idealization { base, module } => {
                let b = base.upper_size();
                (0..module.cyclic.len()).fold(b, |acc, _| acc.saturating_mul(b))
            }
            Self::TriangularE { base } => base.upper_size().saturating_pow(4),
        }
    }

    /// False once the tree contains `E(R)`, whose product is not symmetric.
    pub fn is_commutative(&self) -> bool {
        match self {
            Self::Zmod { .. } => true,
            Self::Product { factors } => factors.iter().all(Self::is_commutative),
            Self::Quotient { base, .. } | Self::Idealization { base, .. } => base.is_commutative(),
            Self::TriangularE { .. } => false,
        }
    }

    /// Nesting depth of the construction tree.
    pub fn depth(&self) -> usize {
        match self {
            Self::Zmod { .. } => 1,
            Self::Product { factors } => 1 + factors.iter().map(Self::depth).max().unwrap_or(0),
            Self::Quotient { base, .. }
            | Self::Idealization { base, .. }
            | Self::TriangularE { base } => 1 + base.depth(),
        }
    }
}

fn fmt_literals(f: &mut fmt::Formatter<'_>, lits: &[Value]) -> fmt::Result {
    write!(f, "(")?;
    for (i, l) in lits.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{l}")?;
    }
    write!(f, ")")
}

impl fmt::Display for RingExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Zmod { n } => write!(f, "Z_{n}"),
            Self::Product { factors } => {
                write!(f, "(")?;
                for (i, fac) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    write!(f, "{fac}")?;
                }
                write!(f, ")")
            }
            Self::Quotient { base, ideal } => {
                write!(f, "{base}/")?;
                fmt_literals(f, ideal)
            }
            Self::Idealization { base, module } => {
                write!(f, "{base}(+)")?;
                if module.cyclic.len() > 1 {
                    write!(f, "[")?;
                }
                for (i, rel) in module.cyclic.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    if rel.is_empty() {
                        write!(f, "{base}")?;
                    } else {
                        write!(f, "{base}/")?;
                        fmt_literals(f, rel)?;
                    }
                }
                if module.cyclic.len() > 1 {
                    write!(f, "]")?;
                }
                Ok(())
            }
            Self::TriangularE { base } => write!(f, "E({base})"),
        }
    }
}
