use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::FiniteRing;
use crate::Elem;

/// Coefficient vector over a finite ring, lowest degree first.
///
/// Trailing zeros are always stripped, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    coeffs: Vec<Elem>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Elem) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn add(&self, ring: &FiniteRing, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| ring.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    /// Plain convolution, no degree check.
    pub fn mul(&self, ring: &FiniteRing, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = ring.add(out[i + j], ring.mul(a, b));
            }
        }
        Self::new(out)
    }

    /// Multiplies every coefficient by `s`.
    pub fn scale(&self, ring: &FiniteRing, s: Elem) -> Self {
        Self::new(self.coeffs.iter().map(|&c| ring.mul(s, c)).collect())
    }
}

/// Product of two polynomials whose degrees are each bounded by `bound`, so the
/// result has degree at most `2·bound`.
pub fn poly_multiply(
    ring: &FiniteRing,
    f: &Polynomial,
    g: &Polynomial,
    bound: usize,
) -> Result<Polynomial> {
    let total = f.degree().unwrap_or(0) + g.degree().unwrap_or(0);
    if total > 2 * bound {
        return Err(Error::DegreeOverflow {
            degree: total,
            bound: 2 * bound,
        });
    }
    Ok(f.mul(ring, g))
}
