//! Exponent vectors: points of ℕ^d (or ℤ^d in lattice contexts).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Deref, Sub};

use serde::{Deserialize, Serialize};

/// The exponent of a monomial `x^v`, stored as a plain coordinate list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut coords = vec![0; dim];
        coords[axis] = 1;
        Self(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    /// Total degree `|v|`, the sum of the coordinates.
    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Componentwise `self ≤ other`.
    pub fn le_componentwise(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self(self.0.iter().map(|c| c * k).collect())
    }

    /// Integer dot product, accumulated in `i128`.
    pub fn dot(&self, other: &Self) -> i128 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a as i128 * b as i128)
            .sum()
    }

    /// Divides out the gcd of the coordinates (the zero vector is returned unchanged).
    pub fn primitive(&self) -> Self {
        let g = self.0.iter().fold(0i64, |acc, &c| num_integer::gcd(acc, c));
        if g <= 1 {
            self.clone()
        } else {
            Self(self.0.iter().map(|c| c / g).collect())
        }
    }
}

/// Degree-ascending order with lexicographic tie-break. Every canonical
/// output list in the crate is sorted this way.
pub fn deglex(a: &ExponentVector, b: &ExponentVector) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0))
}

/// Sorts and deduplicates in place using [`deglex`].
pub fn sort_deglex(vs: &mut Vec<ExponentVector>) {
    vs.sort_by(deglex);
    vs.dedup();
}

impl Deref for ExponentVector {
    type Target = [i64];

    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl<const N: usize> From<[i64; N]> for ExponentVector {
    fn from(v: [i64; N]) -> Self {
        Self(v.to_vec())
    }
}

impl Add for &ExponentVector {
    type Output = ExponentVector;

    fn add(self, rhs: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        ExponentVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ExponentVector {
    type Output = ExponentVector;

    fn sub(self, rhs: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        ExponentVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Parses the terse form `"a b; c d; ..."` used by command-line flags.
pub fn parse_vector_list(text: &str) -> Result<Vec<ExponentVector>, String> {
    let mut out = Vec::new();
    for (i, chunk) in text.split(';').enumerate() {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let coords = chunk
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|e| format!("vector {}: cannot parse {t:?}: {e}", i + 1))
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push(ExponentVector(coords));
    }
    if out.is_empty() {
        return Err("no vectors given".into());
    }
    Ok(out)
}
