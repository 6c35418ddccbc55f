//! Exact rational linear algebra helpers shared by the lattice and cone code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::vector::ExponentVector;

pub(crate) type Rat = BigRational;

pub(crate) fn big_row(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

pub(crate) fn rat_row(v: &[BigInt]) -> Vec<Rat> {
    v.iter().map(|c| Rat::from_integer(c.clone())).collect()
}

pub(crate) fn to_exponent(v: &[BigInt], context: &'static str) -> Result<ExponentVector> {
    v.iter()
        .map(|c| c.to_i64().ok_or(Error::Overflow(context)))
        .collect::<Result<Vec<_>>>()
        .map(ExponentVector::new)
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Divides an integer vector by the gcd of its entries.
pub(crate) fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|c| c / &g).collect()
}

/// Clears denominators and returns the primitive integer vector with the same direction.
pub(crate) fn rational_to_primitive(v: &[Rat]) -> Vec<BigInt> {
    let l = v
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect();
    primitive(&ints)
}

/// Rank of a list of integer rows.
pub(crate) fn rank(rows: &[Vec<BigInt>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<Rat>> = rows.iter().map(|r| rat_row(r)).collect();
    row_reduce(&mut m).len()
}

/// In-place Gauss-Jordan elimination; returns pivot columns in order. Rows
/// past the returned length are zero afterwards.
pub(crate) fn row_reduce(m: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Inverse of a square nonsingular rational matrix.
pub(crate) fn inverse(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Integer basis of the right kernel `{x : rows · x = 0}`, each vector primitive.
pub(crate) fn kernel_basis(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<Rat>> = rows.iter().map(|r| rat_row(r)).collect();
    let pivots = row_reduce(&mut m);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![Rat::zero(); cols];
        x[free] = Rat::one();
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = -m[i][free].clone();
        }
        let mut v = rational_to_primitive(&x);
        // sign convention: first nonzero entry positive
        if v.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
            v = v.into_iter().map(|c| -c).collect();
        }
        out.push(v);
    }
    out
}
