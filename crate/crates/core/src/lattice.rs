//! Integer lattices in Hermite normal form.
//!
//! A lattice is stored by its row-style Hermite basis: rows are in echelon
//! form, pivots are positive, and the entries above each pivot are reduced
//! into `[0, pivot)`. Two generating sets of the same lattice therefore give
//! identical bases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{big_row, Rat};
use crate::vector::ExponentVector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerLattice {
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl IntegerLattice {
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// True when the lattice is all of ℤ^d.
    pub fn is_full(&self) -> bool {
        self.rank() == self.ambient && self.basis.iter().enumerate().all(|(i, r)| r[i].is_one())
    }

    /// Integer coordinates of `v` in the Hermite basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &ExponentVector) -> Result<Option<Vec<BigInt>>> {
        check_dim(self.ambient, v)?;
        let mut residual = big_row(v);
        let mut coords = Vec::with_capacity(self.rank());
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let (q, r) = residual[p].div_rem(&row[p]);
            if !r.is_zero() {
                return Ok(None);
            }
            for (x, b) in residual.iter_mut().zip(row) {
                *x -= &q * b;
            }
            coords.push(q);
        }
        Ok(residual.iter().all(Zero::is_zero).then_some(coords))
    }

    /// Rational coordinates of `v` in the Hermite basis, if `v` lies in the
    /// rational span of the lattice.
    pub(crate) fn rational_coordinates(&self, v: &ExponentVector) -> Option<Vec<Rat>> {
        let mut residual: Vec<Rat> = v.iter().map(|&c| Rat::from_integer(c.into())).collect();
        let mut coords = Vec::with_capacity(self.rank());
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let q = &residual[p] / Rat::from_integer(row[p].clone());
            for (x, b) in residual.iter_mut().zip(row) {
                *x -= &q * Rat::from_integer(b.clone());
            }
            coords.push(q);
        }
        residual.iter().all(Zero::is_zero).then_some(coords)
    }

    /// Smallest positive multiple `k` such that `k·v` lies in the lattice, or
    /// `None` when `v` is outside the rational span.
    pub fn multiplier_into(&self, v: &ExponentVector) -> Option<i64> {
        let coords = self.rational_coordinates(v)?;
        let l = coords
            .iter()
            .fold(BigInt::one(), |acc, c: &BigRational| acc.lcm(c.denom()));
        i64::try_from(l).ok()
    }
}

impl Serialize for IntegerLattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .basis
            .iter()
            .map(|r| r.iter().map(|c| c.to_string()).collect())
            .collect();
        #[derive(Serialize)]
        struct Repr {
            rank: usize,
            basis: Vec<Vec<String>>,
        }
        Repr {
            rank: self.rank(),
            basis: rows,
        }
        .serialize(s)
    }
}

/// Lattice generated by `rows`, in canonical Hermite form.
pub fn hermite_normal_form(rows: &[ExponentVector]) -> Result<IntegerLattice> {
    let first = rows.first().ok_or(Error::Empty("lattice generators"))?;
    let d = first.dim();
    for r in rows {
        check_dim(d, r)?;
    }
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| big_row(r)).collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..d {
        if top == m.len() {
            break;
        }
        // Euclid on the column until a single nonzero entry remains at `top`.
        while let Some(best) = (top..m.len())
            .filter(|&i| !m[i][col].is_zero())
            .min_by(|&a, &b| m[a][col].abs().cmp(&m[b][col].abs()))
        {
            m.swap(top, best);
            let mut done = true;
            for i in top + 1..m.len() {
                if m[i][col].is_zero() {
                    continue;
                }
                let q = m[i][col].div_floor(&m[top][col]);
                let pivot_row = m[top].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
                if !m[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[top][col].is_zero() {
            continue;
        }
        if m[top][col].is_negative() {
            for x in m[top].iter_mut() {
                *x = -x.clone();
            }
        }
        let pivot_row = m[top].clone();
        for row in m.iter_mut().take(top) {
            let q = row[col].div_floor(&pivot_row[col]);
            if !q.is_zero() {
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    m.truncate(top);
    Ok(IntegerLattice {
        ambient: d,
        basis: m,
        pivots,
    })
}

/// True iff `v` is an integer combination of the lattice basis.
pub fn lattice_contains(lattice: &IntegerLattice, v: &ExponentVector) -> Result<bool> {
    Ok(lattice.coordinates(v)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    fn basis_i64(l: &IntegerLattice) -> Vec<Vec<i64>> {
        l.basis()
            .iter()
            .map(|r| r.iter().map(|c| i64::try_from(c.clone()).unwrap()).collect())
            .collect()
    }

    #[test]
    fn example_semigroup_generates_z2() {
        let l = hermite_normal_form(&[ev(&[2, 0]), ev(&[3, 0]), ev(&[1, 1]), ev(&[0, 1])]).unwrap();
        assert_eq!(l.rank(), 2);
        assert!(l.is_full());
        assert_eq!(basis_i64(&l), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn single_generator() {
        let l = hermite_normal_form(&[ev(&[1, 0])]).unwrap();
        assert_eq!(l.rank(), 1);
        assert_eq!(basis_i64(&l), vec![vec![1, 0]]);
    }

    #[test]
    fn diagonal_already_canonical() {
        let l = hermite_normal_form(&[ev(&[2, 0]), ev(&[0, 2])]).unwrap();
        assert_eq!(basis_i64(&l), vec![vec![2, 0], vec![0, 2]]);
        assert!(!l.is_full());
    }

    #[test]
    fn membership() {
        let z2 = hermite_normal_form(&[ev(&[1, 0]), ev(&[0, 1])]).unwrap();
        assert!(lattice_contains(&z2, &ev(&[1, 0])).unwrap());
        let even = hermite_normal_form(&[ev(&[2, 0]), ev(&[0, 2])]).unwrap();
        assert!(!lattice_contains(&even, &ev(&[1, 1])).unwrap());
        let diag = hermite_normal_form(&[ev(&[1, 1])]).unwrap();
        assert!(lattice_contains(&diag, &ev(&[2, 2])).unwrap());
        assert!(!lattice_contains(&diag, &ev(&[2, 1])).unwrap());
    }

    #[test]
    fn errors() {
        assert_eq!(hermite_normal_form(&[]).unwrap_err(), Error::Empty("lattice generators"));
        assert!(matches!(
            hermite_normal_form(&[ev(&[1, 0]), ev(&[1])]),
            Err(Error::DimensionMismatch { .. })
        ));
        let z2 = hermite_normal_form(&[ev(&[1, 0]), ev(&[0, 1])]).unwrap();
        assert!(lattice_contains(&z2, &ev(&[1])).is_err());
    }

    #[test]
    fn reduced_above_pivots() {
        let l = hermite_normal_form(&[ev(&[1, 5]), ev(&[0, 3])]).unwrap();
        assert_eq!(basis_i64(&l), vec![vec![1, 2], vec![0, 3]]);
    }

    #[test]
    fn multiplier_into_even_lattice() {
        let l = hermite_normal_form(&[ev(&[2, 0, 0]), ev(&[1, 1, 0]), ev(&[0, 2, 0])]).unwrap();
        assert_eq!(l.multiplier_into(&ev(&[1, 0, 0])), Some(2));
        assert_eq!(l.multiplier_into(&ev(&[1, 1, 0])), Some(1));
        assert_eq!(l.multiplier_into(&ev(&[0, 0, 1])), None);
    }
}
