//! Brute-force reference computations by bounded enumeration.
//!
//! These share no code with the main algorithms beyond the saturation
//! membership test (lattice plus cone), and are only exact up to the degree
//! bound they are given.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::semigroup::AffineSemigroup;
use crate::vector::{sort_deglex, ExponentVector};

/// Membership in the semigroup generated by `gens`, by dynamic programming
/// over the box `[0, v]`.
pub fn naive_member(gens: &[ExponentVector], v: &ExponentVector) -> bool {
    if !v.is_nonnegative() {
        return false;
    }
    let dims: Vec<usize> = v.iter().map(|&c| c as usize + 1).collect();
    let size: usize = dims.iter().product();
    let index = |p: &[i64]| p.iter().zip(&dims).fold(0, |acc, (&c, &d)| acc * d + c as usize);
    let mut reach = vec![false; size];
    reach[0] = true;
    let mut point = vec![0i64; v.dim()];
    for k in 1..size {
        let mut rest = k;
        for i in (0..point.len()).rev() {
            point[i] = (rest % dims[i]) as i64;
            rest /= dims[i];
        }
        reach[k] = gens.iter().any(|g| {
            let prev: Vec<i64> = point.iter().zip(g.iter()).map(|(a, b)| a - b).collect();
            prev.iter().all(|&c| c >= 0) && reach[index(&prev)]
        });
    }
    reach[size - 1]
}

/// All elements of the semigroup generated by `gens` with total degree at most `bound`.
pub fn semigroup_points(gens: &[ExponentVector], dim: usize, bound: i64) -> BTreeSet<ExponentVector> {
    let mut seen: BTreeSet<ExponentVector> = BTreeSet::new();
    let mut stack = vec![ExponentVector::zeros(dim)];
    while let Some(v) = stack.pop() {
        if !seen.insert(v.clone()) {
            continue;
        }
        for g in gens {
            let w = &v + g;
            if w.degree() <= bound && !seen.contains(&w) {
                stack.push(w);
            }
        }
    }
    seen
}

/// All points of ℕ^dim with total degree at most `bound`.
pub fn box_points(dim: usize, bound: i64) -> Vec<ExponentVector> {
    fn rec(dim: usize, left: i64, prefix: &mut Vec<i64>, out: &mut Vec<ExponentVector>) {
        if prefix.len() == dim {
            out.push(ExponentVector::new(prefix.clone()));
            return;
        }
        for a in 0..=left {
            prefix.push(a);
            rec(dim, left - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, bound, &mut Vec::new(), &mut out);
    out
}

/// Elements of Γ̄ with total degree at most `bound`.
pub fn saturation_points(s: &AffineSemigroup, bound: i64) -> Result<Vec<ExponentVector>> {
    let mut out = Vec::new();
    for p in box_points(s.dim(), bound) {
        if s.saturation_contains(&p)? {
            out.push(p);
        }
    }
    sort_deglex(&mut out);
    Ok(out)
}

/// Module generators of Γ̄ over Γ of degree at most `bound`: points `x ∈ Γ̄`
/// with `x − g ∉ Γ̄` for every generator `g`.
pub fn module_generators(s: &AffineSemigroup, bound: i64) -> Result<Vec<ExponentVector>> {
    let sat: BTreeSet<ExponentVector> = saturation_points(s, bound)?.into_iter().collect();
    let mut out: Vec<ExponentVector> = sat
        .iter()
        .filter(|x| !s.generators().iter().any(|g| sat.contains(&(*x - g))))
        .cloned()
        .collect();
    sort_deglex(&mut out);
    Ok(out)
}

/// Minimal generators of the conductor with degree at most `bound`, given
/// module generators `mg` of Γ̄ (complete up to their own degree).
pub fn conductor_generators(s: &AffineSemigroup, mg: &[ExponentVector], bound: i64) -> Vec<ExponentVector> {
    let top = mg.iter().map(ExponentVector::degree).max().unwrap_or(0);
    let gamma = semigroup_points(s.generators(), s.dim(), bound + top);
    let in_conductor = |v: &ExponentVector| mg.iter().all(|g| gamma.contains(&(v + g)));
    let conductor: BTreeSet<&ExponentVector> = gamma
        .iter()
        .filter(|v| v.degree() <= bound && in_conductor(v))
        .collect();
    let mut out: Vec<ExponentVector> = conductor
        .iter()
        .filter(|v| {
            !s.generators()
                .iter()
                .any(|g| conductor.contains(&(**v - g)))
        })
        .map(|v| (*v).clone())
        .collect();
    sort_deglex(&mut out);
    out
}

/// Largest integer not in the numerical semigroup, by enumeration up to `bound`; −1 if none.
pub fn frobenius(gens: &[u64], bound: u64) -> i64 {
    let mut member = vec![false; bound as usize + 1];
    member[0] = true;
    for a in 1..=bound as usize {
        member[a] = gens.iter().any(|&g| g as usize <= a && member[a - g as usize]);
    }
    member.iter().rposition(|&m| !m).map_or(-1, |a| a as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    #[test]
    fn membership() {
        let gens = vec![ev(&[3]), ev(&[5])];
        let members: Vec<i64> = (0..12).filter(|&a| naive_member(&gens, &ev(&[a]))).collect();
        assert_eq!(members, vec![0, 3, 5, 6, 8, 9, 10, 11]);
        let pts = semigroup_points(&gens, 1, 11);
        assert_eq!(pts.len(), 8);
        assert_eq!(frobenius(&[3, 5], 30), 7);
        assert_eq!(frobenius(&[1], 5), -1);
    }

    #[test]
    fn surface_example() {
        let s = AffineSemigroup::from_rows(&[&[2, 0], &[3, 0], &[1, 1], &[0, 1]]).unwrap();
        let mg = module_generators(&s, 8).unwrap();
        assert_eq!(mg, vec![ev(&[0, 0]), ev(&[1, 0])]);
        assert_eq!(
            conductor_generators(&s, &mg, 8),
            vec![ev(&[0, 1]), ev(&[1, 1]), ev(&[2, 0]), ev(&[3, 0])]
        );
        assert_eq!(box_points(2, 2).len(), 6);
    }
}
