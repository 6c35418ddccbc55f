//! Semigroup constructors and checkable ring properties.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::conductor::{conductor_generators, conductor_test, region_points};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::normalization::{gaps_bounded, saturate, SaturationResult};
use crate::semigroup::{AffineSemigroup, NumericalSemigroup};
use crate::vector::ExponentVector;

/// Degree-`d` Veronese in `n` variables with one monomial removed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinchedVeroneseSpec {
    pub n: usize,
    pub d: i64,
    pub removed: ExponentVector,
}

/// All exponent vectors of total degree `d` in `n` variables, lexicographically descending.
pub fn degree_vectors(n: usize, d: i64) -> Vec<ExponentVector> {
    fn rec(n: usize, left: i64, prefix: &mut Vec<i64>, out: &mut Vec<ExponentVector>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(ExponentVector::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=left).rev() {
            prefix.push(a);
            rec(n, left - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 && d >= 0 {
        rec(n, d, &mut Vec::new(), &mut out);
    }
    out
}

pub fn veronese(n: usize, d: i64) -> Result<AffineSemigroup> {
    if n == 0 || d < 1 {
        return Err(Error::Invalid(format!("Veronese needs n ≥ 1 and d ≥ 1, got n={n}, d={d}")));
    }
    AffineSemigroup::new(n, degree_vectors(n, d))
}

pub fn pinched_veronese(spec: &PinchedVeroneseSpec) -> Result<AffineSemigroup> {
    if spec.removed.dim() != spec.n {
        return Err(Error::DimensionMismatch {
            expected: spec.n,
            found: spec.removed.dim(),
        });
    }
    if !spec.removed.is_nonnegative() || spec.removed.degree() != spec.d {
        return Err(Error::Invalid(format!(
            "removed monomial {} is not of degree {}",
            spec.removed, spec.d
        )));
    }
    let gens: Vec<ExponentVector> = degree_vectors(spec.n, spec.d)
        .into_iter()
        .filter(|v| *v != spec.removed)
        .collect();
    if gens.is_empty() {
        return Err(Error::Empty("pinched Veronese generators"));
    }
    AffineSemigroup::new(spec.n, gens)
}

/// `⟨X_1, …, X_{n−1}, X_1X_n, …, X_{n−1}X_n, X_n²⟩` for `n ≥ 2`.
pub fn xn_family(n: usize) -> Result<AffineSemigroup> {
    if n < 2 {
        return Err(Error::Invalid(format!("family needs n ≥ 2, got {n}")));
    }
    let mut gens = Vec::new();
    for i in 0..n - 1 {
        gens.push(ExponentVector::unit(n, i));
        gens.push(&ExponentVector::unit(n, i) + &ExponentVector::unit(n, n - 1));
    }
    gens.push(ExponentVector::unit(n, n - 1).scale(2));
    AffineSemigroup::new(n, gens)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Seminormality {
    Yes,
    /// `witness ∉ Γ` while `2·witness, 3·witness ∈ Γ`.
    No { witness: ExponentVector },
    /// No violation of total degree at most `bound`; larger ones were not ruled out.
    YesUpToBound { bound: i64 },
}

fn violates(s: &AffineSemigroup, v: &ExponentVector) -> bool {
    !s.member(v) && s.member(&v.scale(2)) && s.member(&v.scale(3))
}

/// Seminormality of a numerical semigroup; the Frobenius number is always a
/// witness when there are gaps, so the smallest witness is found by a scan.
pub fn is_seminormal_numerical(n: &NumericalSemigroup) -> Seminormality {
    let f = n.frobenius();
    if f < 0 {
        return Seminormality::Yes;
    }
    let table = n.sieve(3 * f as u64);
    let witness = (1..=f as usize)
        .find(|&a| !table[a] && table[2 * a] && table[3 * a])
        .expect("the Frobenius number is a witness");
    Seminormality::No {
        witness: ExponentVector::new(vec![witness as i64]),
    }
}

/// Seminormality of Γ.
///
/// Γ is seminormal iff, for every face `F` of its cone, every point of
/// `group(Γ ∩ F)` in the relative interior of `F` lies in Γ. Holes of `Γ ∩ F`
/// sit in the staircase complement of its conductor; regions touching the
/// relative interior are enumerated when finite. If some region is infinite
/// and no violation turns up, the answer is a bounded search up to
/// `limits.seminormal_bound`.
pub fn is_seminormal(sat: &SaturationResult, limits: &Limits) -> Result<Seminormality> {
    let s = sat.base();
    if sat.is_normal() {
        return Ok(Seminormality::Yes);
    }
    let mut exact = true;
    for face_gens in face_generator_sets(sat) {
        let sub = AffineSemigroup::new(s.dim(), face_gens)?;
        let sub_sat = saturate(&sub, limits)?;
        if sub_sat.is_normal() {
            continue;
        }
        let c = conductor_generators(&sub_sat, limits)?;
        if !c.certified {
            exact = false;
            continue;
        }
        for region in &c.complement {
            if region.bounds.values().any(|&b| b <= 1) {
                continue;
            }
            if !region.face.is_empty() {
                exact = false;
                continue;
            }
            for p in region_points(&sub_sat, region, limits.certify_box_cap)? {
                let relint = sub_sat.cone().facet_values(&p).iter().all(|&v| v > 0);
                if relint && !sub.member(&p) {
                    let u = multiple_witness(&sub_sat, &p)?;
                    return Ok(Seminormality::No {
                        witness: smallest_witness(sat, &u),
                    });
                }
            }
        }
    }
    if exact {
        return Ok(Seminormality::Yes);
    }
    let bound = limits.seminormal_bound;
    match gaps_bounded(sat, bound).into_iter().find(|v| violates(s, v)) {
        Some(witness) => Ok(Seminormality::No { witness }),
        None => Ok(Seminormality::YesUpToBound { bound }),
    }
}

/// For a hole `h` in the relative interior, `k·h` with the largest `k` such
/// that `k·h ∉ Γ`; then `2k·h` and `3k·h` lie in Γ.
fn multiple_witness(sat: &SaturationResult, h: &ExponentVector) -> Result<ExponentVector> {
    const CAP: i64 = 100_000;
    let mut last = h.clone();
    for k in 1..=CAP {
        let v = h.scale(k);
        if conductor_test(sat, &v) {
            return Ok(last);
        }
        if !sat.base().member(&v) {
            last = v;
        }
    }
    Err(Error::bound("seminormality witness multiple", CAP as u64))
}

fn smallest_witness(sat: &SaturationResult, found: &ExponentVector) -> ExponentVector {
    gaps_bounded(sat, found.degree())
        .into_iter()
        .find(|v| violates(sat.base(), v))
        .unwrap_or_else(|| found.clone())
}

/// Generators of Γ lying on each nonzero face of the cone, whole cone first.
fn face_generator_sets(sat: &SaturationResult) -> Vec<Vec<ExponentVector>> {
    let cone = sat.cone();
    let rays = cone.rays();
    let all: BTreeSet<usize> = (0..rays.len()).collect();
    let mut faces: Vec<BTreeSet<usize>> = vec![all];
    let mut k = 0;
    while k < faces.len() {
        let face = faces[k].clone();
        for f in cone.facets() {
            let sub: BTreeSet<usize> = face.iter().copied().filter(|&r| f.dot(&rays[r]) == 0).collect();
            if !sub.is_empty() && !faces.contains(&sub) {
                faces.push(sub);
            }
        }
        k += 1;
    }
    faces
        .iter()
        .map(|face| {
            let vanishing: Vec<&ExponentVector> = cone
                .facets()
                .iter()
                .filter(|f| face.iter().all(|&r| f.dot(&rays[r]) == 0))
                .collect();
            sat.base()
                .generators()
                .iter()
                .filter(|g| vanishing.iter().all(|f| f.dot(g) == 0))
                .cloned()
                .collect()
        })
        .collect()
}

pub fn is_gorenstein_numerical(n: &NumericalSemigroup) -> bool {
    n.is_symmetric()
}
