//! Monomial ideals of `k[[Γ]]` (or of `k[[Γ̄]]`).

use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::semigroup::AffineSemigroup;
use crate::vector::{sort_deglex, ExponentVector};

/// An ideal given by monomial generators, kept minimal and
/// degree-lexicographically sorted. The unit ideal is `{0}`.
#[derive(Clone, Debug, Serialize)]
pub struct MonomialIdeal {
    #[serde(skip)]
    ambient: AffineSemigroup,
    generators: Vec<ExponentVector>,
    over_normalization: bool,
}

impl PartialEq for MonomialIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.over_normalization == other.over_normalization
            && self.generators == other.generators
    }
}

impl Eq for MonomialIdeal {}

impl MonomialIdeal {
    /// Ideal of `k[[Γ]]`; every generator must lie in Γ.
    pub fn new(ambient: &AffineSemigroup, generators: Vec<ExponentVector>) -> Result<Self> {
        Self::build(ambient, generators, false)
    }

    /// Ideal of `k[[Γ̄]]`; every generator must lie in Γ̄.
    pub fn over_normalization(ambient: &AffineSemigroup, generators: Vec<ExponentVector>) -> Result<Self> {
        Self::build(ambient, generators, true)
    }

    /// The maximal ideal, generated by the minimal generators of Γ.
    pub fn maximal(ambient: &AffineSemigroup) -> Self {
        Self {
            ambient: ambient.clone(),
            generators: ambient.minimal_generators(),
            over_normalization: false,
        }
    }

    fn build(ambient: &AffineSemigroup, generators: Vec<ExponentVector>, over_normalization: bool) -> Result<Self> {
        for g in &generators {
            check_dim(ambient.dim(), g)?;
            if !g.is_nonnegative() {
                return Err(Error::NegativeCoordinate(g.clone()));
            }
            let inside = if over_normalization {
                ambient.saturation_contains(g)?
            } else {
                ambient.member(g)
            };
            if !inside {
                return Err(Error::NotInSemigroup(g.to_string()));
            }
        }
        let mut ideal = Self {
            ambient: ambient.clone(),
            generators: Vec::new(),
            over_normalization,
        };
        let mut gens = generators;
        sort_deglex(&mut gens);
        ideal.generators = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| h != *g && ideal.divides(h, g)))
            .cloned()
            .collect();
        Ok(ideal)
    }

    pub fn ambient(&self) -> &AffineSemigroup {
        &self.ambient
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn is_over_normalization(&self) -> bool {
        self.over_normalization
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(ExponentVector::is_zero)
    }

    /// `v − h` lies in the coefficient semigroup (Γ, or Γ̄ for ideals of the normalization).
    fn divides(&self, h: &ExponentVector, v: &ExponentVector) -> bool {
        let d = v - h;
        if self.over_normalization {
            self.ambient.saturation_contains(&d).unwrap_or(false)
        } else {
            self.ambient.member(&d)
        }
    }

    pub fn contains(&self, v: &ExponentVector) -> Result<bool> {
        check_dim(self.ambient.dim(), v)?;
        Ok(self.generators.iter().any(|g| self.divides(g, v)))
    }
}

pub fn ideal_contains(ideal: &MonomialIdeal, v: &ExponentVector) -> Result<bool> {
    ideal.contains(v)
}

fn same_ring(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<()> {
    if a.ambient != b.ambient || a.over_normalization != b.over_normalization {
        return Err(Error::AmbientMismatch);
    }
    Ok(())
}

pub fn ideal_sum(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<MonomialIdeal> {
    same_ring(a, b)?;
    let gens: Vec<ExponentVector> = a.generators.iter().chain(&b.generators).cloned().collect();
    MonomialIdeal::build(&a.ambient, gens, a.over_normalization)
}

/// `a ⊆ b`, checked generator by generator.
pub fn ideal_subset(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<bool> {
    same_ring(a, b)?;
    for g in &a.generators {
        if !b.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Radical equals the maximal ideal.
///
/// Some power of a minimal generator `g` lies in the ideal iff some ideal
/// generator lies on the smallest face of the cone containing `g`: off that
/// face a facet value of `k·g − w` is negative for all `k`, while on it
/// `k·g − w` eventually enters the conductor of Γ ∩ face.
pub fn is_m_primary(ideal: &MonomialIdeal) -> Result<bool> {
    if ideal.generators.is_empty() || ideal.is_unit() {
        return Ok(false);
    }
    let cone = ideal.ambient.cone()?;
    let support = |v: &ExponentVector| -> Vec<bool> { cone.facets().iter().map(|f| f.dot(v) == 0).collect() };
    let on_face = |w: &ExponentVector, face: &[bool]| {
        let sw = support(w);
        face.iter().zip(&sw).all(|(&zero_g, &zero_w)| !zero_g || zero_w)
    };
    Ok(ideal.ambient.minimal_generators().iter().all(|g| {
        let face = support(g);
        ideal.generators.iter().any(|w| on_face(w, &face))
    }))
}

/// For each minimal generator `g` of Γ, the least `k` with `k·g` in the ideal.
/// The default cap is `2·(largest generator degree) + dim`.
pub fn radical_exponents(ideal: &MonomialIdeal, cap: Option<u64>) -> Result<Vec<(ExponentVector, u64)>> {
    let max_deg = ideal.generators.iter().map(ExponentVector::degree).max().unwrap_or(0);
    let cap = cap.unwrap_or(2 * max_deg as u64 + ideal.ambient.dim() as u64);
    let mut out = Vec::new();
    for g in ideal.ambient.minimal_generators() {
        let k = (1..=cap)
            .find(|&k| ideal.generators.iter().any(|w| ideal.divides(w, &g.scale(k as i64))))
            .ok_or_else(|| Error::bound(format!("power of {g} in the ideal"), cap))?;
        out.push((g, k));
    }
    Ok(out)
}

/// `xs` has `dim Γ` entries and generates an ideal primary to the maximal ideal.
pub fn is_system_of_parameters(s: &AffineSemigroup, xs: &[ExponentVector]) -> Result<bool> {
    for x in xs {
        check_dim(s.dim(), x)?;
        if x.is_zero() || !x.is_nonnegative() || !s.member(x) {
            return Err(Error::NotInSemigroup(x.to_string()));
        }
    }
    if xs.len() != s.dimension() {
        return Ok(false);
    }
    is_m_primary(&MonomialIdeal::new(s, xs.to_vec())?)
}
