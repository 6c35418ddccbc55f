//! The saturation Γ̄ = group(Γ) ∩ cone(Γ) and its structure as a Γ-module.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cone::{zonotope_lattice_points, RationalCone};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::lattice::IntegerLattice;
use crate::semigroup::{graded_sums, AffineSemigroup};
use crate::vector::{deglex, sort_deglex, ExponentVector};

#[derive(Clone, Debug, Serialize)]
pub struct SaturationResult {
    base: AffineSemigroup,
    lattice: IntegerLattice,
    cone: RationalCone,
    /// Shortest lattice vector on each extreme ray.
    lattice_rays: Vec<ExponentVector>,
    hilbert_basis: Vec<ExponentVector>,
    module_generators: Vec<ExponentVector>,
}

impl SaturationResult {
    pub fn base(&self) -> &AffineSemigroup {
        &self.base
    }

    pub fn lattice(&self) -> &IntegerLattice {
        &self.lattice
    }

    pub fn cone(&self) -> &RationalCone {
        &self.cone
    }

    pub fn lattice_rays(&self) -> &[ExponentVector] {
        &self.lattice_rays
    }

    pub fn hilbert_basis(&self) -> &[ExponentVector] {
        &self.hilbert_basis
    }

    /// Minimal `G` with Γ̄ = ∪_{g ∈ G} (g + Γ); always starts with 0.
    pub fn module_generators(&self) -> &[ExponentVector] {
        &self.module_generators
    }

    pub fn is_normal(&self) -> bool {
        self.module_generators.len() == 1
    }

    /// Membership in Γ̄.
    pub fn contains(&self, v: &ExponentVector) -> Result<bool> {
        self.base.saturation_contains(v)
    }

    /// Membership in Γ̄ without the dimension check.
    pub(crate) fn holds(&self, v: &ExponentVector) -> bool {
        self.cone.holds(v) && (self.lattice.is_full() || matches!(self.lattice.coordinates(v), Ok(Some(_))))
    }

    /// `v` lies in `g + Γ` for some module generator `g`.
    pub fn covered_by_module_generators(&self, v: &ExponentVector) -> bool {
        self.module_generators.iter().any(|g| self.base.member(&(v - g)))
    }
}

/// Hilbert basis and module generators of Γ̄.
pub fn saturate(s: &AffineSemigroup, limits: &Limits) -> Result<SaturationResult> {
    let lattice = s.lattice()?.clone();
    let cone = s.cone()?.clone();
    let lattice_rays = cone
        .rays()
        .iter()
        .map(|r| {
            let k = lattice
                .multiplier_into(r)
                .ok_or_else(|| Error::Internal(format!("ray {r} outside the lattice span")))?;
            Ok(r.scale(k))
        })
        .collect::<Result<Vec<_>>>()?;

    let candidates: Vec<ExponentVector> = zonotope_lattice_points(&lattice_rays, limits.zonotope_box_cap)?
        .into_iter()
        .filter(|p| !p.is_zero() && lattice.coordinates(p).map(|c| c.is_some()).unwrap_or(false))
        .collect();
    let in_sat = |v: &ExponentVector| cone.holds(v) && matches!(lattice.coordinates(v), Ok(Some(_)));
    let mut hilbert_basis: Vec<ExponentVector> = candidates
        .iter()
        .filter(|x| !candidates.iter().any(|c| c != *x && in_sat(&(*x - c))))
        .cloned()
        .collect();
    sort_deglex(&mut hilbert_basis);

    let mut result = SaturationResult {
        base: s.clone(),
        lattice,
        cone,
        lattice_rays,
        hilbert_basis,
        module_generators: Vec::new(),
    };
    result.module_generators = closure(s, &result.hilbert_basis, limits.module_iteration_cap)?;
    Ok(result)
}

/// Fixed-point closure: starting from {0}, add `m + h` whenever it is not yet
/// covered by `M + Γ`, visiting the frontier in degree-lexicographic order.
fn closure(s: &AffineSemigroup, hilbert_basis: &[ExponentVector], cap: usize) -> Result<Vec<ExponentVector>> {
    let dim = s.dim();
    let mut found: Vec<ExponentVector> = vec![ExponentVector::zeros(dim)];
    let mut frontier: BTreeSet<(i64, ExponentVector)> = BTreeSet::new();
    frontier.insert((0, ExponentVector::zeros(dim)));
    while let Some((_, m)) = frontier.pop_first() {
        for h in hilbert_basis {
            let x = &m + h;
            if found.iter().any(|g| s.member(&(&x - g))) {
                continue;
            }
            if found.len() >= cap {
                return Err(Error::bound("module generator closure", cap as u64));
            }
            found.push(x.clone());
            frontier.insert((x.degree(), x));
        }
    }
    let minimal: Vec<ExponentVector> = found
        .iter()
        .filter(|m| !found.iter().any(|g| g != *m && s.member(&(*m - g))))
        .cloned()
        .collect();
    let mut minimal = minimal;
    sort_deglex(&mut minimal);
    Ok(minimal)
}

pub fn module_generators(s: &AffineSemigroup, limits: &Limits) -> Result<Vec<ExponentVector>> {
    Ok(saturate(s, limits)?.module_generators)
}

pub fn is_normal(s: &AffineSemigroup, limits: &Limits) -> Result<bool> {
    Ok(saturate(s, limits)?.is_normal())
}

/// Elements of Γ̄ ∖ Γ of total degree at most `bound`, degree-lexicographically.
pub fn gaps_bounded(sat: &SaturationResult, bound: i64) -> Vec<ExponentVector> {
    let mut out: Vec<ExponentVector> = graded_sums(&sat.hilbert_basis, sat.base.dim(), bound)
        .into_iter()
        .flatten()
        .filter(|v| !sat.base.member(v))
        .collect();
    out.sort_by(deglex);
    out
}
