//! The conductor 𝔠 = {v ∈ Γ : v + Γ̄ ⊆ Γ}.
//!
//! 𝔠 is an ideal of Γ̄, so the search runs over Γ̄ degree by degree and keeps
//! only elements outside the Γ̄-ideal found so far. The complement of that
//! ideal in Γ̄ is a finite union of staircase regions `{ℓ_i(v) < b_i : i ∈ S}`.
//! The search stops once every region is shown to miss 𝔠: a region is a
//! finite box of representatives plus translates along a face `F` of the cone,
//! and a representative that is not in the conductor of the localization at
//! `F` cannot have a translate in 𝔠.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_rational::Ratio;
use serde::Serialize;

use crate::cone::for_each_box_point;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::lattice::{hermite_normal_form, IntegerLattice};
use crate::normalization::SaturationResult;
use crate::semigroup::{AffineSemigroup, NumericalSemigroup};
use crate::vector::{deglex, sort_deglex, ExponentVector};

#[derive(Clone, Debug, Serialize)]
pub struct ConductorResult {
    pub semigroup: AffineSemigroup,
    /// Minimal generators of 𝔠 as an ideal of Γ.
    pub r_generators: Vec<ExponentVector>,
    /// Minimal generators of 𝔠 as an ideal of Γ̄.
    pub rbar_generators: Vec<ExponentVector>,
    pub witness_element: ExponentVector,
    pub equals_maximal: bool,
    pub is_unit: bool,
    pub certified: bool,
    /// Highest degree of Γ̄ visited by the search.
    pub searched_degree: i64,
    /// Staircase description of Γ̄ ∖ 𝔠 (complete only when certified).
    #[serde(skip)]
    pub(crate) complement: Vec<Region>,
}

impl ConductorResult {
    /// Fails with [`Error::Uncertified`] unless the search was certified.
    pub fn require_certified(&self) -> Result<&Self> {
        if self.certified {
            Ok(self)
        } else {
            Err(Error::Uncertified)
        }
    }

    /// True when Γ̄ ∖ 𝔠 is finite, i.e. the conductor is primary to the maximal ideal.
    pub fn is_m_primary(&self) -> bool {
        self.certified && self.complement.iter().all(|r| r.face.is_empty())
    }
}

/// `{v ∈ Γ̄ : ℓ_i(v) < b_i for (i, b_i) in bounds}`; `face` lists the extreme
/// rays on which every bounded facet vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Region {
    pub(crate) bounds: BTreeMap<usize, i128>,
    pub(crate) face: Vec<usize>,
}

impl Region {
    pub(crate) fn contains_values(&self, values: &[i128]) -> bool {
        self.bounds.iter().all(|(&i, &b)| values[i] < b)
    }

    fn within(&self, other: &Region) -> bool {
        other
            .bounds
            .iter()
            .all(|(i, b)| self.bounds.get(i).is_some_and(|a| a <= b))
    }
}

/// `v + g ∈ Γ` for every module generator `g` (including `g = 0`).
pub fn in_conductor(sat: &SaturationResult, v: &ExponentVector) -> Result<bool> {
    crate::error::check_dim(sat.base().dim(), v)?;
    if !v.is_nonnegative() {
        return Err(Error::NegativeCoordinate(v.clone()));
    }
    Ok(conductor_test(sat, v))
}

pub(crate) fn conductor_test(sat: &SaturationResult, v: &ExponentVector) -> bool {
    sat.module_generators().iter().all(|g| sat.base().member(&(v + g)))
}

/// Smallest element of 𝔠 in degree-lexicographic order (0 when Γ is normal).
///
/// A guaranteed element `Σ c_i` is built first, one `c_i ∈ Γ` with
/// `c_i + g_i ∈ Γ` per nonzero module generator (the first of degree at most
/// the cap, else the first multiple of the generator sum); its degree bounds
/// the search.
pub fn conductor_element(sat: &SaturationResult, limits: &Limits) -> Result<ExponentVector> {
    let s = sat.base();
    let dim = s.dim();
    if sat.is_normal() {
        return Ok(ExponentVector::zeros(dim));
    }
    if dim == 1 {
        // Γ = k·N for a numerical semigroup N, whose conductor starts at F + 1.
        let k = s.generators().iter().fold(0, |acc, g| num_integer::gcd(acc, g[0]));
        let n = NumericalSemigroup::new(s.generators().iter().map(|g| (g[0] / k) as u64).collect())?;
        return Ok(ExponentVector::new(vec![k * (n.frobenius() + 1)]));
    }
    let cap = limits.conductor_degree_cap;
    let mut levels = GradedLevels::new(s.generators(), dim);
    let mut total = ExponentVector::zeros(dim);
    // σ lies in the interior of the cone, so `g + kσ` eventually enters the conductor translate.
    let sigma = s
        .generators()
        .iter()
        .fold(ExponentVector::zeros(dim), |acc, g| &acc + g);
    for g in sat.module_generators().iter().filter(|g| !g.is_zero()) {
        let c = (0..=cap)
            .find_map(|t| levels.level(t).iter().find(|c| s.member(&(*c + g))).cloned())
            .or_else(|| {
                (1..=cap)
                    .map(|k| sigma.scale(k))
                    .find(|c| s.member(&(c + g)))
            })
            .ok_or_else(|| Error::bound(format!("conductor element search for {g}"), cap as u64))?;
        total = &total + &c;
    }
    debug_assert!(conductor_test(sat, &total));
    for t in 1..=total.degree() {
        if let Some(c) = levels.level(t).iter().find(|c| conductor_test(sat, c)) {
            return Ok(c.clone());
        }
    }
    Ok(total)
}

/// Elements of a semigroup grouped by total degree, built on demand.
pub(crate) struct GradedLevels<'a> {
    gens: &'a [ExponentVector],
    levels: Vec<Vec<ExponentVector>>,
}

impl<'a> GradedLevels<'a> {
    pub(crate) fn new(gens: &'a [ExponentVector], dim: usize) -> Self {
        Self {
            gens,
            levels: vec![vec![ExponentVector::zeros(dim)]],
        }
    }

    /// Degree-`t` elements in degree-lexicographic order.
    pub(crate) fn level(&mut self, t: i64) -> &[ExponentVector] {
        let t = t.max(0) as usize;
        while self.levels.len() <= t {
            let n = self.levels.len();
            let mut next: BTreeSet<ExponentVector> = BTreeSet::new();
            for g in self.gens {
                let dg = g.degree() as usize;
                if dg <= n {
                    next.extend(self.levels[n - dg].iter().map(|x| x + g));
                }
            }
            self.levels.push(next.into_iter().collect());
        }
        &self.levels[t]
    }
}

/// Minimal generators of 𝔠 over Γ and Γ̄, with a termination certificate.
pub fn conductor_generators(sat: &SaturationResult, limits: &Limits) -> Result<ConductorResult> {
    let s = sat.base();
    let dim = s.dim();
    let witness_element = conductor_element(sat, limits)?;
    let minimal = s.minimal_generators();

    if sat.is_normal() {
        return Ok(ConductorResult {
            semigroup: s.clone(),
            r_generators: vec![ExponentVector::zeros(dim)],
            rbar_generators: vec![ExponentVector::zeros(dim)],
            witness_element,
            equals_maximal: false,
            is_unit: true,
            certified: true,
            searched_degree: 0,
            complement: Vec::new(),
        });
    }

    let mut search = Search::new(sat, limits);
    let mut wbar: Vec<ExponentVector> = Vec::new();
    let mut levels: Vec<Vec<ExponentVector>> = Vec::new();
    let mut certified = false;
    let mut checked_len = usize::MAX;
    let mut degree = 0;
    let mut regions = vec![Region {
        bounds: BTreeMap::new(),
        face: (0..sat.lattice_rays().len()).collect(),
    }];

    // The search always reaches the known conductor element.
    let degree_cap = limits.conductor_degree_cap.max(witness_element.degree());
    while degree <= degree_cap {
        let t = degree as usize;
        let mut level: BTreeSet<ExponentVector> = BTreeSet::new();
        if t == 0 {
            level.insert(ExponentVector::zeros(dim));
        } else {
            for h in sat.hilbert_basis() {
                let dh = h.degree() as usize;
                if dh > t {
                    continue;
                }
                for x in &levels[t - dh] {
                    level.insert(x + h);
                }
            }
        }
        let mut outside = Vec::new();
        let mut sorted: Vec<ExponentVector> = level.into_iter().collect();
        sorted.sort_by(deglex);
        for x in sorted {
            if wbar.iter().any(|w| sat.cone().holds(&(&x - w))) {
                continue;
            }
            if conductor_test(sat, &x) {
                regions = split_regions(sat, regions, &x);
                wbar.push(x);
            } else {
                outside.push(x);
            }
        }
        levels.push(outside);

        if !wbar.is_empty() && wbar.len() != checked_len {
            checked_len = wbar.len();
            match search.certify(&regions) {
                Ok(true) => {
                    certified = true;
                    break;
                }
                Ok(false) => {}
                Err(e) if e.is_bound_exceeded() => break,
                Err(e) => return Err(e),
            }
        }
        degree += 1;
    }

    sort_deglex(&mut wbar);
    let mut products: Vec<ExponentVector> = wbar
        .iter()
        .flat_map(|w| sat.module_generators().iter().map(move |g| w + g))
        .collect();
    sort_deglex(&mut products);
    let r_generators = minimalize(s, &products);
    let equals_maximal = minimal.iter().all(|g| conductor_test(sat, g));

    Ok(ConductorResult {
        semigroup: s.clone(),
        r_generators,
        rbar_generators: wbar,
        witness_element,
        equals_maximal,
        is_unit: false,
        certified,
        searched_degree: degree.min(degree_cap),
        complement: regions,
    })
}

/// Drops every element that is another element plus a nonzero element of Γ.
pub(crate) fn minimalize(s: &AffineSemigroup, xs: &[ExponentVector]) -> Vec<ExponentVector> {
    let mut out: Vec<ExponentVector> = xs
        .iter()
        .filter(|x| !xs.iter().any(|y| y != *x && s.member(&(*x - y))))
        .cloned()
        .collect();
    sort_deglex(&mut out);
    out
}

/// Refines the staircase after adding `w` to the Γ̄-ideal: each region keeps
/// the part where some facet value stays below its value at `w`.
fn split_regions(sat: &SaturationResult, regions: Vec<Region>, w: &ExponentVector) -> Vec<Region> {
    let values = sat.cone().facet_values(w);
    let mut next: Vec<Region> = Vec::new();
    for r in regions {
        if !r.contains_values(&values) {
            next.push(r);
            continue;
        }
        for (i, &v) in values.iter().enumerate() {
            if v <= 0 {
                continue;
            }
            let mut bounds = r.bounds.clone();
            let b = bounds.entry(i).or_insert(v);
            *b = (*b).min(v);
            next.push(Region {
                bounds,
                face: Vec::new(),
            });
        }
    }
    // Drop regions contained in another one.
    let mut kept: Vec<Region> = Vec::new();
    for (k, r) in next.iter().enumerate() {
        let redundant = next
            .iter()
            .enumerate()
            .any(|(j, o)| j != k && r.within(o) && (!o.within(r) || j < k));
        if !redundant {
            kept.push(r.clone());
        }
    }
    let rays = sat.lattice_rays();
    let facets = sat.cone().facets();
    for r in kept.iter_mut() {
        r.face = (0..rays.len())
            .filter(|&k| r.bounds.keys().all(|&i| facets[i].dot(&rays[k]) == 0))
            .collect();
    }
    kept
}

/// Box `[0, U]` holding a representative of every element of `region`
/// modulo the lattice rays of its face.
pub(crate) fn region_box(sat: &SaturationResult, region: &Region) -> Vec<i64> {
    let rays = sat.lattice_rays();
    let facets = sat.cone().facets();
    let dim = sat.base().dim();
    let mut upper = vec![Ratio::<i128>::from_integer(0); dim];
    for (k, ray) in rays.iter().enumerate() {
        let beta = if region.face.contains(&k) {
            Ratio::from_integer(1)
        } else {
            region
                .bounds
                .iter()
                .filter_map(|(&i, &b)| {
                    let l = facets[i].dot(ray);
                    (l > 0).then(|| Ratio::new(b - 1, l))
                })
                .min()
                .unwrap_or_else(|| Ratio::from_integer(0))
        };
        for j in 0..dim {
            upper[j] += beta * Ratio::from_integer(ray[j] as i128);
        }
    }
    upper.iter().map(|u| u.floor().to_integer() as i64).collect()
}

/// Points of Γ̄ inside `region` and its box, degree-lexicographically.
pub(crate) fn region_points(sat: &SaturationResult, region: &Region, cap: u64) -> Result<Vec<ExponentVector>> {
    let upper = region_box(sat, region);
    let lower = vec![0; upper.len()];
    let mut out = Vec::new();
    for_each_box_point(&lower, &upper, cap, "conductor certificate", |p| {
        if region.contains_values(&sat.cone().facet_values(p)) && sat.holds(p) {
            out.push(p.clone());
        }
    })?;
    out.sort_by(deglex);
    Ok(out)
}

/// Membership tests in the localizations Γ + ℤ(Γ ∩ F).
struct Search<'a> {
    sat: &'a SaturationResult,
    limits: &'a Limits,
    faces: HashMap<Vec<usize>, Localization>,
}

struct Localization {
    /// Facets containing the face.
    facets: Vec<usize>,
    /// Generators of Γ off the face.
    outer: Vec<ExponentVector>,
    /// Group generated by the generators on the face.
    inner: Option<IntegerLattice>,
    sums: HashMap<Vec<i128>, Vec<ExponentVector>>,
}

impl<'a> Search<'a> {
    fn new(sat: &'a SaturationResult, limits: &'a Limits) -> Self {
        Self {
            sat,
            limits,
            faces: HashMap::new(),
        }
    }

    fn certify(&mut self, regions: &[Region]) -> Result<bool> {
        for region in regions {
            let points = region_points(self.sat, region, self.limits.certify_box_cap)?;
            for p in &points {
                let hit = if region.face.is_empty() {
                    conductor_test(self.sat, p)
                } else {
                    self.in_local_conductor(&region.face, p)?
                };
                if hit {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn in_local_conductor(&mut self, face: &[usize], a: &ExponentVector) -> Result<bool> {
        let sat = self.sat;
        if !self.faces.contains_key(face) {
            let loc = Localization::new(sat, face)?;
            self.faces.insert(face.to_vec(), loc);
        }
        let loc = self.faces.get_mut(face).unwrap();
        for g in sat.module_generators() {
            if !loc.contains(sat, &(a + g))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl Localization {
    fn new(sat: &SaturationResult, face: &[usize]) -> Result<Self> {
        let rays = sat.lattice_rays();
        let facets: Vec<usize> = (0..sat.cone().facets().len())
            .filter(|&i| face.iter().all(|&k| sat.cone().facets()[i].dot(&rays[k]) == 0))
            .collect();
        let on_face = |g: &ExponentVector| facets.iter().all(|&i| sat.cone().facets()[i].dot(g) == 0);
        let (inner, outer): (Vec<ExponentVector>, Vec<ExponentVector>) =
            sat.base().generators().iter().cloned().partition(|g| on_face(g));
        let inner = if inner.is_empty() {
            None
        } else {
            Some(hermite_normal_form(&inner)?)
        };
        Ok(Self {
            facets,
            outer,
            inner,
            sums: HashMap::new(),
        })
    }

    fn key(&self, sat: &SaturationResult, v: &ExponentVector) -> Vec<i128> {
        self.facets.iter().map(|&i| sat.cone().facets()[i].dot(v)).collect()
    }

    /// Sums of off-face generators whose values on the face's facets equal `target`.
    fn sums_for(&mut self, sat: &SaturationResult, target: &[i128]) -> &[ExponentVector] {
        if !self.sums.contains_key(target) {
            let dim = sat.base().dim();
            let mut seen: HashSet<ExponentVector> = HashSet::new();
            let mut hits = Vec::new();
            let mut stack = vec![ExponentVector::zeros(dim)];
            seen.insert(ExponentVector::zeros(dim));
            while let Some(y) = stack.pop() {
                let k = self.key(sat, &y);
                if k == target {
                    hits.push(y.clone());
                }
                for g in &self.outer {
                    let z = &y + g;
                    let kz = self.key(sat, &z);
                    if kz.iter().zip(target).all(|(a, b)| a <= b) && seen.insert(z.clone()) {
                        stack.push(z);
                    }
                }
            }
            hits.sort_by(deglex);
            self.sums.insert(target.to_vec(), hits);
        }
        &self.sums[target]
    }

    fn contains(&mut self, sat: &SaturationResult, y: &ExponentVector) -> Result<bool> {
        let target = self.key(sat, y);
        if target.iter().any(|&v| v < 0) {
            return Ok(false);
        }
        let inner = self.inner.clone();
        let candidates = self.sums_for(sat, &target).to_vec();
        for gamma in candidates {
            let rest = y - &gamma;
            let ok = match &inner {
                None => rest.is_zero(),
                Some(l) => l.coordinates(&rest)?.is_some(),
            };
            if ok {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// `dim_k R̄/R = |Γ̄ ∖ Γ|` when finite; `None` when the conductor is not
/// primary to the maximal ideal (or the search was not certified).
pub fn quotient_length(sat: &SaturationResult, c: &ConductorResult, limits: &Limits) -> Result<Option<usize>> {
    if c.is_unit {
        return Ok(Some(0));
    }
    if !c.is_m_primary() {
        return Ok(None);
    }
    let mut holes: BTreeSet<ExponentVector> = BTreeSet::new();
    for region in &c.complement {
        for p in region_points(sat, region, limits.certify_box_cap)? {
            if !sat.base().member(&p) {
                holes.insert(p);
            }
        }
    }
    Ok(Some(holes.len()))
}

/// `(F + 1, minimal generators of {a ∈ N : a > F})` computed from the sieve.
pub fn numerical_conductor(n: &NumericalSemigroup) -> (u64, Vec<u64>) {
    let f = n.frobenius();
    let c = (f + 1) as u64;
    if c == 0 {
        return (0, vec![0]);
    }
    let top = c + n.multiplicity();
    let table = n.sieve(top);
    // Elements of the ideal are all a ≥ c; a is a minimal generator unless a − x ≥ c for some nonzero x ∈ N.
    let gens = (c..top)
        .filter(|&a| table[a as usize])
        .filter(|&a| !(1..=a - c).any(|x| table[x as usize]))
        .collect();
    (c, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalization::saturate;

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    fn evs(v: &[&[i64]]) -> Vec<ExponentVector> {
        v.iter().map(|x| ev(x)).collect()
    }

    fn setup(rows: &[&[i64]]) -> (SaturationResult, ConductorResult) {
        let s = AffineSemigroup::from_rows(rows).unwrap();
        let sat = saturate(&s, &Limits::default()).unwrap();
        let c = conductor_generators(&sat, &Limits::default()).unwrap();
        (sat, c)
    }

    #[test]
    fn s2_s3_st_t() {
        let (sat, c) = setup(&[&[2, 0], &[3, 0], &[1, 1], &[0, 1]]);
        assert!(in_conductor(&sat, &ev(&[0, 1])).unwrap());
        assert!(!in_conductor(&sat, &ev(&[1, 0])).unwrap());
        assert_eq!(c.r_generators, evs(&[&[0, 1], &[1, 1], &[2, 0], &[3, 0]]));
        assert_eq!(c.rbar_generators, evs(&[&[0, 1], &[2, 0]]));
        assert_eq!(c.witness_element, ev(&[0, 1]));
        assert!(c.equals_maximal && c.certified && !c.is_unit);
        assert!(c.is_m_primary());
        assert_eq!(quotient_length(&sat, &c, &Limits::default()).unwrap(), Some(1));
    }

    #[test]
    fn numerical_345() {
        let s = NumericalSemigroup::new(vec![3, 4, 5]).unwrap();
        let sat = saturate(&s.to_affine(), &Limits::default()).unwrap();
        let c = conductor_generators(&sat, &Limits::default()).unwrap();
        assert_eq!(c.r_generators, evs(&[&[3], &[4], &[5]]));
        assert_eq!(c.witness_element, ev(&[3]));
        assert!(c.equals_maximal && c.certified);
        assert_eq!(numerical_conductor(&s), (3, vec![3, 4, 5]));
        assert_eq!(quotient_length(&sat, &c, &Limits::default()).unwrap(), Some(2));
    }

    #[test]
    fn quadrics_two_variables() {
        let (sat, c) = setup(&[&[2, 0], &[0, 2], &[1, 1], &[2, 1], &[1, 2]]);
        assert!(!in_conductor(&sat, &ev(&[2, 0])).unwrap());
        assert_eq!(c.r_generators, evs(&[&[1, 1], &[1, 2], &[2, 1]]));
        assert_eq!(c.rbar_generators, evs(&[&[1, 1]]));
        assert!(!c.equals_maximal && c.certified);
        assert!(!c.is_m_primary());
        assert_eq!(quotient_length(&sat, &c, &Limits::default()).unwrap(), None);
    }

    #[test]
    fn normal_semigroup_has_unit_conductor() {
        let (sat, c) = setup(&[&[1, 0], &[0, 1]]);
        assert!(c.is_unit && c.certified && !c.equals_maximal);
        assert_eq!(c.r_generators, evs(&[&[0, 0]]));
        assert_eq!(conductor_element(&sat, &Limits::default()).unwrap(), ev(&[0, 0]));
    }

    #[test]
    fn numerical_conductor_small() {
        assert_eq!(numerical_conductor(&NumericalSemigroup::new(vec![2, 3]).unwrap()), (2, vec![2, 3]));
        assert_eq!(numerical_conductor(&NumericalSemigroup::new(vec![1]).unwrap()), (0, vec![0]));
        assert_eq!(
            numerical_conductor(&NumericalSemigroup::new(vec![3, 5]).unwrap()),
            (8, vec![8, 9, 10])
        );
    }

    #[test]
    fn rejects_bad_vectors() {
        let (sat, _) = setup(&[&[1, 0], &[0, 1]]);
        assert!(in_conductor(&sat, &ev(&[-1, 0])).is_err());
        assert!(in_conductor(&sat, &ev(&[1])).is_err());
    }

    #[test]
    fn uncertified_when_cap_is_tiny() {
        let s = AffineSemigroup::from_rows(&[&[2, 0], &[0, 2], &[1, 1], &[2, 1], &[1, 2]]).unwrap();
        let limits = Limits {
            certify_box_cap: 1,
            ..Limits::default()
        };
        let sat = saturate(&s, &limits).unwrap();
        let c = conductor_generators(&sat, &limits).unwrap();
        assert!(!c.certified);
        assert_eq!(c.require_certified().unwrap_err(), Error::Uncertified);

        let limits = Limits {
            conductor_degree_cap: 0,
            ..Limits::default()
        };
        assert!(conductor_element(&sat, &limits).unwrap_err().is_bound_exceeded());
    }
}
