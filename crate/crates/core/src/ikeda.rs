//! Non-containment of the conductor in parameter ideals.
//!
//! Write 𝔪 = 𝔠 + ⟨E⟩ with `E` the minimal generators of Γ outside 𝔠. If
//! 𝔠 ⊆ (x_1, …, x_d) for a system of parameters, then 𝔪 is generated by the
//! `x_i` together with `E`, so μ(𝔪) ≤ d + |E|. When μ(𝔪) > d + |E| no system
//! of parameters, monomial or not, can contain 𝔠.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::conductor::{conductor_test, ConductorResult, GradedLevels};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::ideals::{ideal_sum, is_system_of_parameters, MonomialIdeal};
use crate::normalization::SaturationResult;
use crate::semigroup::AffineSemigroup;
use crate::vector::ExponentVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// μ(𝔪) > dim + |E|: 𝔠 lies in no parameter ideal.
    CertifiedUniversal,
    /// The count does not decide; see the hypothesis notes.
    Inconclusive,
    /// 𝔠 is the unit ideal.
    Normal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IkedaCertificate {
    pub mu: usize,
    pub dim: usize,
    pub excess: Vec<ExponentVector>,
    pub verdict: Verdict,
    pub oneless_witness: Option<ExponentVector>,
    /// Checkable hypotheses that hold, for verdicts the count cannot settle.
    pub notes: Vec<String>,
}

fn conductor_ideal(c: &ConductorResult) -> Result<MonomialIdeal> {
    MonomialIdeal::new(&c.semigroup, c.r_generators.clone())
}

/// `E`: minimal generators of Γ not in 𝔠. Checks 𝔪 = 𝔠 + ⟨E⟩ before returning.
pub fn excess_decomposition(sat: &SaturationResult, c: &ConductorResult) -> Result<Vec<ExponentVector>> {
    c.require_certified()?;
    if c.is_unit {
        return Err(Error::UnitConductor);
    }
    let s = sat.base();
    let excess: Vec<ExponentVector> = s
        .minimal_generators()
        .into_iter()
        .filter(|g| !conductor_test(sat, g))
        .collect();
    let m = MonomialIdeal::maximal(s);
    let sum = ideal_sum(&conductor_ideal(c)?, &MonomialIdeal::new(s, excess.clone())?)?;
    if sum != m {
        return Err(Error::Internal("𝔠 + ⟨E⟩ differs from the maximal ideal".into()));
    }
    Ok(excess)
}

/// Some `y` with 𝔪 = 𝔠 + (y), if one exists among monomials of degree at
/// most `limits.witness_degree_cap`.
pub fn oneless_witness(sat: &SaturationResult, c: &ConductorResult, limits: &Limits) -> Result<Option<ExponentVector>> {
    c.require_certified()?;
    if c.is_unit {
        return Ok(None);
    }
    let s = sat.base();
    let excess = excess_decomposition(sat, c)?;
    let m = MonomialIdeal::maximal(s);
    let cond = conductor_ideal(c)?;
    let works = |y: &ExponentVector| -> Result<bool> { Ok(ideal_sum(&cond, &MonomialIdeal::new(s, vec![y.clone()])?)? == m) };
    match excess.len() {
        0 => Ok(m.generators().first().cloned()),
        1 => Ok(works(&excess[0])?.then(|| excess[0].clone())),
        _ => {
            let gens = s.minimal_generators();
            let mut levels = GradedLevels::new(&gens, s.dim());
            for t in 1..=limits.witness_degree_cap {
                for y in levels.level(t).to_vec() {
                    if works(&y)? {
                        return Ok(Some(y));
                    }
                }
            }
            Ok(None)
        }
    }
}

pub fn universal_certificate(sat: &SaturationResult, c: &ConductorResult, limits: &Limits) -> Result<IkedaCertificate> {
    c.require_certified()?;
    let s = sat.base();
    let mu = s.minimal_generators().len();
    let dim = s.dimension();
    if c.is_unit {
        return Ok(IkedaCertificate {
            mu,
            dim,
            excess: Vec::new(),
            verdict: Verdict::Normal,
            oneless_witness: None,
            notes: vec!["the conductor is the unit ideal".into()],
        });
    }
    let excess = excess_decomposition(sat, c)?;
    let oneless = oneless_witness(sat, c, limits)?;
    let verdict = if mu > dim + excess.len() {
        Verdict::CertifiedUniversal
    } else {
        Verdict::Inconclusive
    };
    let mut notes = Vec::new();
    if verdict == Verdict::Inconclusive {
        if s.dim() == 1 {
            let n = s.to_numerical()?;
            notes.push("one-dimensional domain: depth 1".into());
            if n.is_symmetric() {
                notes.push(
                    "symmetric numerical semigroup: the ring is Gorenstein, so the quasi-Gorenstein criterion applies"
                        .into(),
                );
            } else {
                notes.push("numerical semigroup is not symmetric: the ring is not Gorenstein".into());
            }
        }
        match &oneless {
            Some(y) => notes.push(format!("𝔪 = 𝔠 + yR holds with y = {y}")),
            None => notes.push("no single y with 𝔪 = 𝔠 + yR was found".into()),
        }
    }
    Ok(IkedaCertificate {
        mu,
        dim,
        excess,
        verdict,
        oneless_witness: oneless,
        notes,
    })
}

/// Every R-generator of 𝔠 lies in the ideal generated by `xs`.
pub fn check_sop_containment(s: &AffineSemigroup, c: &ConductorResult, xs: &[ExponentVector]) -> Result<bool> {
    c.require_certified()?;
    if !is_system_of_parameters(s, xs)? {
        let listed: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
        return Err(Error::NotSystemOfParameters(listed.join(", ")));
    }
    let ideal = MonomialIdeal::new(s, xs.to_vec())?;
    for r in &c.r_generators {
        if !ideal.contains(r)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicationCheck {
    pub j: ExponentVector,
    pub g: ExponentVector,
    pub product: ExponentVector,
    /// Minimal generators of Γ summing to `product`.
    pub factors: Vec<ExponentVector>,
}

/// Checks `j + g ∈ Γ` for each `j ∈ J` and nonzero module generator `g`,
/// i.e. `J·R̄ ⊆ R`, and records a factorization of each product.
pub fn verify_multiplication_table(sat: &SaturationResult, js: &[ExponentVector]) -> Result<Vec<MultiplicationCheck>> {
    let s = sat.base();
    let mut out = Vec::new();
    for j in js {
        for g in sat.module_generators().iter().filter(|g| !g.is_zero()) {
            let product = j + g;
            let factors = s.factorization(&product).ok_or_else(|| Error::MultiplicationFailed {
                j: j.clone(),
                g: g.clone(),
                product: product.clone(),
            })?;
            out.push(MultiplicationCheck {
                j: j.clone(),
                g: g.clone(),
                product,
                factors,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SopSearch {
    pub degree_cap: i64,
    /// Nonzero elements of Γ with degree at most the cap.
    pub pool: usize,
    /// Sets of at most `dim` elements covering every R-generator of 𝔠.
    pub covers: usize,
    /// Parameter systems extending some cover that were checked.
    pub checked: usize,
    /// Parameter systems whose ideal contains 𝔠.
    pub containments: Vec<Vec<ExponentVector>>,
}

/// Every monomial system of parameters with entries of degree at most
/// `degree_cap`, tested for 𝔠 ⊆ (xs).
///
/// A containing system must include, for each R-generator `r` of 𝔠, an entry
/// dividing `r`; so covers of the R-generators by at most `dim` divisors are
/// enumerated first and then completed in every way that yields a system of
/// parameters. Entries that agree on which faces of the cone they lie on are
/// interchangeable for the parameter test, so completions range over one
/// representative per face pattern.
pub fn exhaustive_sop_search(s: &AffineSemigroup, c: &ConductorResult, degree_cap: i64) -> Result<SopSearch> {
    c.require_certified()?;
    let d = s.dimension();
    let gens = s.minimal_generators();
    let mut levels = GradedLevels::new(&gens, s.dim());
    let mut pool: Vec<ExponentVector> = Vec::new();
    for t in 1..=degree_cap {
        pool.extend(levels.level(t).iter().cloned());
    }

    let divisors: Vec<Vec<usize>> = c
        .r_generators
        .iter()
        .map(|r| (0..pool.len()).filter(|&i| s.member(&(r - &pool[i]))).collect())
        .collect();
    let mut covers: BTreeSet<Vec<usize>> = BTreeSet::new();
    find_covers(s, &pool, &c.r_generators, &divisors, d, &mut Vec::new(), &mut covers);

    let cone = s.cone()?;
    let faces: Vec<Vec<bool>> = gens
        .iter()
        .map(|g| cone.facets().iter().map(|f| f.dot(g) == 0).collect())
        .collect();
    let signature = |w: &ExponentVector| -> Vec<bool> {
        let zeros: Vec<bool> = cone.facets().iter().map(|f| f.dot(w) == 0).collect();
        faces
            .iter()
            .map(|face| face.iter().zip(&zeros).all(|(&fg, &fw)| !fg || fw))
            .collect()
    };
    let mut by_signature: BTreeMap<Vec<bool>, usize> = BTreeMap::new();
    for (i, w) in pool.iter().enumerate() {
        by_signature.entry(signature(w)).or_insert(i);
    }
    let representatives: Vec<usize> = by_signature.values().copied().collect();

    let mut checked = 0;
    let mut found: BTreeSet<Vec<ExponentVector>> = BTreeSet::new();
    for cover in &covers {
        let mut extra = Vec::new();
        for_each_multiset(&representatives, d - cover.len(), &mut extra, &mut |extra| {
            let mut xs: Vec<ExponentVector> = cover.iter().chain(extra.iter()).map(|&i| pool[i].clone()).collect();
            xs.sort();
            if !is_system_of_parameters(s, &xs)? {
                return Ok(());
            }
            checked += 1;
            if check_sop_containment(s, c, &xs)? {
                found.insert(xs);
            }
            Ok(())
        })?;
    }
    Ok(SopSearch {
        degree_cap,
        pool: pool.len(),
        covers: covers.len(),
        checked,
        containments: found.into_iter().collect(),
    })
}

fn find_covers(
    s: &AffineSemigroup,
    pool: &[ExponentVector],
    targets: &[ExponentVector],
    divisors: &[Vec<usize>],
    limit: usize,
    chosen: &mut Vec<usize>,
    out: &mut BTreeSet<Vec<usize>>,
) {
    let uncovered = targets
        .iter()
        .position(|r| !chosen.iter().any(|&i| s.member(&(r - &pool[i]))));
    let Some(first) = uncovered else {
        let mut key = chosen.clone();
        key.sort_unstable();
        key.dedup();
        out.insert(key);
        return;
    };
    if chosen.len() == limit {
        return;
    }
    for &i in &divisors[first] {
        chosen.push(i);
        find_covers(s, pool, targets, divisors, limit, chosen, out);
        chosen.pop();
    }
}

fn for_each_multiset(
    items: &[usize],
    k: usize,
    current: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if k == 0 {
        return visit(current);
    }
    for (pos, &i) in items.iter().enumerate() {
        current.push(i);
        for_each_multiset(&items[pos..], k - 1, current, visit)?;
        current.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conductor::conductor_generators;
    use crate::normalization::saturate;
    use crate::predicates::{pinched_veronese, xn_family, PinchedVeroneseSpec};

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    fn setup(s: AffineSemigroup) -> (SaturationResult, ConductorResult) {
        let sat = saturate(&s, &Limits::default()).unwrap();
        let c = conductor_generators(&sat, &Limits::default()).unwrap();
        (sat, c)
    }

    fn rows(r: &[&[i64]]) -> AffineSemigroup {
        AffineSemigroup::from_rows(r).unwrap()
    }

    #[test]
    fn quadrics_two_variables() {
        let (sat, c) = setup(rows(&[&[2, 0], &[0, 2], &[1, 1], &[2, 1], &[1, 2]]));
        let cert = universal_certificate(&sat, &c, &Limits::default()).unwrap();
        assert_eq!(cert.mu, 5);
        assert_eq!(cert.excess, vec![ev(&[0, 2]), ev(&[2, 0])]);
        assert_eq!(cert.verdict, Verdict::CertifiedUniversal);
        assert_eq!(cert.oneless_witness, None);
    }

    #[test]
    fn s2_s3_st_t() {
        let (sat, c) = setup(rows(&[&[2, 0], &[3, 0], &[1, 1], &[0, 1]]));
        assert!(excess_decomposition(&sat, &c).unwrap().is_empty());
        let s = sat.base();
        assert!(!check_sop_containment(s, &c, &[ev(&[2, 0]), ev(&[0, 1])]).unwrap());
        assert!(check_sop_containment(s, &c, &[ev(&[2, 0])]).is_err());
        let table = verify_multiplication_table(&sat, &c.r_generators).unwrap();
        assert_eq!(table.len(), 4);
        assert!(verify_multiplication_table(&sat, &[]).unwrap().is_empty());
        assert_eq!(
            verify_multiplication_table(&sat, &[ev(&[2, 0]), ev(&[0, 0])]).unwrap_err(),
            Error::MultiplicationFailed {
                j: ev(&[0, 0]),
                g: ev(&[1, 0]),
                product: ev(&[1, 0])
            }
        );
    }

    #[test]
    fn numerical_345_sops() {
        let (sat, c) = setup(rows(&[&[3], &[4], &[5]]));
        let s = sat.base();
        assert!(!check_sop_containment(s, &c, &[ev(&[3])]).unwrap());
        assert!(!check_sop_containment(s, &c, &[ev(&[4])]).unwrap());
        let search = exhaustive_sop_search(s, &c, 6).unwrap();
        assert!(search.containments.is_empty());
        let cert = universal_certificate(&sat, &c, &Limits::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::CertifiedUniversal);
        assert_eq!(cert.oneless_witness, Some(ev(&[3])));
    }

    #[test]
    fn cubics_oneless() {
        let s = pinched_veronese(&PinchedVeroneseSpec {
            n: 3,
            d: 3,
            removed: ev(&[2, 1, 0]),
        })
        .unwrap();
        let (sat, c) = setup(s);
        assert_eq!(oneless_witness(&sat, &c, &Limits::default()).unwrap(), Some(ev(&[3, 0, 0])));
    }

    #[test]
    fn xn_family_two_is_inconclusive() {
        let (sat, c) = setup(xn_family(2).unwrap());
        let cert = universal_certificate(&sat, &c, &Limits::default()).unwrap();
        assert_eq!((cert.mu, cert.dim, cert.excess.len()), (3, 2, 1));
        assert_eq!(cert.verdict, Verdict::Inconclusive);
        assert_eq!(cert.oneless_witness, Some(ev(&[0, 2])));
        assert!(cert.notes.iter().any(|n| n.contains("yR")));
    }

    #[test]
    fn gorenstein_note_for_symmetric_numerical() {
        // ⟨2,3⟩: 𝔠 = 𝔪 and μ = 2 > 1. ⟨2,5⟩: E = {2} and μ = 2 = 1 + 1.
        let (sat, c) = setup(rows(&[&[2], &[3]]));
        let cert = universal_certificate(&sat, &c, &Limits::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::CertifiedUniversal);
        let (sat, c) = setup(rows(&[&[2], &[5]]));
        let cert = universal_certificate(&sat, &c, &Limits::default()).unwrap();
        assert_eq!(cert.excess, vec![ev(&[2])]);
        assert_eq!(cert.verdict, Verdict::Inconclusive);
        assert!(cert.notes.iter().any(|n| n.contains("quasi-Gorenstein criterion applies")));
    }

    #[test]
    fn normal_ring() {
        let (sat, c) = setup(rows(&[&[1, 0], &[0, 1]]));
        let cert = universal_certificate(&sat, &c, &Limits::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::Normal);
        assert_eq!(excess_decomposition(&sat, &c).unwrap_err(), Error::UnitConductor);
    }
}
