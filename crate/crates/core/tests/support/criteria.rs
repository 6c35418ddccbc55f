//! Seeded whole-corpus checks shared by the oracle tests and the acceptance target.
//! Each returns a one-line summary on success and the first violation otherwise.

#![allow(dead_code)]

use conductor_core::conductor::{conductor_generators, numerical_conductor, ConductorResult};
use conductor_core::corpus::{entries, run_corpus};
use conductor_core::explorer::{random_instance, FuzzConfig, Mode};
use conductor_core::ideals::{is_system_of_parameters, MonomialIdeal};
use conductor_core::ikeda::{exhaustive_sop_search, universal_certificate, Verdict};
use conductor_core::normalization::saturate;
use conductor_core::oracle;
use conductor_core::{ExponentVector, Limits};

pub const NUMERICAL_SEED: u64 = 2024;
pub const AFFINE_SEED: u64 = 7;

/// Enumeration degree for comparing conductor generators: `2·|c₀| + 6`,
/// raised to the largest computed generator so that none escapes the check.
pub fn oracle_bound(c: &ConductorResult) -> i64 {
    let top = c.r_generators.iter().map(|r| r.degree()).max().unwrap_or(0);
    (2 * c.witness_element.degree() + 6).max(top)
}

pub fn corpus_exactness() -> Result<String, String> {
    let report = run_corpus(&Limits::default());
    let checks: usize = report.entries.iter().map(|e| e.checks.len()).sum();
    if report.passed {
        Ok(format!("{} entries, {checks} field checks", report.entries.len()))
    } else {
        Err(report.render_text())
    }
}

/// 100 random numerical semigroups with generators at most 30.
pub fn numerical_oracle_equivalence() -> Result<String, String> {
    let limits = Limits::default();
    let mut config = FuzzConfig::new(NUMERICAL_SEED, 100, Mode::Numerical);
    config.max_generator = 30;
    for i in 0..100 {
        let s = random_instance(&config, i).map_err(|e| e.to_string())?;
        let n = s.to_numerical().map_err(|e| e.to_string())?;
        let gens = n.generators();
        let f = oracle::frobenius(gens, gens[0] * gens[gens.len() - 1]);
        if n.frobenius() != f {
            return Err(format!("instance {i} {gens:?}: frobenius {} vs sieve {f}", n.frobenius()));
        }
        let sat = saturate(&s, &limits).map_err(|e| e.to_string())?;
        let c = conductor_generators(&sat, &limits).map_err(|e| e.to_string())?;
        let (start, expected) = numerical_conductor(&n);
        let got: Vec<u64> = c.r_generators.iter().map(|v| v[0] as u64).collect();
        let agrees = if start == 0 { c.is_unit } else { got == expected };
        if !c.certified || !agrees {
            return Err(format!("instance {i} {gens:?}: conductor {got:?} vs sieve {expected:?}"));
        }
    }
    Ok("100 instances, 0 mismatches".into())
}

/// 50 random two-dimensional semigroups with coordinates at most 6.
pub fn affine_oracle_equivalence() -> Result<String, String> {
    let limits = Limits::default();
    let config = FuzzConfig::new(AFFINE_SEED, 50, Mode::Affine(2));
    let mut uncertified = 0;
    for i in 0..50 {
        let s = random_instance(&config, i).map_err(|e| e.to_string())?;
        let sat = saturate(&s, &limits).map_err(|e| e.to_string())?;
        let c = conductor_generators(&sat, &limits).map_err(|e| e.to_string())?;
        if !c.certified {
            uncertified += 1;
            continue;
        }
        let bound = oracle_bound(&c);
        let mg = oracle::module_generators(&s, bound).map_err(|e| e.to_string())?;
        if mg != sat.module_generators() {
            return Err(format!("instance {i} {:?}: module generators {:?} vs oracle {mg:?}", s.generators(), sat.module_generators()));
        }
        let r = oracle::conductor_generators(&s, &mg, bound);
        if r != c.r_generators {
            return Err(format!("instance {i} {:?}: conductor {:?} vs oracle {r:?}", s.generators(), c.r_generators));
        }
    }
    if uncertified > 0 {
        return Err(format!("{uncertified} of 50 instances were not certified"));
    }
    Ok("50 instances, 0 mismatches".into())
}

/// Largest number of entry multisets enumerated in full per instance.
const FULL_ENUMERATION_CAP: u128 = 200_000;

fn multisets(n: usize, k: usize) -> u128 {
    (0..k as u128).fold(1, |acc, i| acc * (n as u128 + i) / (i + 1))
}

/// Calls `f` on every multiset of `k` indices below `n`, in lexicographic order.
fn for_each_multiset(n: usize, k: usize, chosen: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> Result<(), String>) -> Result<(), String> {
    if chosen.len() == k {
        return f(chosen);
    }
    let from = chosen.last().copied().unwrap_or(0);
    for i in from..n {
        chosen.push(i);
        for_each_multiset(n, k, chosen, f)?;
        chosen.pop();
    }
    Ok(())
}

/// No monomial system of parameters with entries of degree ≤ 6 contains 𝔠
/// for any corpus instance carrying the counting certificate.
///
/// Entries come from naive enumeration of Γ and containment is decided by
/// naive membership. When the multisets of `dim` entries are too many, only
/// entries dividing some R-generator are enumerated: any containing system
/// keeps containing 𝔠 after dropping the others, so some multiset of at most
/// `dim` dividing entries already covers every R-generator.
pub fn certificate_soundness() -> Result<String, String> {
    let limits = Limits::default();
    let mut instances = 0;
    let mut systems = 0u64;
    let mut covers_tried = 0u64;
    for entry in entries() {
        let s = &entry.semigroup;
        let sat = saturate(s, &limits).map_err(|e| e.to_string())?;
        let c = conductor_generators(&sat, &limits).map_err(|e| e.to_string())?;
        let cert = universal_certificate(&sat, &c, &limits).map_err(|e| e.to_string())?;
        if cert.verdict != Verdict::CertifiedUniversal {
            continue;
        }
        let gens = s.generators();
        let d = s.dimension();
        let divides = |x: &ExponentVector, r: &ExponentVector| {
            let q = r - x;
            q.is_nonnegative() && oracle::naive_member(gens, &q)
        };
        let covers = |xs: &[&ExponentVector]| c.r_generators.iter().all(|r| xs.iter().any(|x| divides(x, r)));
        let pool: Vec<ExponentVector> = oracle::semigroup_points(gens, s.dim(), 6)
            .into_iter()
            .filter(|v| !v.is_zero())
            .collect();

        if multisets(pool.len(), d) <= FULL_ENUMERATION_CAP {
            for_each_multiset(pool.len(), d, &mut Vec::new(), &mut |idx| {
                let xs: Vec<ExponentVector> = idx.iter().map(|&i| pool[i].clone()).collect();
                if !is_system_of_parameters(s, &xs).map_err(|e| e.to_string())? {
                    return Ok(());
                }
                systems += 1;
                if covers(&xs.iter().collect::<Vec<_>>()) {
                    return Err(format!("{}: 𝔠 ⊆ ({xs:?})", entry.id));
                }
                Ok(())
            })?;
        } else {
            let dividing: Vec<&ExponentVector> = pool
                .iter()
                .filter(|x| c.r_generators.iter().any(|r| divides(x, r)))
                .collect();
            for k in 1..=d {
                for_each_multiset(dividing.len(), k, &mut Vec::new(), &mut |idx| {
                    covers_tried += 1;
                    let xs: Vec<&ExponentVector> = idx.iter().map(|&i| dividing[i]).collect();
                    if covers(&xs) {
                        return Err(format!("{}: {xs:?} divides every R-generator", entry.id));
                    }
                    Ok(())
                })?;
            }
        }

        let search = exhaustive_sop_search(s, &c, 6).map_err(|e| e.to_string())?;
        if !search.containments.is_empty() {
            return Err(format!("{}: search reports containments {:?}", entry.id, search.containments));
        }
        instances += 1;
    }
    Ok(format!(
        "{instances} certified instances, {systems} parameter systems and {covers_tried} divisor multisets checked, 0 containments"
    ))
}

/// 𝔠 ⊄ (v) for every nonzero v ∈ Γ of degree ≤ 6, on every non-normal corpus instance.
pub fn principal_noncontainment() -> Result<String, String> {
    let limits = Limits::default();
    let mut pairs = 0;
    for entry in entries() {
        let s = &entry.semigroup;
        let sat = saturate(s, &limits).map_err(|e| e.to_string())?;
        if sat.is_normal() {
            continue;
        }
        let c = conductor_generators(&sat, &limits).map_err(|e| e.to_string())?;
        for v in oracle::semigroup_points(s.generators(), s.dim(), 6) {
            if v.is_zero() {
                continue;
            }
            let principal = MonomialIdeal::new(s, vec![v.clone()]).map_err(|e| e.to_string())?;
            let mut all = true;
            for r in &c.r_generators {
                all &= principal.contains(r).map_err(|e| e.to_string())?;
            }
            if all {
                return Err(format!("{}: conductor inside ({v})", entry.id));
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} principal ideals checked, 0 containments"))
}
