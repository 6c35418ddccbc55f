//! Property suites shared by the core test target and the acceptance target.
//! Each suite runs `cases` random instances and returns the first failure.

#![allow(dead_code)]

use conductor_core::conductor::{conductor_generators, in_conductor, numerical_conductor};
use conductor_core::cone::zonotope_lattice_points;
use conductor_core::ideals::{ideal_subset, ideal_sum, MonomialIdeal};
use conductor_core::normalization::saturate;
use conductor_core::oracle;
use conductor_core::semigroup::{AffineSemigroup, NumericalSemigroup};
use conductor_core::{ExponentVector, Limits};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use super::criteria::oracle_bound;

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        max_global_rejects: 1_000_000,
        failure_persistence: None,
        ..Config::default()
    })
}

fn finish(name: &str, r: Result<(), proptest::test_runner::TestError<impl std::fmt::Debug>>) -> Result<(), String> {
    r.map_err(|e| format!("{name}: {e}"))
}

/// Pointed affine semigroups of full rank in ℕ^dim with coordinates at most `max`.
pub fn semigroup(dim: usize, max: i64) -> impl Strategy<Value = AffineSemigroup> {
    prop::collection::vec(prop::collection::vec(0..=max, dim), dim..=dim + 2).prop_filter_map(
        "zero generator or rank deficient",
        move |rows| {
            let gens: Vec<ExponentVector> = rows.into_iter().map(ExponentVector::new).collect();
            if gens.iter().any(ExponentVector::is_zero) {
                return None;
            }
            let s = AffineSemigroup::new(dim, gens).ok()?;
            (s.dimension() == dim).then_some(s)
        },
    )
}

fn small_semigroup() -> impl Strategy<Value = AffineSemigroup> {
    prop_oneof![semigroup(1, 9), semigroup(2, 4), semigroup(3, 2)]
}

fn combination(s: &AffineSemigroup, coeffs: &[i64]) -> ExponentVector {
    s.generators()
        .iter()
        .zip(coeffs)
        .fold(ExponentVector::zeros(s.dim()), |acc, (g, &c)| &acc + &g.scale(c))
}

/// A semigroup with some of its elements, as coefficient vectors over the generators.
fn semigroup_with_elements(n: usize) -> impl Strategy<Value = (AffineSemigroup, Vec<ExponentVector>)> {
    small_semigroup().prop_flat_map(move |s| {
        let k = s.generators().len();
        (Just(s), prop::collection::vec(prop::collection::vec(0i64..3, k), n))
    })
    .prop_map(|(s, cs)| {
        let elems = cs.iter().map(|c| combination(&s, c)).collect();
        (s, elems)
    })
}

/// Γ contains its generators, is closed under addition, and agrees with an
/// independent dynamic-programming membership test.
pub fn semigroup_closure(cases: u32) -> Result<(), String> {
    let strategy = semigroup_with_elements(2).prop_flat_map(|(s, e)| {
        let dim = s.dim();
        (Just(s), Just(e), prop::collection::vec(0i64..8, dim))
    });
    finish(
        "semigroup closure",
        runner(cases).run(&strategy, |(s, elems, probe)| {
            for g in s.generators() {
                prop_assert!(s.contains(g).unwrap());
            }
            prop_assert!(s.contains(&elems[0]).unwrap());
            prop_assert!(s.contains(&elems[1]).unwrap());
            prop_assert!(s.contains(&(&elems[0] + &elems[1])).unwrap());
            let p = ExponentVector::new(probe);
            prop_assert_eq!(s.contains(&p).unwrap(), oracle::naive_member(s.generators(), &p));
            Ok(())
        }),
    )
}

/// Sums of monomial ideals are commutative, associative and idempotent, and
/// containment is a partial order compatible with sums.
pub fn ideal_laws(cases: u32) -> Result<(), String> {
    let strategy = semigroup_with_elements(7);
    finish(
        "ideal laws",
        runner(cases).run(&strategy, |(s, e)| {
            let i = MonomialIdeal::new(&s, e[0..2].to_vec()).unwrap();
            let j = MonomialIdeal::new(&s, e[2..4].to_vec()).unwrap();
            let k = MonomialIdeal::new(&s, e[4..6].to_vec()).unwrap();
            let ij = ideal_sum(&i, &j).unwrap();
            prop_assert_eq!(&ij, &ideal_sum(&j, &i).unwrap());
            prop_assert_eq!(
                ideal_sum(&ij, &k).unwrap(),
                ideal_sum(&i, &ideal_sum(&j, &k).unwrap()).unwrap()
            );
            prop_assert_eq!(&ideal_sum(&i, &i).unwrap(), &i);
            prop_assert!(ideal_subset(&i, &ij).unwrap());
            prop_assert!(ideal_subset(&j, &ij).unwrap());
            prop_assert!(ideal_subset(&i, &i).unwrap());
            if ideal_subset(&i, &j).unwrap() && ideal_subset(&j, &k).unwrap() {
                prop_assert!(ideal_subset(&i, &k).unwrap());
            }
            if ideal_subset(&i, &j).unwrap() && ideal_subset(&j, &i).unwrap() {
                prop_assert_eq!(&i, &j);
            }
            let v = &e[6];
            prop_assert_eq!(
                ij.contains(v).unwrap(),
                i.contains(v).unwrap() || j.contains(v).unwrap()
            );
            prop_assert!(ideal_subset(&i, &MonomialIdeal::maximal(&s)).unwrap() || i.is_unit());
            Ok(())
        }),
    )
}

/// Saturating the Hilbert basis of Γ̄ gives Γ̄ back, and it is normal.
pub fn saturation_idempotence(cases: u32) -> Result<(), String> {
    let limits = Limits::default();
    finish(
        "saturation idempotence",
        runner(cases).run(&small_semigroup(), |s| {
            let sat = saturate(&s, &limits).unwrap();
            for g in s.generators() {
                prop_assert!(sat.contains(g).unwrap());
            }
            let t = AffineSemigroup::new(s.dim(), sat.hilbert_basis().to_vec()).unwrap();
            let again = saturate(&t, &limits).unwrap();
            prop_assert!(again.is_normal());
            prop_assert_eq!(again.hilbert_basis(), sat.hilbert_basis());
            prop_assert_eq!(t.minimal_generators(), sat.hilbert_basis().to_vec());
            Ok(())
        }),
    )
}

/// Γ̄ = ∪ (g + Γ) over the module generators, which are minimal and agree
/// with bounded enumeration.
pub fn saturation_reconstruction(cases: u32) -> Result<(), String> {
    let limits = Limits::default();
    finish(
        "saturation reconstruction",
        runner(cases).run(&small_semigroup(), |s| {
            let sat = saturate(&s, &limits).unwrap();
            let mg = sat.module_generators();
            prop_assert!(mg[0].is_zero());
            let bound = mg.iter().map(ExponentVector::degree).max().unwrap() + 3;
            for x in oracle::saturation_points(&s, bound).unwrap() {
                prop_assert!(sat.covered_by_module_generators(&x), "{} not covered", x);
            }
            for (a, g) in mg.iter().enumerate() {
                prop_assert!(sat.contains(g).unwrap());
                for (b, h) in mg.iter().enumerate() {
                    prop_assert!(a == b || !oracle::naive_member(s.generators(), &(g - h)));
                }
            }
            prop_assert_eq!(oracle::module_generators(&s, bound).unwrap(), mg.to_vec());
            Ok(())
        }),
    )
}

/// Conductor generators agree with brute force on Γ-points up to degree
/// `2·|c₀| + 6`, and the conductor is closed under adding generators.
pub fn conductor_oracle(cases: u32) -> Result<(), String> {
    let limits = Limits::default();
    finish(
        "conductor oracle",
        runner(cases).run(&prop_oneof![semigroup(1, 9), semigroup(2, 4)], |s| {
            let sat = saturate(&s, &limits).unwrap();
            let c = conductor_generators(&sat, &limits).unwrap();
            prop_assume!(c.certified);
            let bound = oracle_bound(&c);
            let mg = oracle::module_generators(&s, sat.module_generators().iter().map(|g| g.degree()).max().unwrap() + 2)
                .unwrap();
            prop_assert_eq!(oracle::conductor_generators(&s, &mg, bound), c.r_generators.clone());
            for r in &c.r_generators {
                prop_assert!(in_conductor(&sat, r).unwrap());
                for g in s.generators() {
                    prop_assert!(in_conductor(&sat, &(r + g)).unwrap());
                }
            }
            Ok(())
        }),
    )
}

/// Numerical invariants against the sieve: Frobenius number, genus,
/// symmetry and the conductor on the one-dimensional encoding.
pub fn numerical_invariants(cases: u32) -> Result<(), String> {
    let limits = Limits::default();
    let strategy = prop::collection::vec(1u64..=30, 1..=5)
        .prop_filter_map("gcd ≠ 1", |gens| NumericalSemigroup::new(gens).ok());
    finish(
        "numerical invariants",
        runner(cases).run(&strategy, |n| {
            let gens = n.generators();
            let bound = gens[0] * gens[gens.len() - 1];
            let f = n.frobenius();
            prop_assert_eq!(f, oracle::frobenius(gens, bound));
            prop_assert!(f < n.frobenius_bound() as i64 || f < 0);
            prop_assert_eq!(n.genus(), n.gaps().len());
            prop_assert_eq!(n.is_symmetric(), f < 0 || 2 * n.genus() as i64 == f + 1);
            let (c, cgens) = numerical_conductor(&n);
            prop_assert_eq!(c as i64, f + 1);
            let sat = saturate(&n.to_affine(), &limits).unwrap();
            let r = conductor_generators(&sat, &limits).unwrap();
            prop_assert!(r.certified);
            let affine: Vec<u64> = r.r_generators.iter().map(|v| v[0] as u64).collect();
            if c == 0 {
                prop_assert!(r.is_unit);
            } else {
                prop_assert_eq!(affine, cgens);
            }
            Ok(())
        }),
    )
}

/// Exact membership of an integer point in the convex hull of `vertices` (plane only).
fn in_hull_2d(vertices: &[ExponentVector], p: &ExponentVector) -> bool {
    let cross = |o: &ExponentVector, a: &ExponentVector, b: &ExponentVector| -> i128 {
        ((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])) as i128
    };
    let on_segment = |a: &ExponentVector, b: &ExponentVector| {
        cross(a, b, p) == 0
            && p[0] >= a[0].min(b[0])
            && p[0] <= a[0].max(b[0])
            && p[1] >= a[1].min(b[1])
            && p[1] <= a[1].max(b[1])
    };
    let n = vertices.len();
    for i in 0..n {
        for j in i..n {
            if on_segment(&vertices[i], &vertices[j]) {
                return true;
            }
            for k in j + 1..n {
                let (a, b, c) = (&vertices[i], &vertices[j], &vertices[k]);
                let area = cross(a, b, c);
                if area == 0 {
                    continue;
                }
                let s = [cross(a, b, p), cross(b, c, p), cross(c, a, p)];
                if s.iter().all(|&x| x * area >= 0) {
                    return true;
                }
            }
        }
    }
    false
}

/// Zonotope lattice points agree with a convex-hull search over all subset sums.
pub fn zonotope_points(cases: u32) -> Result<(), String> {
    let strategy = prop::collection::vec(prop::collection::vec(-3i64..=5, 2), 1..=3)
        .prop_filter("zero ray", |rays| rays.iter().all(|r| r.iter().any(|&c| c != 0)));
    finish(
        "zonotope points",
        runner(cases).run(&strategy, |rows| {
            let rays: Vec<ExponentVector> = rows.into_iter().map(ExponentVector::new).collect();
            let mut vertices = vec![ExponentVector::zeros(2)];
            for r in &rays {
                let shifted: Vec<ExponentVector> = vertices.iter().map(|v| v + r).collect();
                vertices.extend(shifted);
            }
            let lo: Vec<i64> = (0..2).map(|j| vertices.iter().map(|v| v[j]).min().unwrap()).collect();
            let hi: Vec<i64> = (0..2).map(|j| vertices.iter().map(|v| v[j]).max().unwrap()).collect();
            let mut naive = Vec::new();
            for x in lo[0]..=hi[0] {
                for y in lo[1]..=hi[1] {
                    let p = ExponentVector::new(vec![x, y]);
                    if in_hull_2d(&vertices, &p) {
                        naive.push(p);
                    }
                }
            }
            prop_assert_eq!(zonotope_lattice_points(&rays, 10_000).unwrap(), naive);
            Ok(())
        }),
    )
}
