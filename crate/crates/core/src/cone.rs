//! Rational polyhedral cones generated by integer vectors.
//!
//! Facets are found with the double description method applied to the dual
//! cone `{ℓ : ℓ·g ≥ 0 for all generators g}`. When the generators do not span
//! the ambient space, the computation runs on the pivot coordinates of the
//! Hermite basis of their lattice (a coordinate projection that is injective
//! on the span) and the orthogonal complement is recorded as equations.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::lattice::hermite_normal_form;
use crate::linalg::{self, big_row, dot, inverse, kernel_basis, primitive, rank, rat_row, Rat};
use crate::vector::ExponentVector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalCone {
    dim: usize,
    rank: usize,
    /// Primitive integer vectors on the extreme rays, lexicographically sorted.
    rays: Vec<ExponentVector>,
    /// Primitive inner facet normals ℓ with ℓ(v) ≥ 0 on the cone, lexicographically sorted.
    facets: Vec<ExponentVector>,
    /// Primitive normals of the orthogonal complement of the linear span.
    equations: Vec<ExponentVector>,
}

impl RationalCone {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the linear span of the cone.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[ExponentVector] {
        &self.rays
    }

    pub fn facets(&self) -> &[ExponentVector] {
        &self.facets
    }

    pub fn equations(&self) -> &[ExponentVector] {
        &self.equations
    }

    /// Facet values `ℓ_i(v)` for every facet.
    pub fn facet_values(&self, v: &ExponentVector) -> Vec<i128> {
        self.facets.iter().map(|f| f.dot(v)).collect()
    }

    pub(crate) fn in_span(&self, v: &ExponentVector) -> bool {
        self.equations.iter().all(|e| e.dot(v) == 0)
    }

    /// Membership without the dimension check.
    pub(crate) fn holds(&self, v: &ExponentVector) -> bool {
        self.in_span(v) && self.facets.iter().all(|f| f.dot(v) >= 0)
    }
}

/// Cone spanned by `gens` with exact facet normals.
pub fn cone_from_generators(gens: &[ExponentVector]) -> Result<RationalCone> {
    let first = gens.first().ok_or(Error::Empty("cone generators"))?;
    let d = first.dim();
    for g in gens {
        check_dim(d, g)?;
    }
    let gens: Vec<&ExponentVector> = gens.iter().filter(|g| !g.is_zero()).collect();
    if gens.is_empty() {
        return Err(Error::Empty("nonzero cone generators"));
    }
    let owned: Vec<ExponentVector> = gens.iter().map(|g| (*g).clone()).collect();
    let lattice = hermite_normal_form(&owned)?;
    let pivots = lattice.pivots().to_vec();
    let r = pivots.len();
    let project = |g: &ExponentVector| -> Vec<BigInt> { pivots.iter().map(|&p| BigInt::from(g[p])).collect() };
    let rows: Vec<Vec<BigInt>> = gens.iter().map(|g| project(g)).collect();

    let dual_rays = dual_extreme_rays(&rows, r);
    if rank(&dual_rays) < r {
        return Err(Error::NotPointed);
    }

    let mut facets = Vec::with_capacity(dual_rays.len());
    for ray in &dual_rays {
        let mut full = vec![BigInt::zero(); d];
        for (k, &p) in pivots.iter().enumerate() {
            full[p] = ray[k].clone();
        }
        facets.push(linalg::to_exponent(&full, "facet normal")?);
    }
    facets.sort();
    facets.dedup();

    let equations = kernel_basis(lattice.basis(), d)
        .iter()
        .map(|e| linalg::to_exponent(e, "span equation"))
        .collect::<Result<Vec<_>>>()?;

    let projected_facets: Vec<Vec<BigInt>> = dual_rays;
    let mut rays = BTreeSet::new();
    for (g, row) in gens.iter().zip(&rows) {
        let tight: Vec<Vec<BigInt>> = projected_facets
            .iter()
            .filter(|f| dot(f, row).is_zero())
            .cloned()
            .collect();
        if rank(&tight) + 1 == r {
            rays.insert(g.primitive());
        }
    }

    Ok(RationalCone {
        dim: d,
        rank: r,
        rays: rays.into_iter().collect(),
        facets,
        equations,
    })
}

/// True iff `v` lies in the span of the cone and every facet value is non-negative.
pub fn cone_contains(cone: &RationalCone, v: &ExponentVector) -> Result<bool> {
    check_dim(cone.dim, v)?;
    Ok(cone.holds(v))
}

/// Extreme rays of the pointed-or-not cone `{y ∈ ℚ^r : a·y ≥ 0 for all rows a}`,
/// where the rows have rank `r`. Returns primitive integer vectors; the
/// result spans ℚ^r exactly when the primal cone is pointed.
fn dual_extreme_rays(rows: &[Vec<BigInt>], r: usize) -> Vec<Vec<BigInt>> {
    // Greedy choice of r independent rows for the initial simplicial cone.
    let mut chosen: Vec<usize> = Vec::with_capacity(r);
    let mut basis_rows: Vec<Vec<BigInt>> = Vec::with_capacity(r);
    for (i, row) in rows.iter().enumerate() {
        basis_rows.push(row.clone());
        if rank(&basis_rows) == basis_rows.len() {
            chosen.push(i);
        } else {
            basis_rows.pop();
        }
        if chosen.len() == r {
            break;
        }
    }
    debug_assert_eq!(chosen.len(), r);

    let square: Vec<Vec<Rat>> = basis_rows.iter().map(|row| rat_row(row)).collect();
    let inv = inverse(&square).expect("independent rows");
    let mut rays: Vec<Vec<BigInt>> = (0..r)
        .map(|j| {
            let column: Vec<Rat> = (0..r).map(|i| inv[i][j].clone()).collect();
            linalg::rational_to_primitive(&column)
        })
        .collect();

    let mut processed: Vec<Vec<BigInt>> = basis_rows;
    for (i, a) in rows.iter().enumerate() {
        if chosen.contains(&i) {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|ray| dot(a, ray)).collect();
        let mut next: Vec<Vec<BigInt>> = Vec::new();
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        for (k, v) in values.iter().enumerate() {
            if v.is_negative() {
                negative.push(k);
            } else {
                if v.is_positive() {
                    positive.push(k);
                }
                next.push(rays[k].clone());
            }
        }
        if r >= 2 {
            for &p in &positive {
                for &n in &negative {
                    let common: Vec<Vec<BigInt>> = processed
                        .iter()
                        .filter(|row| dot(row, &rays[p]).is_zero() && dot(row, &rays[n]).is_zero())
                        .cloned()
                        .collect();
                    if rank(&common) != r - 2 {
                        continue;
                    }
                    let combined: Vec<BigInt> = rays[n]
                        .iter()
                        .zip(&rays[p])
                        .map(|(yn, yp)| &values[p] * yn - &values[n] * yp)
                        .collect();
                    next.push(primitive(&combined));
                }
            }
        }
        next.sort();
        next.dedup();
        rays = next;
        processed.push(a.clone());
    }
    rays
}

/// Precomputed inequality description of the zonotope `{Σ λ_i r_i : 0 ≤ λ_i ≤ 1}`.
///
/// The equality system `Σ λ_i r_i = p` is solved for a basis of the rays and
/// the remaining λ are removed by Fourier–Motzkin elimination. Every form is
/// stored over the variables `(p_1..p_d, 1)` as a primitive integer vector.
pub(crate) struct ZonotopeHull {
    equalities: Vec<Vec<BigInt>>,
    inequalities: Vec<Vec<BigInt>>,
}

impl ZonotopeHull {
    pub(crate) fn new(rays: &[ExponentVector]) -> Result<Self> {
        let d = rays[0].dim();
        let k = rays.len();
        // Columns: λ_1..λ_k, p_1..p_d, constant. Rows encode Σ λ_i r_i − p = 0.
        let width = k + d + 1;
        let mut m: Vec<Vec<Rat>> = (0..d)
            .map(|j| {
                let mut row = vec![Rat::zero(); width];
                for (i, ray) in rays.iter().enumerate() {
                    row[i] = Rat::from_integer(ray[j].into());
                }
                row[k + j] = Rat::from_integer((-1).into());
                row
            })
            .collect();
        let pivots = linalg::row_reduce(&mut m);
        let basic: Vec<usize> = pivots.iter().copied().take_while(|&c| c < k).collect();
        let mut equalities = Vec::new();
        for row in m.iter().skip(basic.len()) {
            if row.iter().all(Zero::is_zero) {
                continue;
            }
            equalities.push(linalg::rational_to_primitive(&row[k..]));
        }
        let free: Vec<usize> = (0..k).filter(|c| !basic.contains(c)).collect();
        if free.len() > 60 {
            return Err(Error::bound("zonotope elimination variables", 60));
        }

        // Inequality forms over (λ_free..., p..., 1): λ_i ≥ 0 and 1 − λ_i ≥ 0.
        let fw = free.len() + d + 1;
        let mut forms: Vec<(Vec<Rat>, u128)> = Vec::new();
        let mut origin = 0u32;
        let mut push = |forms: &mut Vec<(Vec<Rat>, u128)>, f: Vec<Rat>| {
            forms.push((f, 1u128 << origin));
            origin += 1;
        };
        for i in 0..k {
            let lambda: Vec<Rat> = if let Some(pos) = basic.iter().position(|&b| b == i) {
                // λ_b = −Σ_free m[pos][f] λ_f − Σ_j m[pos][k+j] p_j − m[pos][k+d]
                let row = &m[pos];
                let mut f = vec![Rat::zero(); fw];
                for (t, &fc) in free.iter().enumerate() {
                    f[t] = -row[fc].clone();
                }
                for j in 0..d {
                    f[free.len() + j] = -row[k + j].clone();
                }
                f[fw - 1] = -row[k + d].clone();
                f
            } else {
                let t = free.iter().position(|&c| c == i).unwrap();
                let mut f = vec![Rat::zero(); fw];
                f[t] = Rat::from_integer(1.into());
                f
            };
            let mut upper: Vec<Rat> = lambda.iter().map(|c| -c.clone()).collect();
            upper[fw - 1] += Rat::from_integer(1.into());
            push(&mut forms, lambda);
            push(&mut forms, upper);
        }

        for (step, var) in (0..free.len()).enumerate() {
            let mut kept = Vec::new();
            let mut pos = Vec::new();
            let mut neg = Vec::new();
            for (f, o) in forms {
                if f[var].is_positive() {
                    pos.push((f, o));
                } else if f[var].is_negative() {
                    neg.push((f, o));
                } else {
                    kept.push((f, o));
                }
            }
            for (fp, op) in &pos {
                for (fn_, on) in &neg {
                    let origins = op | on;
                    // Chernikov: combinations built from more than step+2
                    // originals are redundant.
                    if origins.count_ones() as usize > step + 2 {
                        continue;
                    }
                    let a = fp[var].clone();
                    let b = -fn_[var].clone();
                    let combined: Vec<Rat> = fp
                        .iter()
                        .zip(fn_)
                        .map(|(x, y)| &b * x + &a * y)
                        .collect();
                    kept.push((combined, origins));
                }
            }
            forms = kept;
        }

        let mut inequalities: Vec<Vec<BigInt>> = forms
            .into_iter()
            .map(|(f, _)| linalg::rational_to_primitive(&f[free.len()..]))
            .collect();
        inequalities.sort();
        inequalities.dedup();
        Ok(Self {
            equalities,
            inequalities,
        })
    }

    pub(crate) fn contains(&self, p: &ExponentVector) -> bool {
        let mut x = big_row(p);
        x.push(BigInt::from(1));
        self.equalities.iter().all(|e| dot(e, &x).is_zero())
            && self.inequalities.iter().all(|f| !dot(f, &x).is_negative())
    }
}

/// Bounding box `[lo, hi]` of the zonotope over `rays`.
fn zonotope_box(rays: &[ExponentVector]) -> (Vec<i64>, Vec<i64>) {
    let d = rays[0].dim();
    let mut lo = vec![0i64; d];
    let mut hi = vec![0i64; d];
    for ray in rays {
        for j in 0..d {
            if ray[j] < 0 {
                lo[j] += ray[j];
            } else {
                hi[j] += ray[j];
            }
        }
    }
    (lo, hi)
}

/// Calls `visit` on every integer point of the box `[lo, hi]` in
/// lexicographic order, after checking the volume against `cap`.
pub(crate) fn for_each_box_point(
    lo: &[i64],
    hi: &[i64],
    cap: u64,
    what: &str,
    mut visit: impl FnMut(&ExponentVector),
) -> Result<()> {
    let mut volume: u64 = 1;
    for (l, h) in lo.iter().zip(hi) {
        if h < l {
            return Ok(());
        }
        volume = volume
            .checked_mul((h - l + 1) as u64)
            .filter(|&v| v <= cap)
            .ok_or_else(|| Error::bound(format!("{what} box volume"), cap))?;
    }
    let d = lo.len();
    let mut cur = lo.to_vec();
    loop {
        visit(&ExponentVector::new(cur.clone()));
        let mut j = d;
        loop {
            if j == 0 {
                return Ok(());
            }
            j -= 1;
            if cur[j] < hi[j] {
                cur[j] += 1;
                break;
            }
            cur[j] = lo[j];
        }
    }
}

/// All integer points of `{Σ λ_i r_i : 0 ≤ λ_i ≤ 1}`, lexicographically sorted.
pub fn zonotope_lattice_points(rays: &[ExponentVector], max_box_volume: u64) -> Result<Vec<ExponentVector>> {
    let first = rays.first().ok_or(Error::Empty("zonotope rays"))?;
    for r in rays {
        check_dim(first.dim(), r)?;
    }
    let (lo, hi) = zonotope_box(rays);
    let hull = ZonotopeHull::new(rays)?;
    let mut out = Vec::new();
    for_each_box_point(&lo, &hi, max_box_volume, "zonotope", |p| {
        if hull.contains(p) {
            out.push(p.clone());
        }
    })?;
    Ok(out)
}
