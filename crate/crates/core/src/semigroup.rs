//! Affine and numerical semigroups.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize, Serializer};

use crate::cone::{cone_from_generators, RationalCone};
use crate::error::{check_dim, Error, Result};
use crate::lattice::{hermite_normal_form, IntegerLattice};
use crate::vector::{sort_deglex, ExponentVector};

/// Membership answers shared by every clone of a semigroup.
type MembershipCache = RwLock<HashMap<ExponentVector, bool>>;

struct Geometry {
    lattice: IntegerLattice,
    cone: RationalCone,
}

/// A finitely generated submonoid Γ of ℕ^d; the exponent semigroup of
/// `k[[x^γ : γ ∈ Γ]]`.
///
/// Generators are deduplicated and kept in degree-lexicographic order. Clones
/// share one membership cache, so repeated queries from the conductor search
/// are answered without recomputation.
#[derive(Clone)]
pub struct AffineSemigroup {
    dim: usize,
    generators: Vec<ExponentVector>,
    cache: Arc<MembershipCache>,
    geometry: Arc<OnceLock<Result<Geometry>>>,
}

impl AffineSemigroup {
    pub fn new(dim: usize, generators: Vec<ExponentVector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("ambient dimension must be at least 1".into()));
        }
        if generators.is_empty() {
            return Err(Error::Empty("semigroup generators"));
        }
        for g in &generators {
            check_dim(dim, g)?;
            if !g.is_nonnegative() {
                return Err(Error::NegativeCoordinate(g.clone()));
            }
            if g.is_zero() {
                return Err(Error::ZeroGenerator);
            }
        }
        let mut generators = generators;
        sort_deglex(&mut generators);
        Ok(Self {
            dim,
            generators,
            cache: Arc::default(),
            geometry: Arc::default(),
        })
    }

    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        let dim = rows.first().map(|r| r.len()).ok_or(Error::Empty("semigroup generators"))?;
        Self::new(dim, rows.iter().map(|r| ExponentVector::new(r.to_vec())).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    /// Membership test: `v` is a (possibly empty) sum of generators.
    pub fn contains(&self, v: &ExponentVector) -> Result<bool> {
        check_dim(self.dim, v)?;
        if !v.is_nonnegative() {
            return Err(Error::NegativeCoordinate(v.clone()));
        }
        Ok(self.member(v))
    }

    /// Membership without validation; vectors with a negative coordinate
    /// are simply not members.
    pub(crate) fn member(&self, v: &ExponentVector) -> bool {
        if !v.is_nonnegative() {
            return false;
        }
        if v.is_zero() {
            return true;
        }
        if let Some(&known) = self.cache.read().unwrap().get(v) {
            return known;
        }
        let mut found: HashMap<ExponentVector, bool> = HashMap::new();
        let answer = self.search(v, &mut found);
        self.cache.write().unwrap().extend(found);
        answer
    }

    fn lookup(&self, v: &ExponentVector, local: &HashMap<ExponentVector, bool>) -> Option<bool> {
        if v.is_zero() {
            return Some(true);
        }
        local
            .get(v)
            .copied()
            .or_else(|| self.cache.read().unwrap().get(v).copied())
    }

    // Depth-first search over v − g. Each stack entry is the previous entry
    // minus a generator, so one success marks the whole stack.
    fn search(&self, v: &ExponentVector, local: &mut HashMap<ExponentVector, bool>) -> bool {
        let mut stack: Vec<(ExponentVector, usize)> = vec![(v.clone(), 0)];
        while let Some((u, idx)) = stack.last_mut() {
            if *idx == self.generators.len() {
                let (u, _) = stack.pop().unwrap();
                local.insert(u, false);
                continue;
            }
            let g = &self.generators[*idx];
            *idx += 1;
            if !g.le_componentwise(u) {
                continue;
            }
            let child = &*u - g;
            match self.lookup(&child, local) {
                Some(true) => {
                    for (w, _) in stack.drain(..) {
                        local.insert(w, true);
                    }
                    return true;
                }
                Some(false) => {}
                None => stack.push((child, 0)),
            }
        }
        false
    }

    /// The unique minimal generating set (the irreducible elements), in
    /// degree-lexicographic order. Its size is the embedding dimension μ(𝔪).
    pub fn minimal_generators(&self) -> Vec<ExponentVector> {
        self.generators
            .iter()
            .filter(|g| {
                !self
                    .generators
                    .iter()
                    .any(|h| h != *g && h.le_componentwise(g) && self.member(&(*g - h)))
            })
            .cloned()
            .collect()
    }

    fn geometry(&self) -> Result<&Geometry> {
        self.geometry
            .get_or_init(|| {
                Ok(Geometry {
                    lattice: hermite_normal_form(&self.generators)?,
                    cone: cone_from_generators(&self.generators)?,
                })
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// The group generated by Γ.
    pub fn lattice(&self) -> Result<&IntegerLattice> {
        self.geometry().map(|g| &g.lattice)
    }

    /// The cone spanned by Γ.
    pub fn cone(&self) -> Result<&RationalCone> {
        self.geometry().map(|g| &g.cone)
    }

    /// Membership in the saturation Γ̄ = group(Γ) ∩ cone(Γ).
    pub fn saturation_contains(&self, v: &ExponentVector) -> Result<bool> {
        check_dim(self.dim, v)?;
        let geo = self.geometry()?;
        Ok(geo.cone.holds(v) && (geo.lattice.is_full() || geo.lattice.coordinates(v)?.is_some()))
    }

    /// Rank of the group generated by Γ, which equals the Krull dimension of
    /// the semigroup ring.
    pub fn dimension(&self) -> usize {
        hermite_normal_form(&self.generators)
            .map(|l| l.rank())
            .unwrap_or(0)
    }

    /// Writes `v` as a sum of minimal generators, taking at each step the
    /// first generator (degree-lexicographically) that leaves a member.
    pub fn factorization(&self, v: &ExponentVector) -> Option<Vec<ExponentVector>> {
        if !self.member(v) {
            return None;
        }
        let gens = self.minimal_generators();
        let mut rest = v.clone();
        let mut out = Vec::new();
        while !rest.is_zero() {
            let g = gens.iter().find(|g| self.member(&(&rest - *g)))?;
            rest = &rest - g;
            out.push(g.clone());
        }
        Some(out)
    }

    /// Semigroup generated by the minimal generators only.
    pub fn canonical(&self) -> Self {
        Self {
            dim: self.dim,
            generators: self.minimal_generators(),
            cache: Arc::clone(&self.cache),
            geometry: Arc::clone(&self.geometry),
        }
    }

    /// Degree-graded listing of Γ: entry `t` holds the elements of total degree `t`.
    pub fn graded_elements(&self, max_degree: i64) -> Vec<BTreeSet<ExponentVector>> {
        graded_sums(&self.generators, self.dim, max_degree)
    }

    pub fn to_numerical(&self) -> Result<NumericalSemigroup> {
        if self.dim != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: self.dim,
            });
        }
        NumericalSemigroup::new(self.generators.iter().map(|g| g[0] as u64).collect())
    }
}

/// Elements `Σ n_i g_i` grouped by total degree up to `max_degree`.
pub(crate) fn graded_sums(gens: &[ExponentVector], dim: usize, max_degree: i64) -> Vec<BTreeSet<ExponentVector>> {
    let top = max_degree.max(0) as usize;
    let mut levels: Vec<BTreeSet<ExponentVector>> = vec![BTreeSet::new(); top + 1];
    levels[0].insert(ExponentVector::zeros(dim));
    for t in 1..=top {
        let mut level = BTreeSet::new();
        for g in gens {
            let dg = g.degree() as usize;
            if dg == 0 || dg > t {
                continue;
            }
            for x in &levels[t - dg] {
                level.insert(x + g);
            }
        }
        levels[t] = level;
    }
    levels
}

impl PartialEq for AffineSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.generators == other.generators
    }
}

impl Eq for AffineSemigroup {}

impl fmt::Debug for AffineSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "⟩")
    }
}

impl Serialize for AffineSemigroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            dim: usize,
            generators: &'a [ExponentVector],
        }
        Repr {
            dim: self.dim,
            generators: &self.generators,
        }
        .serialize(s)
    }
}

/// A submonoid of ℕ with finite complement, given by generators with gcd 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
}

impl NumericalSemigroup {
    pub fn new(mut generators: Vec<u64>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Empty("numerical semigroup generators"));
        }
        if generators.contains(&0) {
            return Err(Error::ZeroGenerator);
        }
        generators.sort_unstable();
        generators.dedup();
        let g = generators.iter().fold(0, |acc, &x| num_integer::gcd(acc, x));
        if g != 1 {
            return Err(Error::GcdNotOne(g));
        }
        Ok(Self { generators })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    /// Upper bound for the Frobenius number: `(a_1 − 1)(a_n − 1) − 1` with
    /// `a_1` the smallest and `a_n` the largest generator.
    pub fn frobenius_bound(&self) -> u64 {
        let a = self.generators[0];
        let b = *self.generators.last().unwrap();
        (a - 1) * (b - 1)
    }

    /// Membership table for `0..=bound`.
    pub fn sieve(&self, bound: u64) -> Vec<bool> {
        let n = bound as usize;
        let mut table = vec![false; n + 1];
        table[0] = true;
        for x in 1..=n {
            table[x] = self
                .generators
                .iter()
                .any(|&g| g as usize <= x && table[x - g as usize]);
        }
        table
    }

    pub fn contains(&self, x: u64) -> bool {
        if x > self.frobenius_bound() {
            return true;
        }
        self.sieve(x)[x as usize]
    }

    /// Largest integer outside the semigroup, `-1` for ℕ itself.
    pub fn frobenius(&self) -> i64 {
        let bound = self.frobenius_bound();
        let table = self.sieve(bound);
        table
            .iter()
            .rposition(|&m| !m)
            .map(|x| x as i64)
            .unwrap_or(-1)
    }

    pub fn gaps(&self) -> Vec<u64> {
        let f = self.frobenius();
        if f < 0 {
            return Vec::new();
        }
        let table = self.sieve(f as u64);
        (0..=f as u64).filter(|&x| !table[x as usize]).collect()
    }

    pub fn genus(&self) -> usize {
        self.gaps().len()
    }

    /// For each residue `r mod n`, the least element congruent to `r`; indexed by residue.
    pub fn apery_set(&self, n: u64) -> Result<Vec<u64>> {
        if n == 0 || !self.contains(n) {
            return Err(Error::NotInSemigroup(n.to_string()));
        }
        let f = self.frobenius().max(0) as u64;
        let table = self.sieve(f + n);
        let mut out = vec![u64::MAX; n as usize];
        for (x, &member) in table.iter().enumerate() {
            let r = x % n as usize;
            if member && out[r] == u64::MAX {
                out[r] = x as u64;
            }
        }
        Ok(out)
    }

    /// Symmetry: for `0 ≤ a ≤ F`, exactly one of `a` and `F − a` is an element.
    pub fn is_symmetric(&self) -> bool {
        let f = self.frobenius();
        if f < 0 {
            return true;
        }
        let table = self.sieve(f as u64);
        (0..=f as usize).all(|a| table[a] != table[f as usize - a])
    }

    pub fn to_affine(&self) -> AffineSemigroup {
        AffineSemigroup::new(
            1,
            self.generators
                .iter()
                .map(|&g| ExponentVector::new(vec![g as i64]))
                .collect(),
        )
        .expect("positive generators")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    fn ex39() -> AffineSemigroup {
        AffineSemigroup::from_rows(&[&[2, 0], &[3, 0], &[1, 1], &[0, 1]]).unwrap()
    }

    #[test]
    fn membership_examples() {
        let s = ex39();
        assert!(!s.contains(&ev(&[1, 0])).unwrap());
        assert!(s.contains(&ev(&[1, 1])).unwrap());
        assert!(s.contains(&ev(&[0, 0])).unwrap());
        assert!(s.contains(&ev(&[5, 0])).unwrap());
        assert!(s.contains(&ev(&[1, 3])).unwrap());
        assert!(matches!(s.contains(&ev(&[-1, 0])), Err(Error::NegativeCoordinate(_))));
        assert!(matches!(s.contains(&ev(&[1])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(AffineSemigroup::from_rows(&[&[0, 0]]).unwrap_err(), Error::ZeroGenerator);
        assert!(matches!(
            AffineSemigroup::from_rows(&[&[1, -1]]),
            Err(Error::NegativeCoordinate(_))
        ));
        assert!(AffineSemigroup::new(2, vec![]).is_err());
    }

    #[test]
    fn duplicates_removed() {
        let s = AffineSemigroup::from_rows(&[&[1, 0], &[0, 1], &[1, 0]]).unwrap();
        assert_eq!(s.generators().len(), 2);
    }

    #[test]
    fn minimal_generators_examples() {
        let quadrics = AffineSemigroup::from_rows(&[&[2, 0], &[0, 2], &[1, 1], &[2, 1], &[1, 2]]).unwrap();
        assert_eq!(quadrics.minimal_generators().len(), 5);
        let s = AffineSemigroup::from_rows(&[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert_eq!(s.minimal_generators(), vec![ev(&[0, 1]), ev(&[1, 0])]);
    }

    #[test]
    fn factorizations() {
        let s = ex39();
        let f = s.factorization(&ev(&[5, 1])).unwrap();
        assert_eq!(f.iter().fold(ExponentVector::zeros(2), |a, g| &a + g), ev(&[5, 1]));
        assert!(s.factorization(&ev(&[1, 0])).is_none());
        assert_eq!(s.factorization(&ev(&[0, 0])), Some(vec![]));
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(ex39().dimension(), 2);
        assert_eq!(NumericalSemigroup::new(vec![3, 4, 5]).unwrap().to_affine().dimension(), 1);
    }

    #[test]
    fn numerical_invariants() {
        let n345 = NumericalSemigroup::new(vec![3, 4, 5]).unwrap();
        assert_eq!(n345.frobenius(), 2);
        assert_eq!(n345.gaps(), vec![1, 2]);
        assert_eq!(n345.apery_set(3).unwrap(), vec![0, 4, 5]);
        assert!(!n345.is_symmetric());

        let n23 = NumericalSemigroup::new(vec![2, 3]).unwrap();
        assert_eq!(n23.frobenius(), 1);
        assert_eq!(n23.apery_set(2).unwrap(), vec![0, 3]);
        assert!(n23.is_symmetric());
        assert_eq!(2 * n23.genus() as i64, n23.frobenius() + 1);

        let n1 = NumericalSemigroup::new(vec![1]).unwrap();
        assert_eq!(n1.frobenius(), -1);
        assert_eq!(n1.apery_set(1).unwrap(), vec![0]);
        assert!(n1.is_symmetric());
    }

    #[test]
    fn frobenius_when_two_smallest_share_a_factor() {
        // 103 exceeds 4·6, so a bound built from the two smallest generators would miss it.
        let n = NumericalSemigroup::new(vec![4, 6, 101]).unwrap();
        assert_eq!(n.frobenius(), 103);
    }

    #[test]
    fn numerical_errors() {
        assert_eq!(NumericalSemigroup::new(vec![2, 4]).unwrap_err(), Error::GcdNotOne(2));
        assert_eq!(NumericalSemigroup::new(vec![0, 1]).unwrap_err(), Error::ZeroGenerator);
        let n = NumericalSemigroup::new(vec![3, 4, 5]).unwrap();
        assert!(matches!(n.apery_set(2), Err(Error::NotInSemigroup(_))));
    }

    #[test]
    fn conversions_round_trip() {
        let n = NumericalSemigroup::new(vec![5, 3, 4]).unwrap();
        assert_eq!(n.to_affine().to_numerical().unwrap(), n);
        assert!(ex39().to_numerical().is_err());
    }
}
