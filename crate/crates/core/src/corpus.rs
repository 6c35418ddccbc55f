//! Worked examples with their expected invariants, checked field by field.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::conductor::{conductor_generators, quotient_length};
use crate::config::Limits;
use crate::error::Result;
use crate::ikeda::{universal_certificate, verify_multiplication_table, Verdict};
use crate::normalization::saturate;
use crate::predicates::{
    is_gorenstein_numerical, is_seminormal, pinched_veronese, xn_family, PinchedVeroneseSpec, Seminormality,
};
use crate::semigroup::{AffineSemigroup, NumericalSemigroup};
use crate::vector::{sort_deglex, ExponentVector};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    /// Asserted by the worked example itself.
    Stated,
    /// Produced once by a brute-force oracle and pinned; see `oracle` on the entry.
    Oracle,
    /// Follows by counting or arithmetic from stated facts.
    Arithmetic,
}

/// `j + g = a + b` with `a`, `b` minimal generators of Γ, for the single
/// nonzero module generator `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PinnedProduct {
    pub j: ExponentVector,
    pub a: ExponentVector,
    pub b: ExponentVector,
}

/// Expected values; `None` means the entry makes no claim about that field.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Expected {
    pub hilbert_basis: Option<(Origin, Vec<ExponentVector>)>,
    pub module_generators: Option<(Origin, Vec<ExponentVector>)>,
    pub r_generators: Option<(Origin, Vec<ExponentVector>)>,
    pub equals_maximal: Option<(Origin, bool)>,
    pub quotient_length: Option<(Origin, usize)>,
    pub mu: Option<(Origin, usize)>,
    pub dim: Option<(Origin, usize)>,
    pub excess: Option<(Origin, Vec<ExponentVector>)>,
    pub verdict: Option<(Origin, Verdict)>,
    pub oneless_witness: Option<(Origin, ExponentVector)>,
    pub seminormal: Option<(Origin, Seminormality)>,
    pub frobenius: Option<(Origin, i64)>,
    pub symmetric: Option<(Origin, bool)>,
    /// Number of `(j, g)` products in `J·R̄ ⊆ R` for `J` the R-generators of 𝔠.
    pub multiplication_checks: Option<(Origin, usize)>,
    pub pinned_products: Vec<PinnedProduct>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub id: String,
    pub description: String,
    pub semigroup: AffineSemigroup,
    pub numerical: Option<NumericalSemigroup>,
    /// How the `Oracle` values were produced.
    pub oracle: Option<String>,
    pub expected: Expected,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FieldCheck {
    pub field: String,
    pub origin: Origin,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub description: String,
    pub passed: bool,
    pub checks: Vec<FieldCheck>,
    /// Set when an operation failed before all fields could be compared.
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusReport {
    pub passed: bool,
    pub entries: Vec<EntryReport>,
    pub limits: Limits,
}

impl CorpusReport {
    pub fn failed_checks(&self) -> usize {
        self.entries
            .iter()
            .map(|e| e.checks.iter().filter(|c| !c.pass).count() + usize::from(e.error.is_some()))
            .sum()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let status = if e.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {} ({} checks)\n", e.id, e.checks.len()));
            for c in e.checks.iter().filter(|c| !c.pass) {
                out.push_str(&format!("  {}: expected {} got {}\n", c.field, c.expected, c.actual));
            }
            if let Some(err) = &e.error {
                out.push_str(&format!("  error: {err}\n"));
            }
        }
        let total: usize = self.entries.iter().map(|e| e.checks.len()).sum();
        out.push_str(&format!(
            "corpus: {} entries, {} checks, {} failed\n",
            self.entries.len(),
            total,
            self.failed_checks()
        ));
        out
    }
}

fn ev(v: &[i64]) -> ExponentVector {
    ExponentVector::new(v.to_vec())
}

fn evs(rows: &[&[i64]]) -> Vec<ExponentVector> {
    rows.iter().map(|r| ev(r)).collect()
}

fn affine(rows: &[&[i64]]) -> AffineSemigroup {
    AffineSemigroup::from_rows(rows).expect("corpus generators are valid")
}

fn pinched(n: usize, d: i64, removed: &[i64]) -> AffineSemigroup {
    pinched_veronese(&PinchedVeroneseSpec {
        n,
        d,
        removed: ev(removed),
    })
    .expect("corpus generators are valid")
}

const ORACLE_NOTE: &str = "saturation by zonotope enumeration, conductor by brute-force membership of every \
                           Γ-point up to degree 2·|c₀| + 6, seminormality by scanning Γ̄ ∖ Γ up to degree 12";

/// All corpus entries in a fixed order.
#[allow(clippy::vec_init_then_push)]
pub fn entries() -> Vec<CorpusEntry> {
    use Origin::*;
    let mut out = Vec::new();

    out.push(CorpusEntry {
        id: "s2-s3-st-t".into(),
        description: "k[[s², s³, st, t]]: a non-Gorenstein surface whose conductor is the maximal ideal".into(),
        semigroup: affine(&[&[2, 0], &[3, 0], &[1, 1], &[0, 1]]),
        numerical: None,
        oracle: Some(ORACLE_NOTE.into()),
        expected: Expected {
            hilbert_basis: Some((Stated, evs(&[&[0, 1], &[1, 0]]))),
            module_generators: Some((Oracle, evs(&[&[0, 0], &[1, 0]]))),
            r_generators: Some((Stated, evs(&[&[0, 1], &[1, 1], &[2, 0], &[3, 0]]))),
            equals_maximal: Some((Stated, true)),
            quotient_length: Some((Stated, 1)),
            mu: Some((Arithmetic, 4)),
            dim: Some((Arithmetic, 2)),
            excess: Some((Arithmetic, Vec::new())),
            verdict: Some((Arithmetic, Verdict::CertifiedUniversal)),
            seminormal: Some((Oracle, Seminormality::No { witness: ev(&[1, 0]) })),
            multiplication_checks: Some((Stated, 4)),
            ..Expected::default()
        },
    });

    out.push(CorpusEntry {
        id: "345".into(),
        description: "numerical semigroup ⟨3,4,5⟩, whose conductor is the maximal ideal".into(),
        semigroup: NumericalSemigroup::new(vec![3, 4, 5]).expect("valid").to_affine(),
        numerical: Some(NumericalSemigroup::new(vec![3, 4, 5]).expect("valid")),
        oracle: Some("Frobenius number and symmetry from the membership sieve".into()),
        expected: Expected {
            hilbert_basis: Some((Stated, evs(&[&[1]]))),
            module_generators: Some((Oracle, evs(&[&[0], &[1], &[2]]))),
            r_generators: Some((Stated, evs(&[&[3], &[4], &[5]]))),
            equals_maximal: Some((Stated, true)),
            quotient_length: Some((Oracle, 2)),
            mu: Some((Arithmetic, 3)),
            dim: Some((Arithmetic, 1)),
            excess: Some((Arithmetic, Vec::new())),
            verdict: Some((Arithmetic, Verdict::CertifiedUniversal)),
            seminormal: Some((Oracle, Seminormality::No { witness: ev(&[2]) })),
            frobenius: Some((Oracle, 2)),
            symmetric: Some((Oracle, false)),
            ..Expected::default()
        },
    });

    out.push(CorpusEntry {
        id: "quadrics-minus-XY-2vars".into(),
        description: "quadrics in X, Y without XY, plus the cubics X²Y and XY²".into(),
        semigroup: affine(&[&[2, 0], &[0, 2], &[1, 1], &[2, 1], &[1, 2]]),
        numerical: None,
        oracle: Some(ORACLE_NOTE.into()),
        expected: Expected {
            hilbert_basis: Some((Stated, evs(&[&[0, 1], &[1, 0]]))),
            module_generators: Some((Oracle, evs(&[&[0, 0], &[0, 1], &[1, 0]]))),
            r_generators: Some((Oracle, evs(&[&[1, 1], &[1, 2], &[2, 1]]))),
            equals_maximal: Some((Arithmetic, false)),
            mu: Some((Stated, 5)),
            dim: Some((Stated, 2)),
            excess: Some((Stated, evs(&[&[0, 2], &[2, 0]]))),
            verdict: Some((Stated, Verdict::CertifiedUniversal)),
            seminormal: Some((Stated, Seminormality::Yes)),
            ..Expected::default()
        },
    });

    out.push(CorpusEntry {
        id: "veronese4-minus-ZW".into(),
        description: "quadrics in X, Y, Z, W without ZW".into(),
        semigroup: pinched(4, 2, &[0, 0, 1, 1]),
        numerical: None,
        oracle: Some(ORACLE_NOTE.into()),
        expected: Expected {
            module_generators: Some((Oracle, evs(&[&[0, 0, 0, 0], &[0, 0, 1, 1]]))),
            r_generators: Some((
                Stated,
                evs(&[
                    &[0, 1, 0, 1],
                    &[0, 1, 1, 0],
                    &[0, 2, 0, 0],
                    &[1, 0, 0, 1],
                    &[1, 0, 1, 0],
                    &[1, 1, 0, 0],
                    &[2, 0, 0, 0],
                ]),
            )),
            mu: Some((Stated, 9)),
            dim: Some((Stated, 4)),
            excess: Some((Stated, evs(&[&[0, 0, 0, 2], &[0, 0, 2, 0]]))),
            verdict: Some((Stated, Verdict::CertifiedUniversal)),
            seminormal: Some((Oracle, Seminormality::Yes)),
            ..Expected::default()
        },
    });

    let pinned = |j: &[i64], a: &[i64], b: &[i64]| PinnedProduct {
        j: ev(j),
        a: ev(a),
        b: ev(b),
    };
    out.push(CorpusEntry {
        id: "cubics-minus-X2Y".into(),
        description: "cubics in X, Y, Z without X²Y; the maximal ideal is 𝔠 + X³R".into(),
        semigroup: pinched(3, 3, &[2, 1, 0]),
        numerical: None,
        oracle: Some(ORACLE_NOTE.into()),
        expected: Expected {
            module_generators: Some((Stated, evs(&[&[0, 0, 0], &[2, 1, 0]]))),
            r_generators: Some((
                Oracle,
                evs(&[
                    &[0, 0, 3],
                    &[0, 1, 2],
                    &[0, 2, 1],
                    &[0, 3, 0],
                    &[1, 0, 2],
                    &[1, 1, 1],
                    &[1, 2, 0],
                    &[2, 0, 1],
                ]),
            )),
            mu: Some((Arithmetic, 9)),
            dim: Some((Arithmetic, 3)),
            excess: Some((Stated, evs(&[&[3, 0, 0]]))),
            verdict: Some((Arithmetic, Verdict::CertifiedUniversal)),
            oneless_witness: Some((Stated, ev(&[3, 0, 0]))),
            seminormal: Some((Oracle, Seminormality::No { witness: ev(&[2, 1, 0]) })),
            multiplication_checks: Some((Oracle, 8)),
            pinned_products: vec![
                pinned(&[0, 1, 2], &[1, 2, 0], &[1, 0, 2]),
                pinned(&[0, 3, 0], &[1, 2, 0], &[1, 2, 0]),
                pinned(&[1, 1, 1], &[1, 2, 0], &[2, 0, 1]),
                pinned(&[0, 0, 3], &[2, 0, 1], &[0, 1, 2]),
                pinned(&[0, 2, 1], &[0, 3, 0], &[2, 0, 1]),
                pinned(&[1, 0, 2], &[3, 0, 0], &[0, 1, 2]),
                pinned(&[2, 0, 1], &[3, 0, 0], &[1, 1, 1]),
            ],
            ..Expected::default()
        },
    });

    out.push(CorpusEntry {
        id: "pinched-quadrics-3vars".into(),
        description: "quadrics in X, Y, Z without XY; the normalization is the full quadric Veronese".into(),
        semigroup: pinched(3, 2, &[1, 1, 0]),
        numerical: None,
        oracle: Some(ORACLE_NOTE.into()),
        expected: Expected {
            hilbert_basis: Some((
                Stated,
                evs(&[&[0, 0, 2], &[0, 1, 1], &[0, 2, 0], &[1, 0, 1], &[1, 1, 0], &[2, 0, 0]]),
            )),
            module_generators: Some((Oracle, evs(&[&[0, 0, 0], &[1, 1, 0]]))),
            r_generators: Some((Oracle, evs(&[&[0, 0, 2], &[0, 1, 1], &[1, 0, 1]]))),
            mu: Some((Arithmetic, 5)),
            dim: Some((Arithmetic, 3)),
            ..Expected::default()
        },
    });

    for n in 2..=5usize {
        let s = xn_family(n).expect("n ≥ 2");
        let last = ExponentVector::unit(n, n - 1);
        let mut r: Vec<ExponentVector> = (0..n - 1)
            .flat_map(|i| {
                let e = ExponentVector::unit(n, i);
                [e.clone(), &e + &last]
            })
            .collect();
        sort_deglex(&mut r);
        let verdict = if 2 * n - 1 > n + 1 {
            Verdict::CertifiedUniversal
        } else {
            Verdict::Inconclusive
        };
        out.push(CorpusEntry {
            id: format!("xn-family({n})"),
            description: format!("X_1, …, X_{}, X_iX_{n} and X_{n}²; the maximal ideal is 𝔠 + X_{n}²R", n - 1),
            semigroup: s,
            numerical: None,
            oracle: Some(ORACLE_NOTE.into()),
            expected: Expected {
                module_generators: Some((Oracle, vec![ExponentVector::zeros(n), last.clone()])),
                r_generators: Some((Stated, r)),
                mu: Some((Arithmetic, 2 * n - 1)),
                dim: Some((Arithmetic, n)),
                excess: Some((Stated, vec![last.scale(2)])),
                verdict: Some((Arithmetic, verdict)),
                oneless_witness: Some((Stated, last.scale(2))),
                seminormal: Some((Oracle, Seminormality::Yes)),
                multiplication_checks: Some((Stated, 2 * n - 2)),
                ..Expected::default()
            },
        });
    }
    out
}

struct Checks(Vec<FieldCheck>);

impl Checks {
    fn push<T: Serialize + PartialEq>(&mut self, field: impl Into<String>, origin: Origin, expected: &T, actual: &T) {
        self.0.push(FieldCheck {
            field: field.into(),
            origin,
            expected: serde_json::to_value(expected).unwrap_or(Value::Null),
            actual: serde_json::to_value(actual).unwrap_or(Value::Null),
            pass: expected == actual,
        });
    }

    fn set(&mut self, field: &str, expected: &Option<(Origin, Vec<ExponentVector>)>, actual: &[ExponentVector]) {
        if let Some((origin, want)) = expected {
            let mut want = want.clone();
            sort_deglex(&mut want);
            let mut got = actual.to_vec();
            sort_deglex(&mut got);
            self.push(field, *origin, &want, &got);
        }
    }

    fn value<T: Serialize + PartialEq>(&mut self, field: &str, expected: &Option<(Origin, T)>, actual: impl FnOnce() -> Result<T>) -> Result<()> {
        if let Some((origin, want)) = expected {
            let got = actual()?;
            self.push(field, *origin, want, &got);
        }
        Ok(())
    }
}

fn evaluate(entry: &CorpusEntry, limits: &Limits, checks: &mut Checks) -> Result<()> {
    let x = &entry.expected;
    let s = &entry.semigroup;
    let sat = saturate(s, limits)?;
    checks.set("hilbert_basis", &x.hilbert_basis, sat.hilbert_basis());
    checks.set("module_generators", &x.module_generators, sat.module_generators());

    let c = conductor_generators(&sat, limits)?;
    checks.push("certified", Origin::Arithmetic, &true, &c.certified);
    checks.set("r_generators", &x.r_generators, &c.r_generators);
    checks.value("equals_maximal", &x.equals_maximal, || Ok(c.equals_maximal))?;
    checks.value("quotient_length", &x.quotient_length, || {
        Ok(quotient_length(&sat, &c, limits)?.unwrap_or(usize::MAX))
    })?;
    checks.value("mu", &x.mu, || Ok(s.minimal_generators().len()))?;
    checks.value("dim", &x.dim, || Ok(s.dimension()))?;

    if x.excess.is_some() || x.verdict.is_some() || x.oneless_witness.is_some() {
        let cert = universal_certificate(&sat, &c, limits)?;
        checks.set("excess", &x.excess, &cert.excess);
        checks.value("verdict", &x.verdict, || Ok(cert.verdict))?;
        if let Some((origin, want)) = &x.oneless_witness {
            checks.push("oneless_witness", *origin, &Some(want.clone()), &cert.oneless_witness);
        }
    }
    checks.value("seminormal", &x.seminormal, || is_seminormal(&sat, limits))?;
    if let Some(n) = &entry.numerical {
        checks.value("frobenius", &x.frobenius, || Ok(n.frobenius()))?;
        checks.value("symmetric", &x.symmetric, || Ok(is_gorenstein_numerical(n)))?;
    }

    if x.multiplication_checks.is_some() || !x.pinned_products.is_empty() {
        let table = verify_multiplication_table(&sat, &c.r_generators)?;
        checks.value("multiplication_checks", &x.multiplication_checks, || Ok(table.len()))?;
        let mins = s.minimal_generators();
        for p in &x.pinned_products {
            let row = table.iter().find(|t| t.j == p.j);
            let holds = row.is_some_and(|t| &p.a + &p.b == t.product && mins.contains(&p.a) && mins.contains(&p.b));
            checks.push(format!("multiplication[{}]", p.j), Origin::Stated, &true, &holds);
        }
    }
    Ok(())
}

pub fn run_entry(entry: &CorpusEntry, limits: &Limits) -> EntryReport {
    let mut checks = Checks(Vec::new());
    let error = evaluate(entry, limits, &mut checks).err().map(|e| e.to_string());
    EntryReport {
        id: entry.id.clone(),
        description: entry.description.clone(),
        passed: error.is_none() && checks.0.iter().all(|c| c.pass),
        checks: checks.0,
        error,
    }
}

/// Evaluates every entry (in parallel) and reports in corpus order.
pub fn run_corpus(limits: &Limits) -> CorpusReport {
    let entries: Vec<EntryReport> = entries().par_iter().map(|e| run_entry(e, limits)).collect();
    CorpusReport {
        passed: entries.iter().all(|e| e.passed),
        entries,
        limits: limits.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_passes() {
        let report = run_corpus(&Limits::default());
        assert!(report.passed, "{}", report.render_text());
        assert_eq!(report.entries.len(), 10);
        assert_eq!(report.failed_checks(), 0);
    }

    #[test]
    fn mismatch_is_reported_with_both_values() {
        let mut entry = entries().remove(1);
        entry.expected.frobenius = Some((Origin::Oracle, 3));
        let r = run_entry(&entry, &Limits::default());
        assert!(!r.passed);
        let bad = r.checks.iter().find(|c| !c.pass).unwrap();
        assert_eq!(bad.field, "frobenius");
        assert_eq!(bad.expected, Value::from(3));
        assert_eq!(bad.actual, Value::from(2));
    }

    #[test]
    fn guard_failure_is_an_entry_error() {
        let limits = Limits {
            zonotope_box_cap: 1,
            ..Limits::default()
        };
        let r = run_entry(&entries()[0], &limits);
        assert!(!r.passed);
        assert!(r.error.unwrap().contains("bound exceeded"));
    }
}
