//! Seeded search for parameter ideals containing the conductor.
//!
//! Each instance either carries the counting certificate (no parameter ideal
//! can contain 𝔠) or gets a bounded search over monomial systems of
//! parameters. A bounded search never proves anything about larger degrees;
//! it only reports the absence of a counterexample up to the cap.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::conductor::conductor_generators;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::ikeda::{exhaustive_sop_search, universal_certificate, Verdict};
use crate::normalization::saturate;
use crate::oracle::naive_member;
use crate::semigroup::{AffineSemigroup, NumericalSemigroup};
use crate::vector::ExponentVector;

/// Draws attempted before an instance is given up.
const REJECTION_LIMIT: u64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Numerical,
    /// Generators in ℕ^d.
    Affine(usize),
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Numerical => write!(f, "numerical"),
            Mode::Affine(d) => write!(f, "affine({d})"),
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    /// `numerical`, `affine` (d = 2) or `affine(d)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "numerical" {
            return Ok(Mode::Numerical);
        }
        if s == "affine" {
            return Ok(Mode::Affine(2));
        }
        let d = s
            .strip_prefix("affine(")
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|d| d.trim().parse::<usize>().ok())
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::Invalid(format!("unknown mode {s:?}; expected numerical or affine(d)")))?;
        Ok(Mode::Affine(d))
    }
}

impl Serialize for Mode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub count: usize,
    pub mode: Mode,
    /// Largest generator (numerical) or coordinate (affine).
    pub max_generator: i64,
    pub sop_degree_cap: i64,
    pub limits: Limits,
}

impl FuzzConfig {
    /// Mode-dependent default coordinate bound: 20 for numerical, 6 for affine.
    pub fn new(seed: u64, count: usize, mode: Mode) -> Self {
        let max_generator = match mode {
            Mode::Numerical => 20,
            Mode::Affine(_) => 6,
        };
        let limits = Limits::default();
        Self {
            seed,
            count,
            mode,
            max_generator,
            sop_degree_cap: limits.sop_degree_cap,
            limits,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::Invalid("count must be at least 1".into()));
        }
        if self.sop_degree_cap < 1 {
            return Err(Error::Invalid("sop degree cap must be at least 1".into()));
        }
        let least = match self.mode {
            Mode::Numerical => 2,
            Mode::Affine(_) => 1,
        };
        if self.max_generator < least {
            return Err(Error::Invalid(format!("max generator must be at least {least}")));
        }
        Ok(())
    }
}

/// One way of drawing random semigroups.
pub trait InstanceGenerator: Send + Sync {
    fn name(&self) -> &'static str;

    fn generate(&self, rng: &mut ChaCha8Rng, max_generator: i64) -> Result<AffineSemigroup>;
}

/// 3 to 5 generators in `[2, max]`, divided by their gcd.
pub struct NumericalGenerator;

impl InstanceGenerator for NumericalGenerator {
    fn name(&self) -> &'static str {
        "numerical"
    }

    fn generate(&self, rng: &mut ChaCha8Rng, max_generator: i64) -> Result<AffineSemigroup> {
        let k = rng.gen_range(3..=5);
        let raw: Vec<u64> = (0..k).map(|_| rng.gen_range(2..=max_generator as u64)).collect();
        let g = raw.iter().fold(0, |acc, &x| num_integer::gcd(acc, x));
        Ok(NumericalSemigroup::new(raw.iter().map(|x| x / g).collect())?.to_affine())
    }
}

/// `d` to `d + 3` nonzero generators in `[0, max]^d`; rank-deficient draws are rejected.
pub struct AffineGenerator {
    pub d: usize,
}

impl InstanceGenerator for AffineGenerator {
    fn name(&self) -> &'static str {
        "affine"
    }

    fn generate(&self, rng: &mut ChaCha8Rng, max_generator: i64) -> Result<AffineSemigroup> {
        for _ in 0..REJECTION_LIMIT {
            let k = rng.gen_range(self.d..=self.d + 3);
            let gens: Vec<ExponentVector> = (0..k)
                .map(|_| ExponentVector::new((0..self.d).map(|_| rng.gen_range(0..=max_generator)).collect()))
                .collect();
            if gens.iter().any(ExponentVector::is_zero) {
                continue;
            }
            let s = AffineSemigroup::new(self.d, gens)?;
            if s.dimension() == self.d {
                return Ok(s);
            }
        }
        Err(Error::bound("instance rejection sampling", REJECTION_LIMIT))
    }
}

/// Names of the registered generators, as accepted by `--mode`.
pub fn registry() -> Vec<&'static str> {
    vec![NumericalGenerator.name(), AffineGenerator { d: 2 }.name()]
}

pub fn generator_for(mode: Mode) -> Box<dyn InstanceGenerator> {
    match mode {
        Mode::Numerical => Box::new(NumericalGenerator),
        Mode::Affine(d) => Box::new(AffineGenerator { d }),
    }
}

/// The `index`-th instance of a run; depends only on `(seed, index)`.
pub fn random_instance(config: &FuzzConfig, index: usize) -> Result<AffineSemigroup> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index as u64);
    generator_for(config.mode).generate(&mut rng, config.max_generator)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    /// The conductor is the unit ideal.
    Normal,
    /// μ(𝔪) > dim + |E|: no parameter ideal contains 𝔠.
    Certified,
    /// No monomial system of parameters with entries up to `degree` contains 𝔠.
    NoCounterexampleUpTo { degree: i64, checked: usize },
    /// Some system of parameters contains 𝔠 and passed the brute-force recheck.
    Counterexample { sops: Vec<Vec<ExponentVector>> },
    /// The conductor search was not certified.
    Uncertified,
    /// A guard or input failure; the scan continues.
    Error { message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceReport {
    pub index: usize,
    pub generators: Vec<ExponentVector>,
    pub mu: Option<usize>,
    pub dim: Option<usize>,
    pub excess: Option<usize>,
    pub outcome: Outcome,
    /// Candidates the fast check flagged but the brute-force recheck rejected.
    pub rejected_candidates: Vec<Vec<ExponentVector>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzSummary {
    pub normal: usize,
    pub certified: usize,
    pub bounded: usize,
    pub counterexamples: usize,
    pub uncertified: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzReport {
    pub config: FuzzConfig,
    pub summary: FuzzSummary,
    pub instances: Vec<InstanceReport>,
}

impl FuzzReport {
    pub fn has_counterexample(&self) -> bool {
        self.summary.counterexamples > 0
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "fuzz seed={} count={} mode={} max_generator={} degree_cap={}\n",
            self.config.seed, self.config.count, self.config.mode, self.config.max_generator, self.config.sop_degree_cap
        );
        for i in &self.instances {
            let gens: Vec<String> = i.generators.iter().map(|g| g.to_string()).collect();
            let outcome = match &i.outcome {
                Outcome::Normal => "normal".to_string(),
                Outcome::Certified => "certified".to_string(),
                Outcome::NoCounterexampleUpTo { degree, checked } => {
                    format!("no counterexample up to degree {degree} ({checked} systems checked)")
                }
                Outcome::Counterexample { sops } => format!("COUNTEREXAMPLE {sops:?}"),
                Outcome::Uncertified => "uncertified".to_string(),
                Outcome::Error { message } => format!("error: {message}"),
            };
            out.push_str(&format!("#{} [{}] {}\n", i.index, gens.join(" "), outcome));
        }
        let s = &self.summary;
        out.push_str(&format!(
            "normal {} certified {} bounded {} counterexamples {} uncertified {} errors {}\n",
            s.normal, s.certified, s.bounded, s.counterexamples, s.uncertified, s.errors
        ));
        out
    }
}

/// Brute-force recheck that every R-generator of 𝔠 is a multiple of some entry.
fn recheck(s: &AffineSemigroup, r_generators: &[ExponentVector], sop: &[ExponentVector]) -> bool {
    r_generators
        .iter()
        .all(|r| sop.iter().any(|x| naive_member(s.generators(), &(r - x))))
}

fn examine(s: &AffineSemigroup, config: &FuzzConfig, report: &mut InstanceReport) -> Result<Outcome> {
    let sat = saturate(s, &config.limits)?;
    let c = conductor_generators(&sat, &config.limits)?;
    if !c.certified {
        return Ok(Outcome::Uncertified);
    }
    let cert = universal_certificate(&sat, &c, &config.limits)?;
    report.mu = Some(cert.mu);
    report.dim = Some(cert.dim);
    report.excess = Some(cert.excess.len());
    match cert.verdict {
        Verdict::Normal => return Ok(Outcome::Normal),
        Verdict::CertifiedUniversal => return Ok(Outcome::Certified),
        Verdict::Inconclusive => {}
    }
    let search = exhaustive_sop_search(s, &c, config.sop_degree_cap)?;
    let mut verified: BTreeSet<Vec<ExponentVector>> = BTreeSet::new();
    for sop in search.containments {
        if recheck(s, &c.r_generators, &sop) {
            verified.insert(sop);
        } else {
            report.rejected_candidates.push(sop);
        }
    }
    if verified.is_empty() {
        Ok(Outcome::NoCounterexampleUpTo {
            degree: config.sop_degree_cap,
            checked: search.checked,
        })
    } else {
        Ok(Outcome::Counterexample {
            sops: verified.into_iter().collect(),
        })
    }
}

pub fn scan_instance(config: &FuzzConfig, index: usize) -> InstanceReport {
    let mut report = InstanceReport {
        index,
        generators: Vec::new(),
        mu: None,
        dim: None,
        excess: None,
        outcome: Outcome::Uncertified,
        rejected_candidates: Vec::new(),
    };
    let outcome = random_instance(config, index).and_then(|s| {
        report.generators = s.generators().to_vec();
        examine(&s, config, &mut report)
    });
    report.outcome = outcome.unwrap_or_else(|e| Outcome::Error { message: e.to_string() });
    report
}

/// Scans `config.count` instances on the worker pool; results are in index order.
pub fn scan(config: &FuzzConfig) -> Result<FuzzReport> {
    config.validate()?;
    let instances: Vec<InstanceReport> = (0..config.count)
        .into_par_iter()
        .map(|i| scan_instance(config, i))
        .collect();
    let count = |f: fn(&Outcome) -> bool| instances.iter().filter(|i| f(&i.outcome)).count();
    let summary = FuzzSummary {
        normal: count(|o| matches!(o, Outcome::Normal)),
        certified: count(|o| matches!(o, Outcome::Certified)),
        bounded: count(|o| matches!(o, Outcome::NoCounterexampleUpTo { .. })),
        counterexamples: count(|o| matches!(o, Outcome::Counterexample { .. })),
        uncertified: count(|o| matches!(o, Outcome::Uncertified)),
        errors: count(|o| matches!(o, Outcome::Error { .. })),
    };
    Ok(FuzzReport {
        config: config.clone(),
        summary,
        instances,
    })
}
