//! Per-instance analyses, looked up by subcommand name.
//!
//! Every analysis builds one serializable report; the JSON and text outputs
//! are two renderings of that same value.

use conductor_core::conductor::{conductor_generators, quotient_length, ConductorResult};
use conductor_core::ikeda::{
    check_sop_containment, exhaustive_sop_search, universal_certificate, verify_multiplication_table,
    IkedaCertificate, MultiplicationCheck, SopSearch,
};
use conductor_core::ideals::is_system_of_parameters;
use conductor_core::normalization::{saturate, SaturationResult};
use conductor_core::predicates::{is_seminormal, Seminormality};
use conductor_core::{Error, ExponentVector, Limits};
use serde::Serialize;
use serde_json::Value;

use crate::instance::InstanceSpec;

pub struct Options {
    pub limits: Limits,
    /// Check containment of 𝔠 in the ideal of this monomial system of parameters.
    pub sop: Option<Vec<ExponentVector>>,
    /// Run the bounded search over monomial systems of parameters.
    pub search: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// The conductor search hit its caps; results are reported but not certified.
    Uncertified,
}

pub struct Output {
    pub json: Value,
    pub text: String,
    pub status: Status,
}

pub trait Analysis {
    fn name(&self) -> &'static str;

    fn run(&self, spec: &InstanceSpec, options: &Options) -> Result<Output, Error>;
}

pub fn registry() -> Vec<Box<dyn Analysis>> {
    vec![Box::new(Analyze), Box::new(Normalize), Box::new(Conductor), Box::new(Ikeda)]
}

pub fn lookup(name: &str) -> Option<Box<dyn Analysis>> {
    registry().into_iter().find(|a| a.name() == name)
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    command: &'static str,
    instance: &'a InstanceSpec,
    limits: &'a Limits,
    #[serde(flatten)]
    body: T,
}

fn output<T: Serialize>(
    command: &'static str,
    spec: &InstanceSpec,
    options: &Options,
    body: T,
    text: String,
    status: Status,
) -> Result<Output, Error> {
    let json = serde_json::to_value(Report {
        command,
        instance: spec,
        limits: &options.limits,
        body,
    })
    .map_err(|e| Error::Internal(format!("serializing report: {e}")))?;
    let mut text = format!("instance: {}\n{text}", describe(spec));
    text.push_str(&format!("limits: {}\n", render_limits(&options.limits)));
    Ok(Output { json, text, status })
}

fn describe(spec: &InstanceSpec) -> String {
    match &spec.numerical {
        Some(n) => format!("numerical ⟨{}⟩", n.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")),
        None => format!("dim {}, generators {}", spec.dim, list(spec, &spec.generators)),
    }
}

fn list(spec: &InstanceSpec, vs: &[ExponentVector]) -> String {
    if vs.is_empty() {
        return "(none)".into();
    }
    vs.iter().map(|v| spec.monomial(v)).collect::<Vec<_>>().join(", ")
}

fn render_limits(limits: &Limits) -> String {
    match serde_json::to_value(limits) {
        Ok(Value::Object(map)) => map.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" "),
        _ => String::new(),
    }
}

#[derive(Serialize)]
struct NormalizationSection {
    lattice_rank: usize,
    lattice_index_one: bool,
    lattice_rays: Vec<ExponentVector>,
    facets: Vec<ExponentVector>,
    hilbert_basis: Vec<ExponentVector>,
    module_generators: Vec<ExponentVector>,
    is_normal: bool,
}

impl NormalizationSection {
    fn new(sat: &SaturationResult) -> Self {
        Self {
            lattice_rank: sat.lattice().rank(),
            lattice_index_one: sat.lattice().is_full(),
            lattice_rays: sat.lattice_rays().to_vec(),
            facets: sat.cone().facets().to_vec(),
            hilbert_basis: sat.hilbert_basis().to_vec(),
            module_generators: sat.module_generators().to_vec(),
            is_normal: sat.is_normal(),
        }
    }

    fn text(&self, spec: &InstanceSpec) -> String {
        format!(
            "normalization:\n  hilbert basis: {}\n  module generators: {}\n  extreme rays: {}\n  normal: {}\n",
            list(spec, &self.hilbert_basis),
            list(spec, &self.module_generators),
            list(spec, &self.lattice_rays),
            self.is_normal
        )
    }
}

#[derive(Serialize)]
struct ConductorSection {
    r_generators: Vec<ExponentVector>,
    rbar_generators: Vec<ExponentVector>,
    witness_element: ExponentVector,
    equals_maximal: bool,
    is_unit: bool,
    certified: bool,
    m_primary: bool,
    /// `dim_k R̄/R`, when finite.
    quotient_length: Option<usize>,
    searched_degree: i64,
}

impl ConductorSection {
    fn new(sat: &SaturationResult, c: &ConductorResult, limits: &Limits) -> Result<Self, Error> {
        let quotient_length = if c.certified { quotient_length(sat, c, limits)? } else { None };
        Ok(Self {
            r_generators: c.r_generators.clone(),
            rbar_generators: c.rbar_generators.clone(),
            witness_element: c.witness_element.clone(),
            equals_maximal: c.equals_maximal,
            is_unit: c.is_unit,
            certified: c.certified,
            m_primary: c.is_m_primary(),
            quotient_length,
            searched_degree: c.searched_degree,
        })
    }

    fn text(&self, spec: &InstanceSpec) -> String {
        let length = self.quotient_length.map_or("infinite or unknown".to_string(), |l| l.to_string());
        format!(
            "conductor:\n  R-generators: {}\n  R̄-generators: {}\n  witness element: {}\n  certified: {} (searched to degree {})\n  conductor = maximal ideal: {}\n  unit ideal: {}\n  m-primary: {}\n  length of R̄/R: {}\n",
            list(spec, &self.r_generators),
            list(spec, &self.rbar_generators),
            spec.monomial(&self.witness_element),
            self.certified,
            self.searched_degree,
            self.equals_maximal,
            self.is_unit,
            self.m_primary,
            length
        )
    }
}

fn certificate_text(spec: &InstanceSpec, cert: &IkedaCertificate) -> String {
    let mut out = format!(
        "ikeda:\n  μ = {}, dim = {}, |E| = {}\n  E: {}\n  verdict: {}\n  oneless witness: {}\n",
        cert.mu,
        cert.dim,
        cert.excess.len(),
        list(spec, &cert.excess),
        verdict_name(cert),
        cert.oneless_witness.as_ref().map_or("none found".to_string(), |y| spec.monomial(y))
    );
    for note in &cert.notes {
        out.push_str(&format!("  note: {note}\n"));
    }
    out
}

fn verdict_name(cert: &IkedaCertificate) -> String {
    serde_json::to_value(cert.verdict)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default()
}

fn seminormal_text(spec: &InstanceSpec, s: &Seminormality) -> String {
    match s {
        Seminormality::Yes => "seminormal: yes\n".into(),
        Seminormality::No { witness } => format!("seminormal: no (witness {})\n", spec.monomial(witness)),
        Seminormality::YesUpToBound { bound } => format!("seminormal: no violation up to degree {bound}\n"),
    }
}

#[derive(Serialize)]
struct NumericalSection {
    frobenius: i64,
    genus: usize,
    symmetric: bool,
    apery_set: Vec<u64>,
}

fn numerical_section(spec: &InstanceSpec) -> Result<Option<NumericalSection>, Error> {
    if spec.dim != 1 {
        return Ok(None);
    }
    let Ok(n) = spec.semigroup().to_numerical() else {
        return Ok(None);
    };
    Ok(Some(NumericalSection {
        frobenius: n.frobenius(),
        genus: n.genus(),
        symmetric: n.is_symmetric(),
        apery_set: n.apery_set(n.multiplicity())?,
    }))
}

struct Analyze;

#[derive(Serialize)]
struct AnalyzeBody {
    normalization: NormalizationSection,
    conductor: ConductorSection,
    /// Absent when the conductor search was not certified.
    ikeda: Option<IkedaCertificate>,
    seminormality: Seminormality,
    numerical: Option<NumericalSection>,
}

impl Analysis for Analyze {
    fn name(&self) -> &'static str {
        "analyze"
    }

    fn run(&self, spec: &InstanceSpec, options: &Options) -> Result<Output, Error> {
        let limits = &options.limits;
        let sat = saturate(spec.semigroup(), limits)?;
        let c = conductor_generators(&sat, limits)?;
        let body = AnalyzeBody {
            normalization: NormalizationSection::new(&sat),
            conductor: ConductorSection::new(&sat, &c, limits)?,
            ikeda: if c.certified { Some(universal_certificate(&sat, &c, limits)?) } else { None },
            seminormality: is_seminormal(&sat, limits)?,
            numerical: numerical_section(spec)?,
        };
        let mut text = body.normalization.text(spec);
        text.push_str(&body.conductor.text(spec));
        match &body.ikeda {
            Some(cert) => text.push_str(&certificate_text(spec, cert)),
            None => text.push_str("ikeda: skipped, conductor not certified\n"),
        }
        text.push_str(&seminormal_text(spec, &body.seminormality));
        if let Some(n) = &body.numerical {
            text.push_str(&format!(
                "numerical: F = {}, genus = {}, symmetric: {}, Apéry set: {:?}\n",
                n.frobenius, n.genus, n.symmetric, n.apery_set
            ));
        }
        let status = if c.certified { Status::Ok } else { Status::Uncertified };
        output("analyze", spec, options, body, text, status)
    }
}

struct Normalize;

impl Analysis for Normalize {
    fn name(&self) -> &'static str {
        "normalize"
    }

    fn run(&self, spec: &InstanceSpec, options: &Options) -> Result<Output, Error> {
        let sat = saturate(spec.semigroup(), &options.limits)?;
        let body = NormalizationSection::new(&sat);
        let text = body.text(spec);
        output("normalize", spec, options, body, text, Status::Ok)
    }
}

struct Conductor;

impl Analysis for Conductor {
    fn name(&self) -> &'static str {
        "conductor"
    }

    fn run(&self, spec: &InstanceSpec, options: &Options) -> Result<Output, Error> {
        let sat = saturate(spec.semigroup(), &options.limits)?;
        let c = conductor_generators(&sat, &options.limits)?;
        let body = ConductorSection::new(&sat, &c, &options.limits)?;
        let text = body.text(spec);
        let status = if c.certified { Status::Ok } else { Status::Uncertified };
        output("conductor", spec, options, body, text, status)
    }
}

struct Ikeda;

#[derive(Serialize)]
struct SopCheck {
    sop: Vec<ExponentVector>,
    contained: bool,
}

#[derive(Serialize)]
struct IkedaBody {
    certificate: IkedaCertificate,
    /// `j + g ∈ Γ` for every R-generator `j` of 𝔠 and nonzero module generator `g`.
    multiplication_table: Vec<MultiplicationCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sop_check: Option<SopCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sop_search: Option<SopSearch>,
}

impl Analysis for Ikeda {
    fn name(&self) -> &'static str {
        "ikeda"
    }

    fn run(&self, spec: &InstanceSpec, options: &Options) -> Result<Output, Error> {
        let limits = &options.limits;
        let s = spec.semigroup();
        let sat = saturate(s, limits)?;
        let c = conductor_generators(&sat, limits)?;
        c.require_certified()?;
        let certificate = universal_certificate(&sat, &c, limits)?;
        let multiplication_table = verify_multiplication_table(&sat, &c.r_generators)?;
        let sop_check = match &options.sop {
            Some(xs) => {
                if !is_system_of_parameters(s, xs)? {
                    let shown: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                    return Err(Error::NotSystemOfParameters(shown.join(", ")));
                }
                Some(SopCheck {
                    sop: xs.clone(),
                    contained: check_sop_containment(s, &c, xs)?,
                })
            }
            None => None,
        };
        let sop_search = if options.search && !c.is_unit {
            Some(exhaustive_sop_search(s, &c, limits.sop_degree_cap)?)
        } else {
            None
        };
        let body = IkedaBody {
            certificate,
            multiplication_table,
            sop_check,
            sop_search,
        };
        let mut text = certificate_text(spec, &body.certificate);
        text.push_str(&format!("multiplication checks: {} passed\n", body.multiplication_table.len()));
        for m in &body.multiplication_table {
            text.push_str(&format!(
                "  {} · {} = {} = {}\n",
                spec.monomial(&m.j),
                spec.monomial(&m.g),
                spec.monomial(&m.product),
                m.factors.iter().map(|f| spec.monomial(f)).collect::<Vec<_>>().join(" · ")
            ));
        }
        if let Some(check) = &body.sop_check {
            text.push_str(&format!(
                "sop {}: containment {}\n",
                list(spec, &check.sop),
                check.contained
            ));
        }
        if let Some(search) = &body.sop_search {
            text.push_str(&format!(
                "sop search up to degree {}: {} covers of the R-generators, {} systems checked, {} containments\n",
                search.degree_cap,
                search.covers,
                search.checked,
                search.containments.len()
            ));
        }
        output("ikeda", spec, options, body, text, Status::Ok)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_spec;

    fn options() -> Options {
        Options {
            limits: Limits::default(),
            sop: None,
            search: false,
        }
    }

    #[test]
    fn registry_names_are_unique() {
        let names: Vec<&str> = registry().iter().map(|a| a.name()).collect();
        assert_eq!(names, ["analyze", "normalize", "conductor", "ikeda"]);
        assert!(lookup("ikeda").is_some());
        assert!(lookup("fuzz").is_none());
    }

    #[test]
    fn json_and_text_share_data() {
        let spec = parse_spec(r#"{"dim":2,"generators":[[2,0],[3,0],[1,1],[0,1]]}"#).unwrap();
        let out = lookup("analyze").unwrap().run(&spec, &options()).unwrap();
        assert!(out.text.contains("conductor = maximal ideal: true"));
        assert_eq!(out.json["conductor"]["equals_maximal"], Value::Bool(true));
        assert_eq!(out.json["ikeda"]["verdict"], "certified_universal");
        assert_eq!(out.json["limits"]["conductor_degree_cap"], 64);
        assert_eq!(out.status, Status::Ok);
    }

    #[test]
    fn sop_check_on_the_surface_example() {
        let spec = parse_spec(r#"{"dim":2,"generators":[[2,0],[3,0],[1,1],[0,1]]}"#).unwrap();
        let opts = Options {
            sop: Some(vec![ExponentVector::new(vec![2, 0]), ExponentVector::new(vec![0, 1])]),
            ..options()
        };
        let out = lookup("ikeda").unwrap().run(&spec, &opts).unwrap();
        assert_eq!(out.json["sop_check"]["contained"], Value::Bool(false));
        let bad = Options {
            sop: Some(vec![ExponentVector::new(vec![2, 0])]),
            ..options()
        };
        assert!(matches!(
            lookup("ikeda").unwrap().run(&spec, &bad),
            Err(Error::NotSystemOfParameters(_))
        ));
    }
}
