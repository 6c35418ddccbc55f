//! Input documents: one JSON object per instance.
//!
//! ```json
//! {"numerical": [3, 4, 5]}
//! {"dim": 2, "generators": [[2, 0], [3, 0], [1, 1], [0, 1]], "labels": ["s", "t"]}
//! ```

use std::fmt;

use conductor_core::semigroup::{AffineSemigroup, NumericalSemigroup};
use conductor_core::{Error, ExponentVector};
use serde::{Deserialize, Serialize};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    numerical: Option<Vec<serde_json::Value>>,
    dim: Option<usize>,
    generators: Option<Vec<Vec<i64>>>,
    labels: Option<Vec<String>>,
}

/// A validated instance in canonical form.
#[derive(Clone, Debug, Serialize)]
pub struct InstanceSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numerical: Option<Vec<u64>>,
    pub dim: usize,
    pub generators: Vec<ExponentVector>,
    /// Variable names, one per coordinate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(skip)]
    pub semigroup: Option<AffineSemigroup>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecError {
    pub message: String,
    /// 1-based position of the problem in the document, when known.
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "line {l}, column {c}: {}", self.message),
            _ => write!(f, "{}", self.message),
        }
    }
}

impl SpecError {
    fn plain(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            line: None,
            column: None,
        }
    }

    /// Points at the first occurrence of `needle` in `text`.
    fn at(text: &str, needle: &str, message: impl Into<String>) -> Self {
        let mut e = Self::plain(message);
        if let Some(offset) = text.find(needle) {
            let before = &text[..offset];
            e.line = Some(before.matches('\n').count() + 1);
            e.column = Some(before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1);
        }
        e
    }
}

fn core_error(e: Error) -> SpecError {
    SpecError::plain(e.to_string())
}

pub fn parse_spec(text: &str) -> Result<InstanceSpec, SpecError> {
    let raw: RawSpec = serde_json::from_str(text).map_err(|e| SpecError {
        message: e.to_string().split(" at line ").next().unwrap_or_default().to_string(),
        line: Some(e.line()),
        column: Some(e.column()),
    })?;
    match (raw.numerical, raw.dim, raw.generators) {
        (Some(values), None, None) => {
            let mut gens = Vec::with_capacity(values.len());
            for v in &values {
                match v.as_u64() {
                    Some(0) => return Err(SpecError::at(text, "0", "zero generator")),
                    Some(x) => gens.push(x),
                    None => {
                        return Err(SpecError::at(
                            text,
                            &v.to_string(),
                            format!("numerical generators must be positive integers, got {v}"),
                        ))
                    }
                }
            }
            let n = NumericalSemigroup::new(gens).map_err(core_error)?;
            let semigroup = n.to_affine();
            check_labels(text, &raw.labels, 1)?;
            Ok(InstanceSpec {
                numerical: Some(n.generators().to_vec()),
                dim: 1,
                generators: semigroup.generators().to_vec(),
                labels: raw.labels,
                semigroup: Some(semigroup),
            })
        }
        (None, Some(dim), Some(rows)) => {
            if dim == 0 {
                return Err(SpecError::at(text, "\"dim\"", "dim must be at least 1"));
            }
            if rows.is_empty() {
                return Err(SpecError::at(text, "\"generators\"", "no generators given"));
            }
            for (i, row) in rows.iter().enumerate() {
                let shown = format!("{row:?}");
                if row.len() != dim {
                    return Err(SpecError::plain(format!(
                        "generator {} has {} coordinates, expected dim = {dim}",
                        i + 1,
                        row.len()
                    )));
                }
                if row.iter().any(|&c| c < 0) {
                    return Err(SpecError::plain(format!("generator {} {shown} has a negative coordinate", i + 1)));
                }
                if row.iter().all(|&c| c == 0) {
                    return Err(SpecError::plain(format!("zero generator (generator {})", i + 1)));
                }
            }
            check_labels(text, &raw.labels, dim)?;
            let semigroup = AffineSemigroup::new(dim, rows.into_iter().map(ExponentVector::new).collect())
                .map_err(core_error)?;
            Ok(InstanceSpec {
                numerical: None,
                dim,
                generators: semigroup.generators().to_vec(),
                labels: raw.labels,
                semigroup: Some(semigroup),
            })
        }
        (Some(_), _, _) => Err(SpecError::plain(
            "\"numerical\" cannot be combined with \"dim\" or \"generators\"",
        )),
        (None, None, _) => Err(SpecError::plain("missing \"dim\" (or use \"numerical\")")),
        (None, Some(_), None) => Err(SpecError::plain("missing \"generators\"")),
    }
}

fn check_labels(text: &str, labels: &Option<Vec<String>>, dim: usize) -> Result<(), SpecError> {
    match labels {
        Some(l) if l.len() != dim => Err(SpecError::at(
            text,
            "\"labels\"",
            format!("{} labels given for dimension {dim}", l.len()),
        )),
        _ => Ok(()),
    }
}

impl InstanceSpec {
    pub fn semigroup(&self) -> &AffineSemigroup {
        self.semigroup.as_ref().expect("validated on construction")
    }

    /// `s^2 t` style rendering when labels are present, the tuple otherwise.
    pub fn monomial(&self, v: &ExponentVector) -> String {
        let Some(labels) = &self.labels else {
            return v.to_string();
        };
        let parts: Vec<String> = v
            .iter()
            .zip(labels)
            .filter(|(&e, _)| e != 0)
            .map(|(&e, name)| if e == 1 { name.clone() } else { format!("{name}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}
