//! On-disk formats: sequence files, scenario files and report files.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cumulant::{JointCumulantTable, JointMomentTable, MultiIndex, Table};
use crate::error::{Error, Result};
use crate::estimation::InvarianceTestReport;
use crate::scalar::{format_rational, parse_rational, Scalar};
use crate::symbolic::{CharacterizationReport, Prop2Report, VectorReport};

/// Parses comma-separated rationals; line breaks and blanks are separators
/// too. Positions in errors are 1-based.
pub fn parse_sequence(text: &str) -> Result<Vec<Scalar>> {
    let mut values = Vec::new();
    for (l, line) in text.lines().enumerate() {
        let mut column = 1;
        for field in line.split(',') {
            let lead = field.len() - field.trim_start().len();
            let token = field.trim();
            if token.is_empty() {
                if !line.trim().is_empty() {
                    return Err(Error::Parse { line: l + 1, column: column + lead, message: "empty field".into() });
                }
            } else {
                let v = parse_rational(token).map_err(|e| Error::Parse {
                    line: l + 1,
                    column: column + lead,
                    message: match e {
                        Error::InvalidInput(m) => m,
                        other => other.to_string(),
                    },
                })?;
                values.push(v);
            }
            column += field.chars().count() + 1;
        }
    }
    if values.is_empty() {
        return Err(Error::Parse { line: 1, column: 1, message: "empty sequence".into() });
    }
    Ok(values)
}

pub fn format_sequence(values: &[Scalar]) -> String {
    let mut out = values.iter().map(format_rational).collect::<Vec<_>>().join(",");
    out.push('\n');
    out
}

/// Scenario document: two independent sides, each a joint law of its
/// variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeff_vars: Option<[String; 2]>,
    pub left: SideFile,
    pub right: SideFile,
}

/// Exactly one of `cumulants`, `discrete` or `dependence` is given.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SideFile {
    pub labels: Vec<String>,
    /// Sparse joint cumulants, `"2,0" → "1"`; absent entries are zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cumulants: Option<BTreeMap<String, String>>,
    /// Independent marginals, one per label.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discrete: Option<BTreeMap<String, Marginal>>,
    /// Explicit joint atoms.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dependence: Option<Dependence>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum Marginal {
    Atoms { atoms: Vec<String>, probabilities: Vec<String> },
    /// `r_1, r_2, ..`; missing higher entries are zero.
    Cumulants { cumulants: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dependence {
    pub atoms: Vec<JointAtom>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JointAtom {
    pub point: Vec<String>,
    pub probability: String,
}

fn rational(text: &str, context: &str) -> Result<Scalar> {
    parse_rational(text).map_err(|e| Error::InvalidInput(format!("{context}: {e}")))
}

fn rationals(texts: &[String], context: &str) -> Result<Vec<Scalar>> {
    texts.iter().map(|t| rational(t, context)).collect()
}

impl ScenarioFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }

    /// Canonical form used for digests: sorted keys, no whitespace.
    pub fn canonical_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("scenario serializes")
    }
}

impl SideFile {
    /// Exact joint cumulant table of this side up to `order`.
    pub fn to_table(&self, order: usize) -> Result<JointCumulantTable<Scalar>> {
        let given = [self.cumulants.is_some(), self.discrete.is_some(), self.dependence.is_some()];
        if given.iter().filter(|&&g| g).count() != 1 {
            return Err(Error::InvalidInput(format!(
                "side {:?} needs exactly one of \"cumulants\", \"discrete\", \"dependence\"",
                self.labels
            )));
        }
        let dim = self.labels.len();
        if let Some(map) = &self.cumulants {
            let mut given = BTreeMap::new();
            for (key, value) in map {
                let idx: MultiIndex = key
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad multi-index key {key:?}")))?;
                if idx.dim() != dim {
                    return Err(Error::InvalidInput(format!(
                        "key {key:?} has {} counts but the side has {dim} labels",
                        idx.dim()
                    )));
                }
                if idx.total() == 0 {
                    return Err(Error::InvalidInput(format!("key {key:?} has total order 0")));
                }
                given.insert(idx, rational(value, &format!("cumulant {key:?}"))?);
            }
            let table = Table::from_fn(self.labels.clone(), order, |idx| given.get(idx).cloned().unwrap_or_default())?;
            return Ok(JointCumulantTable::new(table));
        }
        if let Some(marginals) = &self.discrete {
            if let Some(extra) = marginals.keys().find(|k| !self.labels.contains(k)) {
                return Err(Error::LabelMismatch(format!("discrete entry {extra:?} is not a label")));
            }
            let parts = self
                .labels
                .iter()
                .map(|label| {
                    let m = marginals
                        .get(label)
                        .ok_or_else(|| Error::LabelMismatch(format!("no discrete entry for {label:?}")))?;
                    m.to_table(label, order)
                })
                .collect::<Result<Vec<_>>>()?;
            return JointCumulantTable::independent(&parts.iter().collect::<Vec<_>>());
        }
        let dep = self.dependence.as_ref().expect("checked above");
        let atoms = dep
            .atoms
            .iter()
            .map(|a| Ok((rationals(&a.point, "atom point")?, rational(&a.probability, "atom probability")?)))
            .collect::<Result<Vec<_>>>()?;
        JointMomentTable::from_atoms(self.labels.clone(), order, &atoms)?.to_cumulants()
    }
}

impl Marginal {
    fn to_table(&self, label: &str, order: usize) -> Result<JointCumulantTable<Scalar>> {
        match self {
            Marginal::Atoms { atoms, probabilities } => {
                if atoms.len() != probabilities.len() || atoms.is_empty() {
                    return Err(Error::InvalidInput(format!("{label:?}: atoms and probabilities differ in length")));
                }
                let points = rationals(atoms, label)?;
                let probs = rationals(probabilities, label)?;
                let law: Vec<_> = points.into_iter().map(|p| vec![p]).zip(probs).collect();
                JointMomentTable::from_atoms(vec![label.to_string()], order, &law)?.to_cumulants()
            }
            Marginal::Cumulants { cumulants } => {
                let mut r = rationals(cumulants, label)?;
                if r.len() > order {
                    r.truncate(order);
                }
                r.resize(order, Scalar::default());
                let table = Table::from_fn(vec![label.to_string()], order, |idx| r[idx.get(0) as usize - 1].clone())?;
                Ok(JointCumulantTable::new(table))
            }
        }
    }
}

pub(crate) fn json_error(e: serde_json::Error) -> Error {
    Error::Parse { line: e.line(), column: e.column(), message: e.to_string() }
}

/// Payload of a [`ReportFile`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportBody {
    Characterization(CharacterizationReport),
    Prop2(Prop2Report),
    Vector(VectorReport),
    Invariance(InvarianceTestReport),
    Reduction(ReductionReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub coeffs: Vec<f64>,
    pub rows: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// JSON report with the producing tool, its version and a SHA-256 digest
/// of the canonicalized input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input_digest: String,
    pub report: ReportBody,
}

impl ReportFile {
    pub fn new(command: &str, input: &serde_json::Value, report: ReportBody) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            input_digest: input_digest(input),
            report,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }
}

/// Hex SHA-256 of the compact JSON text of `value`. Object keys are sorted
/// by `serde_json`'s map, so equal documents hash equally.
pub fn input_digest(value: &serde_json::Value) -> String {
    let text = serde_json::to_string(value).expect("value serializes");
    hex::encode(Sha256::digest(text.as_bytes()))
}
