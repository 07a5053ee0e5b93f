//! Two statistics, `aX + Y + bZ + T` and `X + aY + Z + bT`. The first
//! forces `r(X^i, Y^l) = 0` for `i != 2`, the second for `l != 2`; the
//! report scans every mixed cumulant of `(X, Y)` and `(Z, T)` and says
//! which statistic excludes it.

use serde::{Deserialize, Serialize};

use super::characterize::{characterize, CharacterizationReport, Constraint, Verdict};
use super::scenario::{ScenarioSpec, Side};
use crate::cumulant::{independence_violations, JointCumulantTable};
use crate::error::{Error, Result};
use crate::scalar::{serde_rational, Scalar};

/// `(X, Y)` on the left and `(Z, T)` on the right.
#[derive(Debug, Clone, PartialEq)]
pub struct Prop2Spec {
    pub left: JointCumulantTable<Scalar>,
    pub right: JointCumulantTable<Scalar>,
    pub order: usize,
}

impl Prop2Spec {
    pub fn new(
        left: JointCumulantTable<Scalar>,
        right: JointCumulantTable<Scalar>,
        order: usize,
    ) -> Result<Self> {
        for t in [&left, &right] {
            if t.dim() != 2 {
                return Err(Error::LabelMismatch(format!(
                    "expected two variables per side, found {:?}",
                    t.labels()
                )));
            }
        }
        Ok(Self { left, right, order })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixedFinding {
    pub labels: [String; 2],
    pub counts: [u8; 2],
    #[serde(with = "serde_rational")]
    pub value: Scalar,
    /// Which statistics (1, 2) rule this entry out; empty means neither.
    pub excluded_by: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prop2Report {
    pub verdict: Verdict,
    pub order: usize,
    pub first: CharacterizationReport,
    pub second: CharacterizationReport,
    pub constraints: Vec<Constraint>,
    pub mixed: Vec<MixedFinding>,
    pub implied: Vec<String>,
}

pub fn characterize_prop2(spec: &Prop2Spec) -> Result<Prop2Report> {
    let (xl, yl) = (spec.left.labels()[0].clone(), spec.left.labels()[1].clone());
    let (zl, tl) = (spec.right.labels()[0].clone(), spec.right.labels()[1].clone());

    let first_spec = ScenarioSpec::new(
        Side::new(spec.left.clone(), &xl, &yl)?,
        Side::new(spec.right.clone(), &zl, &tl)?,
        spec.order,
    )?;
    let second_spec = ScenarioSpec::new(
        Side::new(spec.left.clone(), &yl, &xl)?,
        Side::new(spec.right.clone(), &tl, &zl)?,
        spec.order,
    )?;
    let first = characterize(&first_spec)?;
    let second = characterize(&second_spec)?;

    let mut constraints = Vec::new();
    for report in [&first, &second] {
        if let Some(c) = report.constraints.iter().find(|c| c.symbol.starts_with("Var[")) {
            constraints.push(c.clone());
        }
    }

    let mut mixed = Vec::new();
    for t in [&spec.left, &spec.right] {
        let labels = [t.labels()[0].clone(), t.labels()[1].clone()];
        let groups = vec![vec![labels[0].clone()], vec![labels[1].clone()]];
        for (idx, value) in independence_violations(t, &groups, spec.order)? {
            let counts = [idx.get(0), idx.get(1)];
            let mut excluded_by = Vec::new();
            if counts[0] != 2 {
                excluded_by.push(1);
            }
            if counts[1] != 2 {
                excluded_by.push(2);
            }
            mixed.push(MixedFinding { labels: labels.clone(), counts, value, excluded_by });
        }
    }

    let pass = first.is_characterized() && second.is_characterized() && mixed.is_empty();
    let mut implied = Vec::new();
    if pass {
        implied.push(format!(
            "{xl}, {yl}, {zl}, {tl} are independent centered normals up to order {}",
            spec.order
        ));
    }
    Ok(Prop2Report {
        verdict: if pass { Verdict::Characterized } else { Verdict::Violated },
        order: spec.order,
        first,
        second,
        constraints,
        mixed,
        implied,
    })
}
