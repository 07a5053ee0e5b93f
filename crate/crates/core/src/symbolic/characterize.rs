//! The two-sided characterization: if every cumulant of
//! `aS₁ + Y + bS₂ + Z` depends on `(a, b)` through `a² + b²` only, then up
//! to the checked order `S₁` and `S₂` are centered normal with a common
//! variance and uncorrelated with their offsets.

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::poly::format_monomial;
use super::radial::{is_radial_weighted, RadialDecision};
use super::scenario::{expand_statistic, RootScaled, ScenarioSpec, Side};
use crate::error::{Error, Result};
use crate::scalar::{serde_rational, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Normal up to the checked order; never an unconditional claim.
    Characterized,
    Violated,
}

/// A derived identity `symbol = 0`, re-read from the input tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub symbol: String,
    pub value: RootScaled,
    pub holds: bool,
}

impl Constraint {
    pub(crate) fn zero(symbol: String, value: RootScaled) -> Self {
        let holds = value.is_zero();
        Self { symbol, value, holds }
    }
}

/// Cumulant order `k` at which the expansion is not radial, with the first
/// offending monomial in graded order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub order: usize,
    pub monomial: String,
    pub exponents: Vec<u32>,
    #[serde(with = "serde_rational")]
    pub coefficient: Scalar,
    #[serde(with = "serde_rational")]
    pub expected: Scalar,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expansion {
    pub order: usize,
    pub polynomial: String,
    pub decision: RadialDecision,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterizationReport {
    pub verdict: Verdict,
    pub order: usize,
    /// Labels in the roles `(S₁, Y, S₂, Z)`.
    pub roles: [String; 4],
    pub coeff_vars: [String; 2],
    pub constraints: Vec<Constraint>,
    pub violations: Vec<Violation>,
    pub expansions: Vec<Expansion>,
    /// Shared variance of the normalized `S₁`, `S₂` when characterized.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rational")]
    pub common_variance: Option<Scalar>,
}

impl CharacterizationReport {
    pub fn is_characterized(&self) -> bool {
        self.verdict == Verdict::Characterized
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn constraint(&self, symbol: &str) -> Option<&Constraint> {
        self.constraints.iter().find(|c| c.symbol == symbol)
    }

    /// One-line description, e.g. for terminal output.
    pub fn summary(&self) -> String {
        match (self.verdict, self.first_violation()) {
            (Verdict::Characterized, _) => format!(
                "characterized: {} and {} normal up to order {} with common variance {}",
                self.roles[0],
                self.roles[2],
                self.order,
                self.common_variance.as_ref().map(|v| v.to_string()).unwrap_or_default()
            ),
            (Verdict::Violated, Some(v)) => format!(
                "violated at k={}: witness {} with coefficient {}",
                v.order, v.monomial, v.coefficient
            ),
            (Verdict::Violated, None) => "violated".into(),
        }
    }
}

pub(crate) mod opt_rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Scalar>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(x) => serde_rational::serialize(x, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Scalar>, D::Error> {
        let text = Option::<String>::deserialize(d)?;
        text.map(|t| crate::scalar::parse_rational(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}

fn require_nondegenerate(side: &Side) -> Result<()> {
    if side.mixed(2, 0)?.is_zero() {
        return Err(Error::Degenerate(side.s_label().to_string()));
    }
    Ok(())
}

/// Runs the radial check at every order `1..=K` and, when all pass, lists
/// the implied constraints verified against the tables.
pub fn characterize(spec: &ScenarioSpec) -> Result<CharacterizationReport> {
    if spec.order < 3 {
        return Err(Error::OutOfRange { what: "order", requested: spec.order, min: 3, max: usize::MAX });
    }
    require_nondegenerate(&spec.left)?;
    require_nondegenerate(&spec.right)?;
    characterize_unchecked(spec)
}

/// [`characterize`] without the order and nondegeneracy preconditions.
pub(crate) fn characterize_unchecked(spec: &ScenarioSpec) -> Result<CharacterizationReport> {
    let (wl, wr) = (spec.left.weight(), spec.right.weight());
    let expansions: Vec<Expansion> = (1..=spec.order)
        .into_par_iter()
        .map(|k| {
            let p = expand_statistic(spec, k)?;
            Ok(Expansion { order: k, polynomial: p.to_string(), decision: is_radial_weighted(&p, wl, wr)? })
        })
        .collect::<Result<_>>()?;

    let violations: Vec<Violation> = expansions
        .iter()
        .filter_map(|e| match &e.decision {
            RadialDecision::NotRadial(w) => Some(Violation {
                order: e.order,
                monomial: format_monomial(&spec.coeff_vars, &w.exponents),
                exponents: w.exponents.clone(),
                coefficient: w.coefficient.clone(),
                expected: w.expected.clone(),
            }),
            RadialDecision::Radial(_) => None,
        })
        .collect();

    let roles = [
        spec.left.s_label().to_string(),
        spec.left.y_label().to_string(),
        spec.right.s_label().to_string(),
        spec.right.y_label().to_string(),
    ];
    let mut report = CharacterizationReport {
        verdict: Verdict::Violated,
        order: spec.order,
        roles,
        coeff_vars: spec.coeff_vars.clone(),
        constraints: Vec::new(),
        violations,
        expansions,
        common_variance: None,
    };
    if report.violations.is_empty() {
        report.constraints = implied_constraints(spec)?;
        debug_assert!(report.constraints.iter().all(|c| c.holds));
        report.verdict = Verdict::Characterized;
        report.common_variance = Some(spec.left.variance()?);
    }
    Ok(report)
}

fn implied_constraints(spec: &ScenarioSpec) -> Result<Vec<Constraint>> {
    let mut out = Vec::new();
    let sides = [&spec.left, &spec.right];
    for side in sides {
        out.push(Constraint::zero(format!("E[{}]", side.s_label()), side.normalized_mixed(1, 0)?));
    }
    for side in sides {
        out.push(Constraint::zero(
            format!("cov({},{})", side.s_label(), side.y_label()),
            side.normalized_mixed(1, 1)?,
        ));
    }
    for k in 3..=spec.order {
        for side in sides {
            out.push(Constraint::zero(
                format!("r_{k}({})", side.s_label()),
                side.normalized_mixed(k, 0)?,
            ));
        }
    }
    let diff = spec.left.variance()? - spec.right.variance()?;
    out.push(Constraint::zero(
        format!("Var[{}] - Var[{}]", spec.left.s_label(), spec.right.s_label()),
        RootScaled::rational(diff),
    ));
    Ok(out)
}
