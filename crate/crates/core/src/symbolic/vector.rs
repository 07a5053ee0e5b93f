//! Many-variable version: `Σ aᵢXᵢ + Y + Z` with `(X₁..X_m, Y)` independent
//! of `(X_{m+1}..X_n, Z)`. Replays the reduction to the two-sided check:
//! normalized combinations in the `S` roles, then single variables with a
//! second variable folded into the offset to expose pairwise covariances.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::characterize::{characterize_unchecked, CharacterizationReport, Constraint, Verdict};
use super::scenario::{RootScaled, ScenarioSpec, Side};
use crate::cumulant::JointCumulantTable;
use crate::error::{Error, Result};
use crate::scalar::{serde_rational, Scalar};

/// A table extended by `U = Σ aᵢXᵢ` (stored unnormalized) together with
/// `scale = Σ aᵢ²`, so that `S = U / √scale`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedCombination {
    table: JointCumulantTable<Scalar>,
    label: String,
    scale: Scalar,
}

impl NormalizedCombination {
    pub fn table(&self) -> &JointCumulantTable<Scalar> {
        &self.table
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn scale(&self) -> &Scalar {
        &self.scale
    }

    /// Joint cumulant of the normalized table at `counts` (the last
    /// position counts copies of `S`).
    pub fn normalized(&self, counts: &[u8]) -> Result<RootScaled> {
        let w = *counts.last().unwrap_or(&0) as usize;
        Ok(RootScaled::normalize(self.table.value(counts)?, w, &self.scale))
    }

    /// `r_k(S)` for the normalized combination.
    pub fn cumulant(&self, k: u8) -> Result<RootScaled> {
        let mut counts = vec![0u8; self.table.dim()];
        *counts.last_mut().unwrap() = k;
        self.normalized(&counts)
    }

    /// `(S, offset)` side for the two-sided check.
    pub fn side(&self, offset_label: &str) -> Result<Side> {
        let marginal = self.table.marginal(&[&self.label, offset_label])?;
        Side::weighted(marginal, &self.label, offset_label, self.scale.clone())
    }
}

/// Adjoins `S = Σ aᵢXᵢ / √(Σ aᵢ²)` to `jc` under the name `label`.
pub fn normalize_combination(
    coeffs: &[Scalar],
    jc: &JointCumulantTable<Scalar>,
    label: &str,
) -> Result<NormalizedCombination> {
    if coeffs.iter().all(Zero::is_zero) {
        return Err(Error::InvalidInput("combination coefficients are all zero".into()));
    }
    let scale = coeffs.iter().fold(Scalar::zero(), |acc, c| acc + c * c);
    let table = jc.adjoin_combination(label, coeffs)?;
    Ok(NormalizedCombination { table, label: label.to_string(), scale })
}

/// Left `(X₁..X_m, Y)` and right `(X_{m+1}..X_n, Z)`; in each table the
/// last label is the offset variable.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorSpec {
    pub left: JointCumulantTable<Scalar>,
    pub right: JointCumulantTable<Scalar>,
    pub order: usize,
}

impl VectorSpec {
    pub fn new(
        left: JointCumulantTable<Scalar>,
        right: JointCumulantTable<Scalar>,
        order: usize,
    ) -> Result<Self> {
        for t in [&left, &right] {
            if t.dim() < 2 {
                return Err(Error::InvalidInput(format!(
                    "side {:?} needs at least one X variable and an offset",
                    t.labels()
                )));
            }
            if t.order() < order {
                return Err(Error::InvalidTable(format!("table order {} < {order}", t.order())));
            }
        }
        if order < 3 {
            return Err(Error::OutOfRange { what: "order", requested: order, min: 3, max: usize::MAX });
        }
        Ok(Self { left, right, order })
    }

    /// Number of X variables on the left (`m`).
    pub fn split(&self) -> usize {
        self.left.dim() - 1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Run {
    pub description: String,
    pub report: CharacterizationReport,
}

/// A nonzero entry that joint normality with zero means, zero covariances
/// and common variance forbids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanFinding {
    pub symbol: String,
    #[serde(with = "serde_rational")]
    pub value: Scalar,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariableSummary {
    pub label: String,
    #[serde(with = "serde_rational")]
    pub mean: Scalar,
    #[serde(with = "serde_rational")]
    pub variance: Scalar,
    pub offset: String,
    #[serde(with = "serde_rational")]
    pub offset_covariance: Scalar,
    /// `r_k(Xᵢ) = 0` for every `3 <= k <= K`.
    pub higher_cumulants_vanish: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorReport {
    pub verdict: Verdict,
    pub order: usize,
    pub split: usize,
    pub combination_runs: Vec<Run>,
    pub pair_runs: Vec<Run>,
    pub pair_constraints: Vec<Constraint>,
    pub joint_normality: Vec<ScanFinding>,
    pub variables: Vec<VariableSummary>,
    pub implied: Vec<String>,
}

impl VectorReport {
    pub fn all_runs(&self) -> impl Iterator<Item = &Run> {
        self.combination_runs.iter().chain(&self.pair_runs)
    }
}

fn coefficient_choices(dim: usize) -> Vec<(&'static str, Vec<Scalar>)> {
    let one = Scalar::one;
    vec![
        ("ones", vec![one(); dim]),
        ("ramp", (1..=dim as i64).map(crate::scalar::int).collect()),
        ("alternating", (0..dim).map(|i| if i % 2 == 0 { one() } else { -one() }).collect()),
    ]
}

fn unit(dim: usize, i: usize) -> Vec<Scalar> {
    (0..dim).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()
}

/// Coefficients over the X variables, extended by a zero for the offset.
fn with_offset(coeffs: &[Scalar]) -> Vec<Scalar> {
    let mut c = coeffs.to_vec();
    c.push(Scalar::zero());
    c
}

fn x_labels(t: &JointCumulantTable<Scalar>) -> Vec<String> {
    t.labels()[..t.dim() - 1].to_vec()
}

fn offset_label(t: &JointCumulantTable<Scalar>) -> String {
    t.labels()[t.dim() - 1].clone()
}

fn describe(coeffs: &[Scalar]) -> String {
    coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

/// Checks the many-variable statement up to order `K`.
///
/// Final independence of the Xᵢ follows from joint normality with zero
/// covariances; it is reported as implied, not derived here.
pub fn characterize_vector(spec: &VectorSpec) -> Result<VectorReport> {
    let (left, right, order) = (&spec.left, &spec.right, spec.order);
    let (lx, rx) = (x_labels(left), x_labels(right));
    let (ly, rz) = (offset_label(left), offset_label(right));
    for (t, labels) in [(left, &lx), (right, &rx)] {
        for (i, label) in labels.iter().enumerate() {
            if t.marginal_value(i, 2)?.is_zero() {
                return Err(Error::Degenerate(label.clone()));
            }
        }
    }

    // (i) normalized combinations in both S roles
    let mut plans: Vec<(String, Vec<Scalar>, Vec<Scalar>)> = Vec::new();
    let lchoices = coefficient_choices(lx.len());
    let rchoices = coefficient_choices(rx.len());
    for ((name, lc), (_, rc)) in lchoices.into_iter().zip(rchoices) {
        plans.push((name.to_string(), lc, rc));
    }
    for i in 0..lx.len().max(rx.len()) {
        let (li, ri) = (i % lx.len(), i % rx.len());
        plans.push((format!("{} vs {}", lx[li], rx[ri]), unit(lx.len(), li), unit(rx.len(), ri)));
    }
    let mut seen: Vec<(Vec<Scalar>, Vec<Scalar>)> = Vec::new();
    let mut combination_runs = Vec::new();
    for (name, lc, rc) in plans {
        if seen.iter().any(|(a, b)| *a == lc && *b == rc) {
            continue;
        }
        let ls = normalize_combination(&with_offset(&lc), left, "S1")?.side(&ly)?;
        let rs = normalize_combination(&with_offset(&rc), right, "S2")?.side(&rz)?;
        let report = characterize_unchecked(&ScenarioSpec::new(ls, rs, order)?)?;
        combination_runs.push(Run {
            description: format!("{name}: S1 ~ ({}), S2 ~ ({})", describe(&lc), describe(&rc)),
            report,
        });
        seen.push((lc, rc));
    }

    // (ii) pairwise covariances through the offset role
    let mut pair_runs = Vec::new();
    let mut pair_constraints = Vec::new();
    let first_right = Side::new(right.marginal(&[&rx[0], &rz])?, &rx[0], &rz)?;
    let first_left = Side::new(left.marginal(&[&lx[0], &ly])?, &lx[0], &ly)?;
    for (t, xs, off, on_left) in [(left, &lx, &ly, true), (right, &rx, &rz, false)] {
        for i in 0..xs.len() {
            for j in i + 1..xs.len() {
                let folded = format!("{}+{}", xs[j], off);
                let mut coeffs = vec![Scalar::zero(); t.dim()];
                coeffs[j] = Scalar::one();
                coeffs[t.dim() - 1] = Scalar::one();
                let ext = t.adjoin_combination(&folded, &coeffs)?;
                let side = Side::new(ext.marginal(&[&xs[i], &folded])?, &xs[i], &folded)?;
                let scenario = if on_left {
                    ScenarioSpec::new(side, first_right.clone(), order)?
                } else {
                    ScenarioSpec::new(first_left.clone(), side, order)?
                };
                let report = characterize_unchecked(&scenario)?;
                if report.verdict == Verdict::Characterized {
                    let through = ext.value(&pair_counts(ext.dim(), i, ext.dim() - 1))?.clone();
                    let direct = t.value(&pair_counts(t.dim(), i, t.dim() - 1))?.clone();
                    pair_constraints.push(Constraint::zero(
                        format!("cov({},{})", xs[i], xs[j]),
                        RootScaled::rational(through - direct),
                    ));
                }
                pair_runs.push(Run { description: format!("S = {}, offset = {folded}", xs[i]), report });
            }
        }
    }

    // (iii) joint normality scan over the X variables
    let mut joint_normality = Vec::new();
    let reference_var = left.marginal_value(0, 2)?.clone();
    for (t, xs) in [(left, &lx), (right, &rx)] {
        let off = t.dim() - 1;
        for (idx, v) in t.iter() {
            if idx.get(off) != 0 || idx.total() > order || v.is_zero() {
                continue;
            }
            let pure_variance = idx.total() == 2 && idx.support_size() == 1;
            if pure_variance {
                continue;
            }
            joint_normality.push(ScanFinding { symbol: cumulant_symbol(xs, idx.counts()), value: v.clone() });
        }
        for (i, x) in xs.iter().enumerate() {
            let diff = t.marginal_value(i, 2)? - &reference_var;
            if !diff.is_zero() {
                joint_normality.push(ScanFinding { symbol: format!("Var[{x}] - Var[{}]", lx[0]), value: diff });
            }
        }
    }

    let mut variables = Vec::new();
    for (t, xs, off) in [(left, &lx, &ly), (right, &rx, &rz)] {
        for (i, x) in xs.iter().enumerate() {
            let higher = (3..=order)
                .map(|k| t.marginal_value(i, k as u8).map(|v| v.is_zero()))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .all(|z| z);
            variables.push(VariableSummary {
                label: x.clone(),
                mean: t.marginal_value(i, 1)?.clone(),
                variance: t.marginal_value(i, 2)?.clone(),
                offset: off.clone(),
                offset_covariance: t.value(&pair_counts(t.dim(), i, t.dim() - 1))?.clone(),
                higher_cumulants_vanish: higher,
            });
        }
    }

    let all_pass = combination_runs.iter().chain(&pair_runs).all(|r| r.report.is_characterized())
        && pair_constraints.iter().all(|c| c.holds)
        && joint_normality.is_empty();
    let mut implied = Vec::new();
    if all_pass {
        let names: Vec<&str> = lx.iter().chain(&rx).map(String::as_str).collect();
        implied.push(format!(
            "{} share the law N(0, {reference_var}) up to order {order}",
            names.join(", ")
        ));
        implied.push(format!(
            "{} are jointly normal and uncorrelated, hence independent (up to order {order})",
            names.join(", ")
        ));
        implied.push(format!("cov(Xᵢ,{ly}) = cov(Xᵢ,{rz}) = 0 for every i"));
    }
    Ok(VectorReport {
        verdict: if all_pass { Verdict::Characterized } else { Verdict::Violated },
        order,
        split: spec.split(),
        combination_runs,
        pair_runs,
        pair_constraints,
        joint_normality,
        variables,
        implied,
    })
}

fn pair_counts(dim: usize, i: usize, j: usize) -> Vec<u8> {
    let mut c = vec![0u8; dim];
    c[i] += 1;
    c[j] += 1;
    c
}

fn cumulant_symbol(labels: &[String], counts: &[u8]) -> String {
    let args: Vec<String> = labels
        .iter()
        .zip(counts)
        .flat_map(|(l, &c)| std::iter::repeat_n(l.clone(), c as usize))
        .collect();
    format!("r_{}({})", args.len(), args.join(","))
}
