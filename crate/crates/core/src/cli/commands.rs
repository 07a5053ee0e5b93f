//! The four subcommands as library functions.
//!
//! Each command returns an [`Outcome`]: the exit status, a one-line
//! summary for the terminal and the document that goes to the output file.

use std::fs;
use std::path::Path;

use serde_json::json;

use super::formats::{format_sequence, parse_sequence, ReductionReport, ReportBody, ReportFile, ScenarioFile};
use crate::cumulant::{cumulants_to_moments, moments_to_cumulants, CumulantSequence, MomentSequence};
use crate::error::{Error, Result};
use crate::estimation::{invariance_test, SampleMatrix, SideGenerator};
use crate::symbolic::{
    characterize, characterize_prop2, characterize_vector, Prop2Report, Prop2Spec, ScenarioSpec, Side, VectorReport,
    VectorSpec, Verdict, DEFAULT_ORDER,
};

/// Largest order `convert` accepts.
pub const MAX_SEQUENCE_ORDER: usize = 12;
/// `reduce` passes when the largest residual is below this.
pub const REDUCTION_TOLERANCE: f64 = 1e-12;

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// Conversion done, scenario characterized, invariance not rejected,
    /// residual within tolerance.
    Success,
    /// Violation, rejection or residual above tolerance.
    Negative,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::Negative => 2,
        }
    }
}

/// Exit code for operational errors.
pub const ERROR_CODE: i32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub summary: String,
    pub document: String,
}

pub(crate) fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceKind {
    Moments,
    Cumulants,
}

/// Converts a moment sequence `m_1..m_K` to `r_1..r_K` or back.
pub fn cmd_convert(from: SequenceKind, order: Option<usize>, input: &Path) -> Result<Outcome> {
    let mut values = parse_sequence(&read_file(input)?)?;
    let order = order.unwrap_or(values.len());
    if order == 0 || order > MAX_SEQUENCE_ORDER {
        return Err(Error::OutOfRange { what: "order", requested: order, min: 1, max: MAX_SEQUENCE_ORDER });
    }
    if order > values.len() {
        return Err(Error::InvalidInput(format!("order {order} requested but the file has {} values", values.len())));
    }
    values.truncate(order);
    let (converted, to) = match from {
        SequenceKind::Moments => (moments_to_cumulants(&MomentSequence::new(values)).values().to_vec(), "cumulants"),
        SequenceKind::Cumulants => (cumulants_to_moments(&CumulantSequence::new(values)).raw().to_vec(), "moments"),
    };
    let document = format_sequence(&converted);
    Ok(Outcome { status: Status::Success, summary: format!("{to}: {}", document.trim_end()), document })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Two variables per side, `(S₁, Y)` and `(S₂, Z)`.
    #[default]
    Pair,
    /// Both statistics over `(X, Y)` and `(Z, T)`.
    Prop2,
    /// `m` variables plus an offset on the left.
    Vector(usize),
}

/// Runs the symbolic check selected by `mode` on a scenario file.
pub fn cmd_characterize(scenario: &Path, order: Option<usize>, mode: Mode) -> Result<Outcome> {
    let file = ScenarioFile::from_json(&read_file(scenario)?)?;
    let order = order.or(file.order).unwrap_or(DEFAULT_ORDER);
    let left = file.left.to_table(order)?;
    let right = file.right.to_table(order)?;
    let (verdict, summary, body, mode_name) = match mode {
        Mode::Pair => {
            let mut spec = ScenarioSpec::new(Side::pair(left)?, Side::pair(right)?, order)?;
            if let Some([a, b]) = &file.coeff_vars {
                spec = spec.with_coeff_vars(a, b)?;
            }
            let report = characterize(&spec)?;
            (report.verdict, report.summary(), ReportBody::Characterization(report), "pair".to_string())
        }
        Mode::Prop2 => {
            let report = characterize_prop2(&Prop2Spec::new(left, right, order)?)?;
            (report.verdict, prop2_summary(&report), ReportBody::Prop2(report), "prop2".to_string())
        }
        Mode::Vector(m) => {
            if m == 0 || m + 1 != left.dim() {
                return Err(Error::InvalidInput(format!(
                    "--vector {m} does not match the left side: {} labels, i.e. {} variables before the offset",
                    left.dim(),
                    left.dim().saturating_sub(1)
                )));
            }
            let report = characterize_vector(&VectorSpec::new(left, right, order)?)?;
            (report.verdict, vector_summary(&report), ReportBody::Vector(report), format!("vector:{m}"))
        }
    };
    let input = json!({ "scenario": file.canonical_value(), "order": order, "mode": mode_name });
    let status = if verdict == Verdict::Characterized { Status::Success } else { Status::Negative };
    Ok(Outcome { status, summary, document: ReportFile::new("characterize", &input, body).to_json() })
}

fn prop2_summary(r: &Prop2Report) -> String {
    match r.verdict {
        Verdict::Characterized => format!("characterized: both pairs normal and independent up to order {}", r.order),
        Verdict::Violated => {
            let failed: Vec<&str> = [("first statistic", &r.first), ("second statistic", &r.second)]
                .into_iter()
                .filter(|(_, rep)| !rep.is_characterized())
                .map(|(name, _)| name)
                .collect();
            if failed.is_empty() {
                format!("violated: {} mixed cumulants left undetermined or nonzero", r.mixed.len())
            } else {
                format!("violated: {} fails", failed.join(" and "))
            }
        }
    }
}

fn vector_summary(r: &VectorReport) -> String {
    let failed = r.all_runs().filter(|run| !run.report.is_characterized()).count();
    match r.verdict {
        Verdict::Characterized => {
            format!("characterized: {} variables consistent with joint normality up to order {}", r.variables.len(), r.order)
        }
        Verdict::Violated => {
            format!("violated: {failed} runs failed, {} joint-normality findings", r.joint_normality.len())
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulateOptions {
    pub radius: f64,
    /// Degrees.
    pub angles: Vec<f64>,
    pub n: usize,
    pub seed: u64,
    pub alpha: f64,
}

impl SimulateOptions {
    pub fn new(seed: u64) -> Self {
        Self { radius: 1.0, angles: vec![0.0, 22.5, 45.0, 67.5, 90.0], n: 100_000, seed, alpha: 0.05 }
    }
}

fn side_generator(path: &Path) -> Result<(SideGenerator, serde_json::Value)> {
    let text = read_file(path)?;
    let side: SideGenerator = serde_json::from_str(&text).map_err(super::formats::json_error)?;
    let value = serde_json::to_value(&side).expect("generator serializes");
    Ok((side, value))
}

/// Monte-Carlo invariance test on the given angle grid.
pub fn cmd_simulate(left: &Path, right: &Path, opts: &SimulateOptions) -> Result<Outcome> {
    let (l, lv) = side_generator(left)?;
    let (r, rv) = side_generator(right)?;
    let radians: Vec<f64> = opts.angles.iter().map(|d| d.to_radians()).collect();
    let report = invariance_test(&l, &r, opts.radius, &radians, opts.n, opts.seed, opts.alpha)?;
    let status = if report.within_band { Status::Success } else { Status::Negative };
    let input = json!({
        "left": lv, "right": rv, "radius": opts.radius, "angles_degrees": opts.angles,
        "n": opts.n, "seed": opts.seed, "alpha": opts.alpha,
    });
    let summary = report.summary();
    Ok(Outcome { status, summary, document: ReportFile::new("simulate", &input, ReportBody::Invariance(report)).to_json() })
}

/// Residual of the quadratic completion identity on every CSV row.
pub fn cmd_reduce(coeffs: &[f64], samples: &Path) -> Result<Outcome> {
    let text = read_file(samples)?;
    let matrix = SampleMatrix::from_csv(text.as_bytes())?;
    let max_residual = crate::symbolic::quadratic_reduction_check(coeffs, &matrix)?;
    let passed = max_residual < REDUCTION_TOLERANCE;
    let columns: Vec<&[f64]> = (0..matrix.cols()).map(|j| matrix.column(j)).collect();
    let input = json!({ "coeffs": coeffs, "labels": matrix.labels(), "columns": columns });
    let report = ReductionReport { coeffs: coeffs.to_vec(), rows: matrix.rows(), max_residual, tolerance: REDUCTION_TOLERANCE, passed };
    Ok(Outcome {
        status: if passed { Status::Success } else { Status::Negative },
        summary: format!("max residual {max_residual:e} over {} rows", matrix.rows()),
        document: ReportFile::new("reduce", &input, ReportBody::Reduction(report)).to_json(),
    })
}
