//! Plug-in joint cumulants and univariate k-statistics.
//!
//! The plug-in estimator replaces population moments by sample averages
//! and applies the exact moment→cumulant inversion, so its bias is
//! `O(1/n)`. Columns are centered first and the means are restored in the
//! order-one entries, which keeps the higher entries free of cancellation
//! against large location parameters.

use serde::{Deserialize, Serialize};

use super::samples::SampleMatrix;
use crate::cumulant::{graded_indices, joint_moments_to_joint_cumulants, JointCumulantTable, JointMomentTable, MultiIndex, Table};
use crate::error::{Error, Result};

/// Largest order the empirical tables support.
pub const MAX_EMPIRICAL_ORDER: usize = 6;

/// Plug-in joint cumulants of all columns up to `order`.
pub fn empirical_joint_cumulants(samples: &SampleMatrix, order: usize) -> Result<JointCumulantTable<f64>> {
    if order == 0 || order > MAX_EMPIRICAL_ORDER {
        return Err(Error::OutOfRange { what: "empirical order", requested: order, min: 1, max: MAX_EMPIRICAL_ORDER });
    }
    let (n, d) = (samples.rows(), samples.cols());
    if n < 10 * d {
        return Err(Error::InsufficientSample(format!("{n} rows for {d} columns; at least {} required", 10 * d)));
    }
    let means: Vec<f64> = (0..d).map(|j| mean(samples.column(j))).collect();
    let indices = graded_indices(d, order);
    let mut sums = vec![0.0; indices.len()];
    // powers[j][p] = (x_j - mean_j)^p for the current row
    let mut powers = vec![vec![1.0; order + 1]; d];
    for r in 0..n {
        for (j, pw) in powers.iter_mut().enumerate() {
            let c = samples.column(j)[r] - means[j];
            for p in 1..=order {
                pw[p] = pw[p - 1] * c;
            }
        }
        for (sum, idx) in sums.iter_mut().zip(&indices) {
            *sum += idx.counts().iter().enumerate().map(|(j, &c)| powers[j][c as usize]).product::<f64>();
        }
    }
    let nf = n as f64;
    let moments = Table::from_fn(samples.labels().to_vec(), order, |idx| {
        let pos = indices.iter().position(|i| i == idx).expect("same index set");
        sums[pos] / nf
    })?;
    let mut cumulants = joint_moments_to_joint_cumulants(&JointMomentTable::new(moments))?;
    for (j, &m) in means.iter().enumerate() {
        cumulants.table_mut().set(MultiIndex::unit(d, j, 1), m)?;
    }
    Ok(cumulants)
}

fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// Fisher's unbiased k-statistics `k_1..k_4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KStatistics {
    pub n: usize,
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub k4: f64,
}

pub fn k_statistics(x: &[f64]) -> Result<KStatistics> {
    let n = x.len();
    if n < 4 {
        return Err(Error::InsufficientSample(format!("k-statistics need at least 4 values, got {n}")));
    }
    let k1 = mean(x);
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &v in x {
        let c = v - k1;
        let c2 = c * c;
        m2 += c2;
        m3 += c2 * c;
        m4 += c2 * c2;
    }
    let nf = n as f64;
    let (m2, m3, m4) = (m2 / nf, m3 / nf, m4 / nf);
    let k2 = nf / (nf - 1.0) * m2;
    let k3 = nf * nf / ((nf - 1.0) * (nf - 2.0)) * m3;
    let k4 = nf * nf * ((nf + 1.0) * m4 - 3.0 * (nf - 1.0) * m2 * m2) / ((nf - 1.0) * (nf - 2.0) * (nf - 3.0));
    Ok(KStatistics { n, k1, k2, k3, k4 })
}

/// Standardized third and fourth cumulants of one column with their
/// standard errors under normality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CumulantDiagnostic {
    pub label: String,
    pub n: usize,
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub skewness_se: f64,
    pub excess_kurtosis: f64,
    pub kurtosis_se: f64,
}

impl CumulantDiagnostic {
    pub fn from_column(label: &str, x: &[f64]) -> Result<Self> {
        let k = k_statistics(x)?;
        if !(k.k2 > 0.0) {
            return Err(Error::Degenerate(label.to_string()));
        }
        let nf = k.n as f64;
        let skewness_se = (6.0 * nf * (nf - 1.0) / ((nf - 2.0) * (nf + 1.0) * (nf + 3.0))).sqrt();
        let kurtosis_se = 2.0 * skewness_se * ((nf * nf - 1.0) / ((nf - 3.0) * (nf + 5.0))).sqrt();
        Ok(Self {
            label: label.to_string(),
            n: k.n,
            mean: k.k1,
            variance: k.k2,
            skewness: k.k3 / k.k2.powf(1.5),
            skewness_se,
            excess_kurtosis: k.k4 / (k.k2 * k.k2),
            kurtosis_se,
        })
    }

    /// Both standardized cumulants within `z` standard errors of zero.
    pub fn consistent_with_normal(&self, z: f64) -> bool {
        self.skewness.abs() <= z * self.skewness_se && self.excess_kurtosis.abs() <= z * self.kurtosis_se
    }
}
