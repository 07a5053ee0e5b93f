//! Monte-Carlo check that the law of `T = a S₁ + Y + b S₂ + Z` depends on
//! `(a, b)` only through `a² + b²`.
//!
//! Each grid angle is its own task: the left side draws from lane
//! [`LANE_LEFT`] and the right side from [`LANE_RIGHT`] of that task's
//! substream, so samples at different angles are independent and the
//! two sides of one statistic are independent by construction. The pair
//! `(i, j)` uses task `i · len + j` of [`LANE_PERMUTATION`] when a
//! permutation p-value is needed.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::empirical::CumulantDiagnostic;
use super::generate::{SideGenerator, SideSampler};
use super::ks::{two_sample_ks_sorted, KsMethod};
use super::rng::{substream, LANE_LEFT, LANE_PERMUTATION, LANE_RIGHT};
use crate::error::{Error, Result};

pub const MIN_ANGLES: usize = 3;
pub const MIN_SAMPLE_SIZE: usize = 1_000;

/// One draw of the statistic together with the `S` columns behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct StatisticSample {
    pub t: Vec<f64>,
    pub s1: Vec<f64>,
    pub s2: Vec<f64>,
}

fn simulate_task(
    left: &SideSampler,
    right: &SideSampler,
    a: f64,
    b: f64,
    n: usize,
    seed: u64,
    task: u64,
) -> StatisticSample {
    let mut lrng = substream(seed, task, LANE_LEFT);
    let mut rrng = substream(seed, task, LANE_RIGHT);
    let mut out = StatisticSample { t: Vec::with_capacity(n), s1: Vec::with_capacity(n), s2: Vec::with_capacity(n) };
    for _ in 0..n {
        let (s1, y) = left.draw(&mut lrng);
        let (s2, z) = right.draw(&mut rrng);
        out.t.push(a * s1 + y + b * s2 + z);
        out.s1.push(s1);
        out.s2.push(s2);
    }
    out
}

/// `n` i.i.d. draws of `a S₁ + Y + b S₂ + Z`.
pub fn simulate_statistic(
    left: &SideGenerator,
    right: &SideGenerator,
    a: f64,
    b: f64,
    n: usize,
    seed: u64,
) -> Result<StatisticSample> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidParameter(format!("coefficients must be finite, got ({a}, {b})")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("sample size must be at least 1".into()));
    }
    let (l, r) = (SideSampler::new(left)?, SideSampler::new(right)?);
    Ok(simulate_task(&l, &r, a, b, n, seed, 0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    /// Radians.
    pub theta: f64,
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairTest {
    pub i: usize,
    pub j: usize,
    pub statistic: f64,
    pub p_value: f64,
    pub method: KsMethod,
    pub rejected: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvarianceTestReport {
    pub radius: f64,
    pub n: usize,
    pub seed: u64,
    pub alpha: f64,
    pub grid: Vec<GridPoint>,
    pub pairs: Vec<PairTest>,
    pub rejections: usize,
    /// Largest rejection count compatible with invariance.
    pub h0_band: usize,
    pub within_band: bool,
    /// Standardized cumulants of `S₁` and `S₂` from the first grid point.
    pub diagnostics: Vec<CumulantDiagnostic>,
}

impl InvarianceTestReport {
    pub fn min_p_value(&self) -> f64 {
        self.pairs.iter().map(|p| p.p_value).fold(1.0, f64::min)
    }

    pub fn pair(&self, i: usize, j: usize) -> Option<&PairTest> {
        self.pairs.iter().find(|p| p.i == i && p.j == j)
    }

    pub fn summary(&self) -> String {
        format!(
            "{} of {} pairwise KS tests rejected at alpha = {} (band {}), min p = {:.3e}: {}",
            self.rejections,
            self.pairs.len(),
            self.alpha,
            self.h0_band,
            self.min_p_value(),
            if self.within_band { "consistent with invariance" } else { "invariance rejected" }
        )
    }
}

/// `⌊pα + 3√(pα(1−α))⌋`: rejections above this count are evidence against
/// invariance at roughly the 99% level.
pub fn h0_band(pairs: usize, alpha: f64) -> usize {
    let p = pairs as f64;
    (p * alpha + 3.0 * (p * alpha * (1.0 - alpha)).sqrt()).floor() as usize
}

/// KS tests between the laws of `T` at every pair of grid angles (radians).
pub fn invariance_test(
    left: &SideGenerator,
    right: &SideGenerator,
    radius: f64,
    angles: &[f64],
    n: usize,
    seed: u64,
    alpha: f64,
) -> Result<InvarianceTestReport> {
    if angles.len() < MIN_ANGLES {
        return Err(Error::InvalidGrid(format!("{} angles given; at least {MIN_ANGLES} required", angles.len())));
    }
    if angles.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidGrid("angles must be finite".into()));
    }
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::InvalidParameter(format!("radius must be positive, got {radius}")));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if n < MIN_SAMPLE_SIZE {
        return Err(Error::InsufficientSample(format!("n = {n}; at least {MIN_SAMPLE_SIZE} required")));
    }
    let (l, r) = (SideSampler::new(left)?, SideSampler::new(right)?);
    let grid: Vec<GridPoint> = angles
        .iter()
        .map(|&theta| GridPoint { theta, a: radius * theta.cos(), b: radius * theta.sin() })
        .collect();

    let samples: Vec<StatisticSample> = grid
        .par_iter()
        .enumerate()
        .map(|(task, g)| {
            let mut s = simulate_task(&l, &r, g.a, g.b, n, seed, task as u64);
            s.t.sort_by(f64::total_cmp);
            s
        })
        .collect();

    let len = grid.len();
    let index_pairs: Vec<(usize, usize)> = (0..len).flat_map(|i| (i + 1..len).map(move |j| (i, j))).collect();
    let pairs: Vec<PairTest> = index_pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut rng = substream(seed, (i * len + j) as u64, LANE_PERMUTATION);
            let ks = two_sample_ks_sorted(&samples[i].t, &samples[j].t, &mut rng)?;
            Ok(PairTest { i, j, statistic: ks.statistic, p_value: ks.p_value, method: ks.method, rejected: ks.p_value < alpha })
        })
        .collect::<Result<_>>()?;

    let diagnostics = vec![
        CumulantDiagnostic::from_column("S1", &samples[0].s1)?,
        CumulantDiagnostic::from_column("S2", &samples[0].s2)?,
    ];
    let rejections = pairs.iter().filter(|p| p.rejected).count();
    let h0_band = h0_band(pairs.len(), alpha);
    Ok(InvarianceTestReport {
        radius,
        n,
        seed,
        alpha,
        grid,
        pairs,
        rejections,
        h0_band,
        within_band: rejections <= h0_band,
        diagnostics,
    })
}
