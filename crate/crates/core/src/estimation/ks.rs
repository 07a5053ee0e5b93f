//! Two-sample Kolmogorov–Smirnov test.
//!
//! When both samples have at least [`ASYMPTOTIC_MIN_SIZE`] points the
//! p-value comes from the limiting Kolmogorov distribution with Stephens'
//! small-sample correction. Below that it is a permutation p-value
//! `(1 + #{D* ≥ D}) / (1 + B)` with `B = 999` relabelings of the pooled
//! sample.

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const ASYMPTOTIC_MIN_SIZE: usize = 10_000;
pub const PERMUTATIONS: usize = 999;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KsMethod {
    Asymptotic,
    Permutation,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
    pub method: KsMethod,
}

/// `sup |F_x − F_y|` for two ascending samples.
pub fn ks_statistic_sorted(x: &[f64], y: &[f64]) -> f64 {
    let (n, m) = (x.len() as f64, y.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < x.len() && j < y.len() {
        let v = x[i].min(y[j]);
        while i < x.len() && x[i] <= v {
            i += 1;
        }
        while j < y.len() && y[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    d
}

pub fn ks_statistic(x: &[f64], y: &[f64]) -> f64 {
    ks_statistic_sorted(&sorted(x), &sorted(y))
}

fn sorted(x: &[f64]) -> Vec<f64> {
    let mut v = x.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// Survival function of the Kolmogorov distribution, `P(K > λ)`.
pub fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    let p = if lambda < 1.0 {
        // Jacobi theta form converges fast for small λ.
        let s: f64 = (1..=20)
            .map(|k| {
                let odd = (2 * k - 1) as f64;
                (-(odd * odd) * PI * PI / (8.0 * lambda * lambda)).exp()
            })
            .sum();
        1.0 - (2.0 * PI).sqrt() / lambda * s
    } else {
        2.0 * (1..=100)
            .map(|k| {
                let kf = k as f64;
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                sign * (-2.0 * kf * kf * lambda * lambda).exp()
            })
            .sum::<f64>()
    };
    p.clamp(0.0, 1.0)
}

/// Asymptotic p-value for statistic `d` with sample sizes `n`, `m`.
pub fn asymptotic_p_value(d: f64, n: usize, m: usize) -> f64 {
    let ne = (n as f64 * m as f64) / (n + m) as f64;
    let root = ne.sqrt();
    kolmogorov_survival((root + 0.12 + 0.11 / root) * d)
}

/// Test on presorted samples; `rng` is used only for the permutation branch.
pub fn two_sample_ks_sorted(x: &[f64], y: &[f64], rng: &mut ChaCha8Rng) -> Result<KsResult> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::InsufficientSample("both samples must be nonempty".into()));
    }
    let statistic = ks_statistic_sorted(x, y);
    if x.len().min(y.len()) >= ASYMPTOTIC_MIN_SIZE {
        return Ok(KsResult { statistic, p_value: asymptotic_p_value(statistic, x.len(), y.len()), method: KsMethod::Asymptotic });
    }
    let mut pooled: Vec<f64> = x.iter().chain(y).copied().collect();
    let mut hits = 0usize;
    for _ in 0..PERMUTATIONS {
        pooled.shuffle(rng);
        let (a, b) = pooled.split_at(x.len());
        if ks_statistic(a, b) >= statistic - 1e-12 {
            hits += 1;
        }
    }
    let p_value = (1 + hits) as f64 / (1 + PERMUTATIONS) as f64;
    Ok(KsResult { statistic, p_value, method: KsMethod::Permutation })
}

pub fn two_sample_ks(x: &[f64], y: &[f64], rng: &mut ChaCha8Rng) -> Result<KsResult> {
    two_sample_ks_sorted(&sorted(x), &sorted(y), rng)
}
