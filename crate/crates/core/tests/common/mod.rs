//! Oracles shared by the integration tests. None of them call the
//! conversion routines under test.
#![allow(dead_code)]

use std::collections::BTreeMap;

use cumulant_calculus::cumulant::{JointCumulantTable, JointMomentTable, MultiIndex, Table};
use cumulant_calculus::scalar::{int, ratio};
use cumulant_calculus::Scalar;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational<R: Rng>(rng: &mut R, span: i64, max_den: i64) -> Scalar {
    ratio(rng.random_range(-span..=span), rng.random_range(1..=max_den))
}

pub fn factorial(n: usize) -> Scalar {
    (1..=n as i64).fold(Scalar::one(), |acc, v| acc * int(v))
}

/// Cumulants from moments through the power series of `log(1 + u)`,
/// `u(t) = Σ_{i≥1} m_i tⁱ / i!`, truncated at `tᴷ`.
pub fn log_series_cumulants(m: &[Scalar]) -> Vec<Scalar> {
    let k = m.len();
    // u[i] = coefficient of t^i
    let mut u = vec![Scalar::zero(); k + 1];
    for i in 1..=k {
        u[i] = m[i - 1].clone() / factorial(i);
    }
    let mut log = vec![Scalar::zero(); k + 1];
    let mut power = u.clone();
    for j in 1..=k {
        let sign = if j % 2 == 1 { Scalar::one() } else { -Scalar::one() };
        for i in 0..=k {
            log[i] = log[i].clone() + sign.clone() * power[i].clone() / int(j as i64);
        }
        power = series_mul(&power, &u, k);
    }
    (1..=k).map(|i| log[i].clone() * factorial(i)).collect()
}

/// Moments from cumulants through the power series of `exp`.
pub fn exp_series_moments(r: &[Scalar]) -> Vec<Scalar> {
    let k = r.len();
    let mut c = vec![Scalar::zero(); k + 1];
    for i in 1..=k {
        c[i] = r[i - 1].clone() / factorial(i);
    }
    let mut exp = vec![Scalar::zero(); k + 1];
    exp[0] = Scalar::one();
    let mut power = vec![Scalar::zero(); k + 1];
    power[0] = Scalar::one();
    for j in 1..=k {
        power = series_mul(&power, &c, k);
        for i in 0..=k {
            exp[i] = exp[i].clone() + power[i].clone() / factorial(j);
        }
    }
    (1..=k).map(|i| exp[i].clone() * factorial(i)).collect()
}

fn series_mul(x: &[Scalar], y: &[Scalar], k: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); k + 1];
    for i in 0..=k {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..=k - i {
            out[i + j] = out[i + j].clone() + x[i].clone() * y[j].clone();
        }
    }
    out
}

/// Raw moments `E[Wⁱ]`, `i = 1..=k`, of a discrete law.
pub fn discrete_moments(atoms: &[(Scalar, Scalar)], k: usize) -> Vec<Scalar> {
    (1..=k)
        .map(|i| {
            atoms.iter().fold(Scalar::zero(), |acc, (x, p)| acc + p.clone() * num_traits::pow(x.clone(), i))
        })
        .collect()
}

/// Cumulants of a discrete law via the log-series oracle.
pub fn discrete_cumulants(atoms: &[(Scalar, Scalar)], k: usize) -> Vec<Scalar> {
    log_series_cumulants(&discrete_moments(atoms, k))
}

/// Random joint law on up to `max_atoms` points in `dim` dimensions.
pub fn random_joint_law<R: Rng>(rng: &mut R, dim: usize, max_atoms: usize) -> Vec<(Vec<Scalar>, Scalar)> {
    let n = rng.random_range(1..=max_atoms);
    let weights: Vec<i64> = (0..n).map(|_| rng.random_range(1..=6)).collect();
    let total: i64 = weights.iter().sum();
    weights
        .into_iter()
        .map(|w| ((0..dim).map(|_| ratio(rng.random_range(-4..=4), rng.random_range(1..=3))).collect(), ratio(w, total)))
        .collect()
}

pub fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

pub fn joint_cumulants(names: &[&str], order: usize, law: &[(Vec<Scalar>, Scalar)]) -> JointCumulantTable<Scalar> {
    JointMomentTable::from_atoms(labels(names), order, law).unwrap().to_cumulants().unwrap()
}

/// Complete cumulant table from sparse entries, zero elsewhere.
pub fn sparse_table(names: &[&str], order: usize, entries: &[(&[u8], Scalar)]) -> JointCumulantTable<Scalar> {
    let given: BTreeMap<MultiIndex, Scalar> =
        entries.iter().map(|(c, v)| (MultiIndex::new(c.to_vec()), v.clone())).collect();
    JointCumulantTable::new(
        Table::from_fn(labels(names), order, |idx| given.get(idx).cloned().unwrap_or_default()).unwrap(),
    )
}

/// Stirling numbers of the second kind `S(n, k)` for `n, k ≤ max`.
pub fn stirling2(max: usize) -> Vec<Vec<u64>> {
    let mut s = vec![vec![0u64; max + 1]; max + 1];
    s[0][0] = 1;
    for n in 1..=max {
        for k in 1..=n {
            s[n][k] = k as u64 * s[n - 1][k] + s[n - 1][k - 1];
        }
    }
    s
}

/// Bell numbers by `B(n+1) = Σ C(n, k) B(k)`.
pub fn bell_by_binomial(max: usize) -> Vec<u64> {
    let mut b = vec![1u64];
    for n in 0..max {
        let mut c = 1u64;
        let mut next = 0u64;
        for k in 0..=n {
            next += c * b[k];
            c = c * (n - k) as u64 / (k + 1) as u64;
        }
        b.push(next);
    }
    b
}

pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}
