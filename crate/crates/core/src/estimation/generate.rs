use rand::distr::weighted::WeightedIndex;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Normal, StandardNormal, Uniform};
use serde::{Deserialize, Serialize};

use super::rng::{substream, LANE_LEFT};
use crate::cumulant::{moments_to_cumulants, MomentSequence};
use crate::error::{Error, Result};

/// Parametric families used as fixtures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Normal { mean: f64, sd: f64 },
    Uniform { low: f64, high: f64 },
    /// `Exp(rate) − 1/rate`: mean zero, third cumulant `2 / rate³`.
    ExponentialCentered { rate: f64 },
    Laplace { location: f64, scale: f64 },
    /// `±1` with probability ½ each.
    Rademacher,
    Discrete { atoms: Vec<f64>, probabilities: Vec<f64> },
}

impl Family {
    pub fn standard_normal() -> Self {
        Family::Normal { mean: 0.0, sd: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match self {
            Family::Normal { mean, sd } if !(mean.is_finite() && sd.is_finite() && *sd > 0.0) => {
                bad(format!("normal needs finite mean and sd > 0, got ({mean}, {sd})"))
            }
            Family::Uniform { low, high } if !(low.is_finite() && high.is_finite() && low < high) => {
                bad(format!("uniform needs low < high, got ({low}, {high})"))
            }
            Family::ExponentialCentered { rate } if !(rate.is_finite() && *rate > 0.0) => {
                bad(format!("exponential rate must be > 0, got {rate}"))
            }
            Family::Laplace { location, scale }
                if !(location.is_finite() && scale.is_finite() && *scale > 0.0) =>
            {
                bad(format!("laplace needs scale > 0, got {scale}"))
            }
            Family::Discrete { atoms, probabilities } => {
                if atoms.is_empty() || atoms.len() != probabilities.len() {
                    return bad("discrete needs matching nonempty atoms and probabilities".into());
                }
                if atoms.iter().chain(probabilities).any(|v| !v.is_finite())
                    || probabilities.iter().any(|&p| p < 0.0)
                {
                    return bad("discrete atoms must be finite, probabilities nonnegative".into());
                }
                let total: f64 = probabilities.iter().sum();
                if (total - 1.0).abs() > 1e-12 {
                    return bad(format!("discrete probabilities sum to {total}, not 1"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn sampler(&self) -> Result<Sampler> {
        self.validate()?;
        let sampler = match self {
            Family::Normal { mean, sd } => Sampler::Normal(Normal::new(*mean, *sd).expect("validated")),
            Family::Uniform { low, high } => Sampler::Uniform(Uniform::new(*low, *high).expect("validated")),
            Family::ExponentialCentered { rate } => {
                Sampler::ExponentialCentered(Exp::new(*rate).expect("validated"), 1.0 / rate)
            }
            Family::Laplace { location, scale } => Sampler::Laplace(*location, *scale),
            Family::Rademacher => Sampler::Rademacher,
            Family::Discrete { atoms, probabilities } => Sampler::Discrete(
                atoms.clone(),
                WeightedIndex::new(probabilities).map_err(|e| Error::InvalidParameter(e.to_string()))?,
            ),
        };
        Ok(sampler)
    }

    /// Population cumulants `r_1..r_K`.
    pub fn population_cumulants(&self, order: usize) -> Result<Vec<f64>> {
        self.validate()?;
        let fact = |n: usize| (1..=n).map(|v| v as f64).product::<f64>();
        let from_moments = |m: Vec<f64>| moments_to_cumulants(&MomentSequence::new(m)).values().to_vec();
        let r = match self {
            Family::Normal { mean, sd } => (1..=order)
                .map(|k| match k {
                    1 => *mean,
                    2 => sd * sd,
                    _ => 0.0,
                })
                .collect(),
            Family::Uniform { low, high } => from_moments(
                (1..=order)
                    .map(|k| (high.powi(k as i32 + 1) - low.powi(k as i32 + 1)) / ((k as f64 + 1.0) * (high - low)))
                    .collect(),
            ),
            Family::ExponentialCentered { rate } => (1..=order)
                .map(|k| if k == 1 { 0.0 } else { fact(k - 1) / rate.powi(k as i32) })
                .collect(),
            Family::Laplace { location, scale } => (1..=order)
                .map(|k| match k {
                    1 => *location,
                    _ if k % 2 == 0 => 2.0 * fact(k - 1) * scale.powi(k as i32),
                    _ => 0.0,
                })
                .collect(),
            Family::Rademacher => from_moments((1..=order).map(|k| if k % 2 == 0 { 1.0 } else { 0.0 }).collect()),
            Family::Discrete { atoms, probabilities } => from_moments(
                (1..=order)
                    .map(|k| atoms.iter().zip(probabilities).map(|(x, p)| p * x.powi(k as i32)).sum())
                    .collect(),
            ),
        };
        Ok(r)
    }

    pub fn mean(&self) -> Result<f64> {
        Ok(self.population_cumulants(1)?[0])
    }

    pub fn variance(&self) -> Result<f64> {
        Ok(self.population_cumulants(2)?[1])
    }
}

/// A validated family ready to draw from.
#[derive(Debug, Clone)]
pub enum Sampler {
    Normal(Normal<f64>),
    Uniform(Uniform<f64>),
    ExponentialCentered(Exp<f64>, f64),
    Laplace(f64, f64),
    Rademacher,
    Discrete(Vec<f64>, WeightedIndex<f64>),
}

impl Sampler {
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            Sampler::Normal(d) => d.sample(rng),
            Sampler::Uniform(d) => d.sample(rng),
            Sampler::ExponentialCentered(d, mean) => d.sample(rng) - mean,
            Sampler::Laplace(loc, scale) => {
                let u: f64 = rng.random::<f64>() - 0.5;
                loc - scale * u.signum() * (1.0 - 2.0 * u.abs()).ln()
            }
            Sampler::Rademacher => {
                if rng.random::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
            Sampler::Discrete(atoms, index) => atoms[index.sample(rng)],
        }
    }
}

/// A family plus the seed of its stream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub family: Family,
    pub seed: u64,
}

/// `n` reproducible draws from `spec`.
pub fn generate(spec: &GeneratorSpec, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidInput("sample size must be at least 1".into()));
    }
    let sampler = spec.family.sampler()?;
    let mut rng = substream(spec.seed, 0, LANE_LEFT);
    Ok((0..n).map(|_| sampler.draw(&mut rng)).collect())
}

/// Generator for one side `(S, Y)` of the statistic. `Y` is drawn
/// independently of `S` and then shifted by `y_coupling · S`, so a nonzero
/// coupling makes `cov(S, Y) = y_coupling · Var S`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SideGenerator {
    pub s: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Family>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub y_coupling: f64,
}

fn is_zero(v: &f64) -> bool {
    *v == 0.0
}

impl SideGenerator {
    pub fn new(s: Family, y: Option<Family>) -> Self {
        Self { s, y, y_coupling: 0.0 }
    }

    pub(crate) fn samplers(&self) -> Result<(Sampler, Option<Sampler>)> {
        if !self.y_coupling.is_finite() {
            return Err(Error::InvalidParameter("y_coupling must be finite".into()));
        }
        Ok((self.s.sampler()?, self.y.as_ref().map(Family::sampler).transpose()?))
    }
}

pub(crate) struct SideSampler {
    s: Sampler,
    y: Option<Sampler>,
    coupling: f64,
}

impl SideSampler {
    pub(crate) fn new(side: &SideGenerator) -> Result<Self> {
        let (s, y) = side.samplers()?;
        Ok(Self { s, y, coupling: side.y_coupling })
    }

    pub(crate) fn draw(&self, rng: &mut ChaCha8Rng) -> (f64, f64) {
        let s = self.s.draw(rng);
        let y = self.y.as_ref().map_or(0.0, |y| y.draw(rng)) + self.coupling * s;
        (s, y)
    }
}

/// Default standard normal draw, used by tests and examples.
pub fn standard_normal_draws(seed: u64, task: u64, n: usize) -> Vec<f64> {
    let mut rng = substream(seed, task, LANE_LEFT);
    (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}
