//! Sampling, plug-in estimation and the Monte-Carlo invariance test.

mod empirical;
mod generate;
mod invariance;
mod ks;
mod rng;
mod samples;

pub use empirical::{empirical_joint_cumulants, k_statistics, CumulantDiagnostic, KStatistics, MAX_EMPIRICAL_ORDER};
pub use generate::{generate, standard_normal_draws, Family, GeneratorSpec, Sampler, SideGenerator};
pub use invariance::{
    h0_band, invariance_test, simulate_statistic, GridPoint, InvarianceTestReport, PairTest, StatisticSample, MIN_ANGLES,
    MIN_SAMPLE_SIZE,
};
pub use ks::{
    asymptotic_p_value, kolmogorov_survival, ks_statistic, ks_statistic_sorted, two_sample_ks, two_sample_ks_sorted, KsMethod,
    KsResult, ASYMPTOTIC_MIN_SIZE, PERMUTATIONS,
};
pub use rng::{substream, LANE_LEFT, LANE_PERMUTATION, LANE_RIGHT};
pub use samples::SampleMatrix;
