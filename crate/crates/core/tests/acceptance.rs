//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::{bell_by_binomial, discrete_cumulants, exp_series_moments, fixture, joint_cumulants, random_joint_law, random_rational};
use cumulant_calculus::cli::{cmd_characterize, Mode, ReportBody, ReportFile};
use cumulant_calculus::cumulant::{cumulants_to_moments, moments_to_cumulants, CumulantSequence, MomentSequence};
use cumulant_calculus::estimation::{invariance_test, standard_normal_draws, CumulantDiagnostic, Family, SampleMatrix, SideGenerator};
use cumulant_calculus::scalar::{int, ratio};
use cumulant_calculus::symbolic::{
    expand_hk_single, quadratic_reduction_check, quadratic_reduction_check_exact, CharacterizationReport, Prop2Report, Side,
};
use cumulant_calculus::Scalar;
use num_traits::Zero;
use rand::Rng;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit_s: u64) -> Result<(), String> {
    ensure(elapsed < Duration::from_secs(limit_s), format!("took {:.2?}, limit {limit_s} s", elapsed))
}

fn round_trip() -> Check {
    let mut rng = common::rng(1);
    let inputs: Vec<Vec<Scalar>> = (0..1000).map(|_| (0..10).map(|_| random_rational(&mut rng, 40, 12)).collect()).collect();
    let start = Instant::now();
    for m in &inputs {
        let back = cumulants_to_moments(&moments_to_cumulants(&MomentSequence::new(m.clone())));
        ensure(back.raw() == &m[..], format!("round trip failed on {m:?}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, 5)?;
    Ok(format!("1000 sequences, K = 10, {elapsed:.2?}"))
}

fn distribution_tables() -> Check {
    let (mu, var) = (ratio(1, 2), int(3));
    let gaussian = CumulantSequence::gaussian(mu.clone(), var.clone(), 10);
    ensure(gaussian.get(1) == &mu && gaussian.get(2) == &var, "gaussian mean/variance")?;
    ensure((3..=10).all(|k| gaussian.get(k).is_zero()), "gaussian r_n != 0 for n >= 3")?;
    let m = cumulants_to_moments(&gaussian);
    ensure(m.raw() == &exp_series_moments(gaussian.values())[..], "gaussian moments disagree with oracle")?;
    let standard = cumulants_to_moments(&CumulantSequence::gaussian(int(0), int(1), 4));
    ensure(standard.get(4) == &int(3), "standard normal m_4 != 3")?;

    let lambda = ratio(7, 3);
    let poisson = CumulantSequence::poisson(lambda.clone(), 10);
    ensure(poisson.values().iter().all(|r| r == &lambda), "poisson r_n != lambda")?;
    let m = cumulants_to_moments(&poisson);
    ensure(m.raw() == &exp_series_moments(poisson.values())[..], "poisson moments disagree with oracle")?;
    let bell = bell_by_binomial(10);
    let touchard = cumulants_to_moments(&CumulantSequence::poisson(int(1), 10));
    ensure((1..=10).all(|n| touchard.get(n) == &int(bell[n] as i64)), "lambda = 1 moments are not Bell numbers")?;
    ensure(moments_to_cumulants(&m) == poisson, "poisson inversion")?;
    Ok("gaussian and poisson tables exact to order 10".into())
}

fn r3_formula() -> Check {
    let mut rng = common::rng(3);
    for _ in 0..100 {
        let m: Vec<Scalar> = (0..3).map(|_| random_rational(&mut rng, 30, 9)).collect();
        let r = moments_to_cumulants(&MomentSequence::new(m.clone()));
        let expected = m[2].clone() - int(3) * m[1].clone() * m[0].clone() + int(2) * m[0].clone() * m[0].clone() * m[0].clone();
        ensure(r.get(3) == &expected, format!("r_3 mismatch on {m:?}"))?;
    }
    Ok("100 random inputs".into())
}

fn multilinearity() -> Check {
    const POINTS: [(i64, i64); 9] = [(-3, 2), (-1, 1), (-1, 3), (1, 4), (1, 2), (1, 1), (4, 3), (2, 1), (5, 2)];
    let mut rng = common::rng(4);
    let start = Instant::now();
    let mut checks = 0;
    for case in 0..50 {
        let names: &[&str] = if case % 2 == 0 { &["S", "Y"] } else { &["S", "Y", "W"] };
        let law = random_joint_law(&mut rng, names.len(), 4);
        let side = Side::new(joint_cumulants(names, 6, &law), "S", "Y").map_err(|e| e.to_string())?;
        let y: Vec<(Scalar, Scalar)> = law.iter().map(|(p, pr)| (p[1].clone(), pr.clone())).collect();
        let ry = discrete_cumulants(&y, 6);
        for k in 1..=6 {
            let poly = expand_hk_single(k, &side).map_err(|e| e.to_string())?;
            for (n, d) in POINTS {
                let a = ratio(n, d);
                let w: Vec<(Scalar, Scalar)> =
                    law.iter().map(|(p, pr)| (a.clone() * p[0].clone() + p[1].clone(), pr.clone())).collect();
                let expected = discrete_cumulants(&w, k)[k - 1].clone() - ry[k - 1].clone();
                let got = poly.evaluate(&[a]).map_err(|e| e.to_string())?;
                ensure(got == expected, format!("scenario {case}, k = {k}, a = {n}/{d}"))?;
                checks += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, 30)?;
    Ok(format!("50 scenarios, {checks} evaluations, {elapsed:.2?}"))
}

fn report(name: &str, mode: Mode) -> Result<(i32, ReportBody), String> {
    let outcome = cmd_characterize(&fixture(name), None, mode).map_err(|e| format!("{name}: {e}"))?;
    let file = ReportFile::from_json(&outcome.document).map_err(|e| e.to_string())?;
    Ok((outcome.status.code(), file.report))
}

fn pair_report(name: &str) -> Result<(i32, CharacterizationReport), String> {
    match report(name, Mode::Pair)? {
        (code, ReportBody::Characterization(r)) => Ok((code, r)),
        _ => Err(format!("{name}: unexpected report kind")),
    }
}

fn prop2_report(name: &str) -> Result<Prop2Report, String> {
    match report(name, Mode::Prop2)? {
        (_, ReportBody::Prop2(r)) => Ok(r),
        _ => Err(format!("{name}: unexpected report kind")),
    }
}

fn forward_backward() -> Check {
    let (code, ok) = pair_report("gaussian.json")?;
    ensure(code == 0 && ok.is_characterized(), "gaussian fixture not characterized")?;
    let mut expected = vec!["E[S1]", "E[S2]", "cov(S1,Y)", "cov(S2,Z)"];
    let higher: Vec<String> = (3..=ok.order).flat_map(|k| [format!("r_{k}(S1)"), format!("r_{k}(S2)")]).collect();
    expected.extend(higher.iter().map(String::as_str));
    expected.push("Var[S1] - Var[S2]");
    for symbol in &expected {
        let c = ok.constraint(symbol).ok_or(format!("missing constraint {symbol}"))?;
        ensure(c.holds, format!("constraint {symbol} fails"))?;
    }
    ensure(ok.constraints.len() == expected.len(), format!("{} constraints, expected {}", ok.constraints.len(), expected.len()))?;

    for (name, order, monomial) in [("skewed.json", 3, "a^3"), ("correlated.json", 2, "a")] {
        let (code, r) = pair_report(name)?;
        let first = report(name, Mode::Pair)?.1;
        ensure(first == ReportBody::Characterization(r.clone()), format!("{name}: nondeterministic report"))?;
        let w = r.first_violation().ok_or(format!("{name}: no violation"))?;
        ensure(code == 2 && w.order == order && w.monomial == monomial, format!("{name}: witness {} at k = {}", w.monomial, w.order))?;
    }
    Ok(format!("{} constraints hold; witnesses a^3 (k = 3) and a (k = 2)", expected.len()))
}

fn both_statistics() -> Check {
    let xxy = prop2_report("prop2_xxy.json")?;
    ensure(xxy.first.is_characterized() && !xxy.second.is_characterized(), "r(X,X,Y) != 0 should fail only the second statistic")?;
    let xyy = prop2_report("prop2_xyy.json")?;
    ensure(!xyy.first.is_characterized() && xyy.second.is_characterized(), "r(X,Y,Y) != 0 should fail only the first statistic")?;
    ensure(prop2_report("prop2_xxy.json")? == xxy, "nondeterministic")?;
    Ok("r(X,X,Y) fails the second statistic only, r(X,Y,Y) the first only".into())
}

fn quadratic_identity() -> Check {
    let mut rng = common::rng(7);
    let coeffs: Vec<f64> = (0..5).map(|_| rng.random_range(-3.0..3.0)).collect();
    let columns: Vec<Vec<f64>> = (0..5).map(|_| (0..10_000).map(|_| rng.random_range(-5.0..5.0)).collect()).collect();
    let labels = (1..=5).map(|j| format!("x{j}")).collect();
    let samples = SampleMatrix::new(labels, columns).map_err(|e| e.to_string())?;
    let worst = quadratic_reduction_check(&coeffs, &samples).map_err(|e| e.to_string())?;
    ensure(worst < 1e-12, format!("float residual {worst:e}"))?;

    let exact_coeffs: Vec<Scalar> = (0..5).map(|_| random_rational(&mut rng, 20, 9)).collect();
    let rows: Vec<Vec<Scalar>> = (0..100).map(|_| (0..5).map(|_| random_rational(&mut rng, 20, 9)).collect()).collect();
    let exact = quadratic_reduction_check_exact(&exact_coeffs, &rows).map_err(|e| e.to_string())?;
    ensure(exact.is_zero(), format!("exact residual {exact}"))?;
    Ok(format!("max float residual {worst:.1e} over 10^4 rows; exact residual 0 over 100 rows"))
}

fn normal_side() -> SideGenerator {
    SideGenerator::new(Family::standard_normal(), Some(Family::standard_normal()))
}

fn monte_carlo() -> Check {
    let angles: Vec<f64> = [0.0f64, 22.5, 45.0, 67.5, 90.0].iter().map(|d| d.to_radians()).collect();
    let n = 100_000;
    let start = Instant::now();
    let (mut rejected, mut tests, mut in_band) = (0usize, 0usize, 0usize);
    for seed in 1000..1100 {
        let r = invariance_test(&normal_side(), &normal_side(), 1.0, &angles, n, seed, 0.05).map_err(|e| e.to_string())?;
        rejected += r.rejections;
        tests += r.pairs.len();
        in_band += usize::from(r.within_band);
    }
    let rate = rejected as f64 / tests as f64;
    let bound = 0.05 + 3.0 * (0.05f64 * 0.95 / tests as f64).sqrt();
    ensure(rate <= bound, format!("pilot rejection rate {rate:.4} above {bound:.4}"))?;

    let fixed = invariance_test(&normal_side(), &normal_side(), 1.0, &angles, n, 42, 0.05).map_err(|e| e.to_string())?;
    ensure(fixed.rejections <= fixed.h0_band, format!("seed 42: {} rejections", fixed.rejections))?;

    let exp = SideGenerator::new(Family::ExponentialCentered { rate: 1.0 }, None);
    let alt = invariance_test(&exp, &exp, 1.0, &angles, n, 42, 0.05).map_err(|e| e.to_string())?;
    ensure(alt.min_p_value() < 1e-3, format!("exponential min p = {}", alt.min_p_value()))?;
    let elapsed = start.elapsed();
    within(elapsed, 60)?;
    Ok(format!(
        "pilot rate {rate:.3} <= {bound:.3} ({in_band}/100 replicates within band); seed 42: {} of 10 rejected; exponential min p {:.1e}; {elapsed:.1?}",
        fixed.rejections,
        alt.min_p_value()
    ))
}

fn estimator_bands() -> Check {
    let n = 100_000;
    let (b3, b4) = (4.0 * (6.0 / n as f64).sqrt(), 4.0 * (24.0 / n as f64).sqrt());
    let inside = (0..100u64)
        .map(|seed| {
            let d = CumulantDiagnostic::from_column("x", &standard_normal_draws(seed, 9, n)).unwrap();
            d.skewness.abs() <= b3 && d.excess_kurtosis.abs() <= b4
        })
        .filter(|&ok| ok)
        .count();
    ensure(inside >= 95, format!("{inside}/100 replicates within bands"))?;
    Ok(format!("{inside}/100 replicates within ±{b3:.4} (r3) and ±{b4:.4} (r4)"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("exact moment/cumulant round trip", round_trip),
        ("gaussian and poisson tables", distribution_tables),
        ("third cumulant formula", r3_formula),
        ("single-side expansion oracle", multilinearity),
        ("one-statistic characterization", forward_backward),
        ("both statistics are needed", both_statistics),
        ("quadratic completion identity", quadratic_identity),
        ("monte-carlo separation", monte_carlo),
        ("empirical estimator bands", estimator_bands),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("[{}] PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("[{}] FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
