//! The two-sided check on `aS₁ + Y + bS₂ + Z`: a normal pair is
//! characterized with its constraint list, perturbed pairs get an exact
//! witness monomial.
//!
//! cargo run --example proposition_check

use cumulant_calculus::cumulant::{CumulantSequence, JointCumulantTable, JointMomentTable};
use cumulant_calculus::scalar::{int, ratio};
use cumulant_calculus::symbolic::{characterize, expand_statistic, ScenarioSpec, Side};
use cumulant_calculus::Scalar;

const K: usize = 6;

/// `(S, Y)` with `S` having the given cumulants and `Y` an independent coin.
fn side(s: &str, y: &str, s_cumulants: Vec<Scalar>) -> cumulant_calculus::Result<Side> {
    let mut r = s_cumulants;
    r.resize(K, int(0));
    let s_table = JointCumulantTable::from_sequence(s, &CumulantSequence::new(r))?;
    let coin = [(vec![int(0)], ratio(1, 2)), (vec![int(1)], ratio(1, 2))];
    let y_table = JointMomentTable::from_atoms(vec![y.to_string()], K, &coin)?.to_cumulants()?;
    Side::new(JointCumulantTable::independent(&[&s_table, &y_table])?, s, y)
}

fn main() -> cumulant_calculus::Result<()> {
    let normal = ScenarioSpec::new(side("S1", "Y", vec![int(0), int(1)])?, side("S2", "Z", vec![int(0), int(1)])?, K)?;
    for k in 1..=3 {
        println!("k={k}: {}", expand_statistic(&normal, k)?);
    }
    let report = characterize(&normal)?;
    println!("{}", report.summary());
    for c in &report.constraints {
        println!("  {} = {}", c.symbol, c.value);
    }

    let skewed = ScenarioSpec::new(side("S1", "Y", vec![int(0), int(1), int(1)])?, side("S2", "Z", vec![int(0), int(1)])?, K)?;
    println!("r3(S1) = 1: {}", characterize(&skewed)?.summary());

    let wide = ScenarioSpec::new(side("S1", "Y", vec![int(0), int(2)])?, side("S2", "Z", vec![int(0), int(1)])?, K)?;
    println!("Var S1 = 2, Var S2 = 1: {}", characterize(&wide)?.summary());

    let shifted = ScenarioSpec::new(side("S1", "Y", vec![int(1), int(1)])?, side("S2", "Z", vec![int(0), int(1)])?, K)?;
    println!("E S1 = 1: {}", characterize(&shifted)?.summary());
    Ok(())
}
