//! Univariate moment ↔ cumulant conversion with exact rationals.
//!
//! cargo run --example moment_cumulant_conversion

use cumulant_calculus::cumulant::{cumulants_to_moments, moments_to_cumulants, CumulantSequence, MomentSequence};
use cumulant_calculus::partitions::{bell_number, enumerate_partitions};
use cumulant_calculus::scalar::{format_rational, int, ratio};
use cumulant_calculus::{Field, Scalar};

fn show(values: &[Scalar]) -> String {
    values.iter().map(format_rational).collect::<Vec<_>>().join(", ")
}

fn main() -> cumulant_calculus::Result<()> {
    // standard normal: m = (0, 1, 0, 3, 0, 15)
    let normal = MomentSequence::new([0, 1, 0, 3, 0, 15].map(int).to_vec());
    println!("N(0,1)       moments {}  ->  cumulants {}", show(normal.raw()), show(moments_to_cumulants(&normal).values()));

    // Poisson(λ) has every cumulant equal to λ; at λ = 1 the moments are Bell numbers
    let poisson = CumulantSequence::poisson(int(1), 6);
    let m = cumulants_to_moments(&poisson);
    let bell: Vec<u64> = (1..=6).map(bell_number).collect();
    println!("Poisson(1)   cumulants {}  ->  moments {}  (Bell {:?})", show(poisson.values()), show(m.raw()), bell);

    let poisson = CumulantSequence::poisson(ratio(1, 2), 4);
    println!("Poisson(1/2) moments {}", show(cumulants_to_moments(&poisson).raw()));

    // a fair die, K = 4
    let die: Vec<Scalar> = (1..=4).map(|k| (1..=6).map(|x| Field::powi(&int(x), k)).sum::<Scalar>() / int(6)).collect();
    let r = moments_to_cumulants(&MomentSequence::new(die.clone()));
    println!("fair die     moments {}  ->  cumulants {}", show(&die), show(r.values()));

    println!("the 5 partitions of a 3-set:");
    for p in enumerate_partitions(3)? {
        println!("  {p}");
    }
    Ok(())
}
