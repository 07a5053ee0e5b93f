//! The completion-of-squares identity
//! `Σ (aᵢxᵢ + xᵢ²) = Σ (xᵢ + aᵢ/2)² − ¼ Σ aᵢ²`, exactly and in floating point.
//!
//! cargo run --example quadratic_identity

use cumulant_calculus::estimation::{generate, Family, GeneratorSpec, SampleMatrix};
use cumulant_calculus::scalar::{int, ratio};
use cumulant_calculus::symbolic::{quadratic_reduction_check, quadratic_reduction_check_exact};

fn main() -> cumulant_calculus::Result<()> {
    let coeffs = [1.5, -2.0, 0.25, 3.0, 0.0];
    let columns = (0..5)
        .map(|j| generate(&GeneratorSpec { family: Family::Uniform { low: -10.0, high: 10.0 }, seed: j }, 10_000))
        .collect::<Result<Vec<_>, _>>()?;
    let labels = (1..=5).map(|j| format!("x{j}")).collect();
    let samples = SampleMatrix::new(labels, columns)?;
    println!("f64, 10^4 rows: max residual {:e}", quadratic_reduction_check(&coeffs, &samples)?);

    let exact_coeffs = [ratio(3, 2), int(-2), ratio(1, 4), int(3), int(0)];
    let rows: Vec<Vec<_>> = (0..100).map(|i| (0..5).map(|j| ratio(i * 7 - j * 13, 1 + (i + j) % 9)).collect()).collect();
    println!("exact, 100 rows: max residual {}", quadratic_reduction_check_exact(&exact_coeffs, &rows)?);
    Ok(())
}
