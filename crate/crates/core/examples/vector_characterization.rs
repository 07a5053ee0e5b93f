//! Several variables on each side: normalized combinations, pairwise
//! covariance runs and the joint-normality scan.
//!
//! cargo run --example vector_characterization

use std::collections::BTreeMap;

use cumulant_calculus::cumulant::{JointCumulantTable, MultiIndex, Table};
use cumulant_calculus::scalar::{int, ratio};
use cumulant_calculus::symbolic::{characterize_vector, normalize_combination, VectorSpec};
use cumulant_calculus::Scalar;

const K: usize = 6;

fn table(labels: &[&str], entries: &[(&[u8], Scalar)]) -> cumulant_calculus::Result<JointCumulantTable<Scalar>> {
    let given: BTreeMap<MultiIndex, Scalar> = entries.iter().map(|(c, v)| (MultiIndex::new(c.to_vec()), v.clone())).collect();
    let labels = labels.iter().map(|s| s.to_string()).collect();
    Ok(JointCumulantTable::new(Table::from_fn(labels, K, |idx| given.get(idx).cloned().unwrap_or_default())?))
}

fn main() -> cumulant_calculus::Result<()> {
    let right = table(&["X3", "Z"], &[(&[2, 0], int(1)), (&[0, 2], int(1))])?;
    let left = table(&["X1", "X2", "Y"], &[(&[2, 0, 0], int(1)), (&[0, 2, 0], int(1)), (&[0, 0, 2], int(1))])?;

    let s = normalize_combination(&[int(1), int(1), int(0)], &left, "S")?;
    println!("S = (X1 + X2)/sqrt(2): Var S = {}, r4(S) = {}", s.cumulant(2)?, s.cumulant(4)?);

    let report = characterize_vector(&VectorSpec::new(left, right.clone(), K)?)?;
    println!("independent normals: {:?}", report.verdict);
    for run in report.all_runs() {
        println!("  {:<40} {}", run.description, run.report.summary());
    }
    for c in &report.pair_constraints {
        println!("  {} = {}", c.symbol, c.value);
    }
    for line in &report.implied {
        println!("  implied: {line}");
    }

    let correlated = table(
        &["X1", "X2", "Y"],
        &[(&[2, 0, 0], int(1)), (&[0, 2, 0], int(1)), (&[1, 1, 0], ratio(1, 2)), (&[0, 0, 2], int(1))],
    )?;
    let report = characterize_vector(&VectorSpec::new(correlated, right, K)?)?;
    println!("cov(X1, X2) = 1/2: {:?}", report.verdict);
    for run in report.all_runs().filter(|r| !r.report.is_characterized()) {
        println!("  {:<40} {}", run.description, run.report.summary());
    }
    for f in &report.joint_normality {
        println!("  finding: {} = {}", f.symbol, f.value);
    }
    Ok(())
}
