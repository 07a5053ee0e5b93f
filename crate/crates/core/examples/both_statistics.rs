//! Why both statistics `aX + Y + bZ + T` and `X + aY + Z + bT` are needed:
//! each one alone leaves some mixed cumulants of `(X, Y)` unconstrained.
//!
//! cargo run --example both_statistics

use std::collections::BTreeMap;

use cumulant_calculus::cumulant::{JointCumulantTable, MultiIndex, Table};
use cumulant_calculus::scalar::int;
use cumulant_calculus::symbolic::{characterize_prop2, Prop2Spec};
use cumulant_calculus::Scalar;

const K: usize = 6;

fn pair(labels: [&str; 2], extra: Option<[u8; 2]>) -> cumulant_calculus::Result<JointCumulantTable<Scalar>> {
    let mut given = BTreeMap::new();
    given.insert(MultiIndex::new(vec![2, 0]), int(1));
    given.insert(MultiIndex::new(vec![0, 2]), int(1));
    if let Some(c) = extra {
        given.insert(MultiIndex::new(c.to_vec()), int(1));
    }
    let labels = labels.iter().map(|s| s.to_string()).collect();
    Ok(JointCumulantTable::new(Table::from_fn(labels, K, |idx| given.get(idx).cloned().unwrap_or_default())?))
}

fn main() -> cumulant_calculus::Result<()> {
    for (name, extra) in [
        ("independent normals", None),
        ("r(X,X,Y) = 1", Some([2, 1])),
        ("r(X,Y,Y) = 1", Some([1, 2])),
        ("r(X,X,Y,Y) = 1", Some([2, 2])),
    ] {
        let spec = Prop2Spec::new(pair(["X", "Y"], extra)?, pair(["Z", "T"], extra)?, K)?;
        let report = characterize_prop2(&spec)?;
        println!("{name}: {:?}", report.verdict);
        println!("  first statistic:  {}", report.first.summary());
        println!("  second statistic: {}", report.second.summary());
        for m in report.mixed.iter().filter(|m| m.labels[0] == "X") {
            let by = if m.excluded_by.is_empty() { "neither statistic".to_string() } else { format!("statistic {:?}", m.excluded_by) };
            println!("  r({}^{}, {}^{}) = {} is excluded by {by}", m.labels[0], m.counts[0], m.labels[1], m.counts[1], m.value);
        }
    }
    Ok(())
}
