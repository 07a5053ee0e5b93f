//! Joint cumulants of a discrete random vector, cumulants of linear
//! combinations, and the mixed-cumulant independence scan.
//!
//! cargo run --example joint_cumulants

use cumulant_calculus::cumulant::{cumulant_of_combination, independence_violations, JointMomentTable};
use cumulant_calculus::scalar::{int, ratio};

fn main() -> cumulant_calculus::Result<()> {
    let labels = vec!["X".to_string(), "Y".to_string()];
    // X and Y independent fair coins
    let independent = [
        (vec![int(0), int(0)], ratio(1, 4)),
        (vec![int(0), int(1)], ratio(1, 4)),
        (vec![int(1), int(0)], ratio(1, 4)),
        (vec![int(1), int(1)], ratio(1, 4)),
    ];
    // Y = X
    let copied = [(vec![int(0), int(0)], ratio(1, 2)), (vec![int(1), int(1)], ratio(1, 2))];

    for (name, atoms) in [("independent", &independent[..]), ("Y = X", &copied[..])] {
        let jc = JointMomentTable::from_atoms(labels.clone(), 4, atoms)?.to_cumulants()?;
        println!("{name}:");
        for (idx, v) in jc.iter() {
            println!("  r({idx}) = {v}");
        }
        let groups = vec![vec!["X".to_string()], vec!["Y".to_string()]];
        let mixed = independence_violations(&jc, &groups, 4)?;
        if mixed.is_empty() {
            println!("  all mixed cumulants vanish up to order 4");
        } else {
            let shown: Vec<String> = mixed.iter().map(|(i, v)| format!("r({i}) = {v}")).collect();
            println!("  nonzero mixed cumulants: {}", shown.join(", "));
        }
        // multilinearity: r_k(2X - Y)
        for k in 1..=4 {
            println!("  r_{k}(2X - Y) = {}", cumulant_of_combination(&[int(2), int(-1)], &jc, k)?);
        }
    }
    Ok(())
}
