//! Exact moment/cumulant algebra for random variables and random vectors.
//!
//! Conventions: `r_1` is the mean and `r_2` the **variance** (not the
//! standard deviation). Generating functions are never formed; every
//! identity is a finite recurrence or partition sum.

mod index;
mod joint;
mod univariate;

pub use index::{compositions, graded_indices, MultiIndex};
pub use joint::{
    cumulant_of_combination, independence_violations, joint_cumulants_to_joint_moments,
    joint_moments_to_joint_cumulants, moments_table_from_cumulants, univariate_via_partitions,
    JointCumulantTable, JointMomentTable, Table, MAX_CONVERSION_DIM,
};
pub use univariate::{cumulants_to_moments, moments_to_cumulants, CumulantSequence, MomentSequence};
