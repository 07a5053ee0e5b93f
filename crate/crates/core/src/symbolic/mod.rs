//! Symbolic normal-characterization checks.
//!
//! Cumulants of `aS₁ + Y + bS₂ + Z` are expanded as exact polynomials in
//! the formal coefficients. A law that depends on `(a, b)` only through
//! `a² + b²` has radial expansions at every order, and the radial check
//! either certifies that (with the implied constraints) or returns the
//! first offending monomial. All conclusions hold up to the checked order.

mod characterize;
mod poly;
mod prop2;
mod radial;
mod reduction;
mod scenario;
mod vector;

pub use characterize::{characterize, CharacterizationReport, Constraint, Expansion, Verdict, Violation};
pub use poly::{format_monomial, graded_cmp, CoeffPolynomial};
pub use prop2::{characterize_prop2, MixedFinding, Prop2Report, Prop2Spec};
pub use radial::{is_radial, is_radial_weighted, radial_expand, RadialDecision, Witness};
pub use reduction::{quadratic_reduction_check, quadratic_reduction_check_exact, reduction_residual};
pub use scenario::{expand_hk_single, expand_side, expand_statistic, RootScaled, ScenarioSpec, Side};
pub use vector::{
    characterize_vector, normalize_combination, NormalizedCombination, Run, ScanFinding,
    VariableSummary, VectorReport, VectorSpec,
};

/// Default cumulant order for symbolic checks.
pub const DEFAULT_ORDER: usize = 8;
