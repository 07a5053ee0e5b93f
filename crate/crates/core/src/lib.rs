//! Cumulant calculus for random vectors.
//!
//! * [`partitions`]: set partitions and Möbius weights.
//! * [`cumulant`]: exact moment ↔ cumulant conversion, joint tables,
//!   multilinear cumulants of linear combinations, independence scans.
//! * [`symbolic`]: cumulants of `aS₁ + Y + bS₂ + Z` as polynomials in the
//!   formal coefficients, and the radial (`a² + b²` only) decision that
//!   certifies or refutes normality up to a finite order.
//! * [`estimation`]: seeded generators, plug-in cumulant estimates and
//!   Kolmogorov–Smirnov invariance tests on sampled data.
//! * [`cli`]: file formats and the commands behind the `cumulant` binary.

pub mod cli;
pub mod cumulant;
pub mod error;
pub mod estimation;
pub mod partitions;
pub mod scalar;
pub mod symbolic;

pub use error::{Error, Result};
pub use scalar::{Field, Scalar};
